//! Symmetry detection two ways on one field: closed-form trace conditions
//! next to the witness matrices found by linear algebra, including the
//! field-twisted witnesses that only appear over even-degree extensions.
//!
//!     cargo run --example trace_conditions [Q]

use linfrac_maps::enumerate::census;
use linfrac_maps::field::FieldCtx;
use linfrac_maps::projective::SemilinearAuto;
use linfrac_maps::symmetry::{analyze, mr_condition, sd_condition, sp_condition};
use linfrac_maps::triples::construct;

fn show(w: &Option<SemilinearAuto>) -> String {
    match w {
        None => "-".into(),
        Some(w) => {
            let [a, b, c, d] = w.matrix().rep().entries();
            format!("[[{a}, {b}], [{c}, {d}]] twist {}", w.twist())
        }
    }
}

fn main() {
    let q: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("Q must be an integer"))
        .unwrap_or(25);
    let f = FieldCtx::for_q(q).unwrap();
    let c = census(&f, false).unwrap();
    println!("q = {q}: {} classes", c.classes.len());
    for class in &c.classes {
        let sig = &class.sig;
        let sd = sd_condition(&f, sig);
        let sp = sp_condition(&f, sig);
        let mr = mr_condition(&f, sig);
        if !(sd || sp || mr) {
            continue;
        }
        let t = construct(&f, sig).unwrap();
        let cls = analyze(&f, &t).unwrap();
        println!("{}", sig.describe());
        println!("  conditions: sd = {sd}, sp = {sp}, mr = {mr}");
        println!("  duality witness: {}", show(&cls.duality));
        println!("  petrie witness:  {}", show(&cls.petrie));
        if mr {
            println!("  half-turn identity holds: {}", cls.mr_seen);
        }
        assert_eq!(sd, cls.duality.is_some());
        assert_eq!(sp, cls.petrie.is_some());
        assert_eq!(mr, cls.mr_seen);
    }
}
