//! Order-5 rotation pairs with distinct traces do not generate PSL(2,q):
//! they close into a copy of the icosahedral group A5 instead. The census
//! refuses those signatures; this walks the evidence.
//!
//!     cargo run --example icosahedral_collapse [Q]

use linfrac_maps::field::FieldCtx;
use linfrac_maps::oracle::closure_order;
use linfrac_maps::triples::{a5_collapse, rotation_pair_kl, triple_kl};

fn main() {
    let q: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("Q must be an integer"))
        .unwrap_or(11);
    let f = FieldCtx::for_q(q).unwrap();
    let omegas = f.omegas_for_order(5).expect("q must admit order 5");
    let psl = q * (q * q - 1) / 2;
    println!("q = {q}, |PSL(2,q)| = {psl}");
    for &(xi_a, w_a) in &omegas {
        for &(xi_b, w_b) in &omegas {
            let collapse = a5_collapse(&f, xi_a, xi_b).unwrap();
            let (r, s) = rotation_pair_kl(&f, xi_a, xi_b).unwrap();
            let n = closure_order(&f, &[r, s], psl + 1).unwrap();
            println!(
                "traces ({w_a}, {w_b}): <R, S> has order {n}{}",
                if collapse { "  [refused by the census]" } else { "" }
            );
            assert_eq!(collapse, n == 60);
            match triple_kl(&f, xi_a, xi_b) {
                Ok(_) => assert!(!collapse),
                Err(e) => println!("  constructor says: {e}"),
            }
        }
    }
}
