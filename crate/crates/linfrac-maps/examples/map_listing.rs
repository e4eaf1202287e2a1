//! Every map class of one field, with the generating data and symmetry
//! flags, plus explicit witnesses where the symmetries exist.
//!
//!     cargo run --example map_listing [Q]

use linfrac_maps::enumerate::census;
use linfrac_maps::field::FieldCtx;
use linfrac_maps::report::{render_listing, Format, MapRecord};
use linfrac_maps::symmetry::analyze;
use linfrac_maps::triples::construct;

fn main() {
    let q: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("Q must be an integer"))
        .unwrap_or(11);
    let f = FieldCtx::for_q(q).unwrap();
    let c = census(&f, true).unwrap();
    let mut records = Vec::new();
    for class in &c.classes {
        let t = construct(&f, &class.sig).unwrap();
        let cls = analyze(&f, &t).unwrap();
        records.push(MapRecord::from_class(q, class).with_witnesses(&cls));
    }
    print!("{}", render_listing(&records, Format::Json));
    eprintln!(
        "{} classes; skipped: {} with degenerate D, {} collapsed, {} subfield, {} half-field",
        c.classes.len(),
        c.skipped.degenerate_d,
        c.skipped.collapsed,
        c.skipped.subfield,
        c.skipped.half_field
    );
}
