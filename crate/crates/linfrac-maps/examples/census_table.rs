//! Full census: one row per field, counting map classes by symmetry bucket.
//!
//!     cargo run --example census_table [QMAX]

use linfrac_maps::enumerate::{census, census_fields};
use linfrac_maps::field::FieldCtx;
use linfrac_maps::report::{render_census, Format};

fn main() {
    let qmax: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("QMAX must be an integer"))
        .unwrap_or(81);
    let mut rows = Vec::new();
    for q in census_fields(qmax) {
        let f = FieldCtx::for_q(q).unwrap();
        let c = census(&f, false).unwrap();
        rows.push(c.row);
    }
    print!("{}", render_census(&rows, Format::Markdown));
}
