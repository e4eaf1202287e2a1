//! Recount one field by brute force: enumerate involution triples inside
//! PGL(2,q), classify their orbits from the definitions, and diff the
//! result against the trace-based census.
//!
//!     cargo run --release --example oracle_check [Q]

use linfrac_maps::field::FieldCtx;
use linfrac_maps::oracle::{diff_against_enumerate, oracle_census};
use linfrac_maps::report::{render_diff, Format};

fn main() {
    let q: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("Q must be an integer"))
        .unwrap_or(13);
    let f = FieldCtx::for_q(q).unwrap();
    let o = oracle_census(&f, 25).unwrap();
    println!("orbits by type at q = {q}:");
    for ((k, l), n) in &o.kl {
        println!("  ({k},{l}): {n}");
    }
    println!("by bucket:");
    for (bucket, n) in &o.buckets {
        println!("  {}: {n}", bucket.as_str());
    }
    let diff = diff_against_enumerate(&f, 25).unwrap();
    print!("{}", render_diff(&diff, Format::Markdown));
    assert!(diff.ok, "oracle and census disagree");
}
