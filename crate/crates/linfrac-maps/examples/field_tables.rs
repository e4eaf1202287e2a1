//! The discrete-log field tower behind everything else: GF(p) in GF(q) in
//! GF(q^2), the fixed fourth root alpha, and the rotation traces available
//! at each admissible order.
//!
//!     cargo run --example field_tables [Q]

use linfrac_maps::enumerate::admissible_orders;
use linfrac_maps::field::FieldCtx;

fn main() {
    let q: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("Q must be an integer"))
        .unwrap_or(9);
    let f = FieldCtx::for_q(q).unwrap();
    println!(
        "q = {} = {}^{}, modeled inside GF({})",
        f.q(),
        f.p(),
        f.e(),
        f.q2()
    );
    println!("generator g has reduction code {}", f.generator_code());
    println!(
        "alpha = {} with alpha^2 = {}, chi(-1) = {}",
        f.alpha(),
        f.mul(f.alpha(), f.alpha()),
        f.chi_q(f.neg(f.one()))
    );
    for k in admissible_orders(&f) {
        match f.omegas_for_order(k) {
            Err(_) => println!("order {k}: the characteristic side, no trace choices"),
            Ok(pairs) => {
                let shown: Vec<String> = pairs
                    .iter()
                    .map(|(xi, w)| format!("xi = {xi} -> w = {w}"))
                    .collect();
                println!("order {k}: {}", shown.join(", "));
            }
        }
    }
}
