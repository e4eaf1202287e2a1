//! Regular maps on the linear fractional groups PSL(2,q) and PGL(2,q).
//!
//! The library builds generating triples of involutions (X, Y, Z) for the four
//! map families on these groups from explicit 2x2 matrices over GF(q^2),
//! decides self-duality, self-Petrie-duality and Moebius regularity both by
//! closed-form trace conditions and by direct search for the witnessing
//! semilinear automorphism, and enumerates the full census of such maps per
//! field size. A brute-force group-theoretic oracle provides an independent
//! cross-check at small q.
//!
//! Modules, bottom up:
//! - [`field`]: GF(q) and GF(q^2) arithmetic on discrete-log tables.
//! - [`projective`]: projective 2x2 matrices and semilinear automorphisms.
//! - [`triples`]: the four generating-triple families and their validation.
//! - [`symmetry`]: the three external symmetries, conditions and witnesses.
//! - [`enumerate`]: per-q census of map classes.
//! - [`oracle`]: explicit-group brute force for cross-validation.
//! - [`report`]: JSON/CSV/markdown emitters for census rows and listings.

pub mod enumerate;
pub mod field;
pub mod oracle;
pub mod projective;
pub mod report;
pub mod symmetry;
pub mod triples;

/// Unified error type across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("{0} is not a power of an odd prime")]
    NotOddPrimePower(u32),
    #[error("field tables for q^2 = {0} exceed the size limit")]
    TableTooBig(u64),
    #[error("order {k} is invalid here: {why}")]
    InvalidOrder { k: u32, why: &'static str },
    #[error("singular matrix")]
    Singular,
    #[error("projective order exceeds cap {cap}")]
    OrderCap { cap: u32 },
    #[error("omega lies outside GF(q)")]
    OmegaOutsideField,
    #[error("degenerate type-(k,l) pair: D = 0")]
    DegenerateD,
    #[error("type-(5,5) pair generates only the icosahedral subgroup")]
    IcosahedralCollapse,
    #[error("type ({k},{l}) is not hyperbolic")]
    NonHyperbolic { k: u32, l: u32 },
    #[error("triple validation failed: {0}")]
    TripleInvalid(String),
    #[error("twist exponent {j} is not usable for extension degree {e}")]
    BadTwist { j: u32, e: u32 },
    #[error("condition and witness search disagree: {0}")]
    ConditionWitnessMismatch(String),
    #[error("census bucket violation: {0}")]
    BucketViolation(String),
    #[error("oracle supports q <= {cap}, got q = {q}")]
    OracleCap { q: u32, cap: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Greatest common divisor on u64, used for order and subfield arithmetic.
pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Strict hyperbolicity: 1/k + 1/l < 1/2.
pub fn is_hyperbolic(k: u32, l: u32) -> bool {
    2 * (k as u64 + l as u64) < k as u64 * l as u64
}

/// Euler's totient, for root-of-unity counting.
pub(crate) fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_boundary() {
        assert!(!is_hyperbolic(4, 4));
        assert!(!is_hyperbolic(3, 6));
        assert!(!is_hyperbolic(6, 3));
        assert!(is_hyperbolic(3, 7));
        assert!(is_hyperbolic(6, 6));
        assert!(is_hyperbolic(5, 5));
        assert!(!is_hyperbolic(3, 3));
        assert!(is_hyperbolic(4, 5));
    }

    #[test]
    fn phi_small() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(10), 4);
        assert_eq!(euler_phi(14), 6);
        assert_eq!(euler_phi(24), 8);
        assert_eq!(euler_phi(26), 12);
    }

    #[test]
    fn gcd_small() {
        assert_eq!(gcd(12, 8), 4);
        assert_eq!(gcd(7, 0), 7);
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(13, 26), 13);
    }
}
