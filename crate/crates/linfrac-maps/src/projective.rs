//! Projective 2x2 matrices over GF(q^2) and the semilinear automorphisms
//! (A, j): T -> A phi_j(T) A^{-1} of the linear fractional groups.

use crate::field::{Fel, FieldCtx};
use crate::{Error, Result};

/// A 2x2 matrix over GF(q^2), row major. Determinant is not enforced here;
/// [`ProjElement`] construction rejects singular input.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: Fel,
    pub b: Fel,
    pub c: Fel,
    pub d: Fel,
}

impl Mat2 {
    pub fn new(a: Fel, b: Fel, c: Fel, d: Fel) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    /// s * [[a,b],[c,d]] entry by entry.
    pub fn scaled(f: &FieldCtx, s: Fel, a: Fel, b: Fel, c: Fel, d: Fel) -> Mat2 {
        Mat2::new(f.mul(s, a), f.mul(s, b), f.mul(s, c), f.mul(s, d))
    }

    pub fn identity(f: &FieldCtx) -> Mat2 {
        Mat2::new(f.one(), Fel::ZERO, Fel::ZERO, f.one())
    }

    pub fn det(&self, f: &FieldCtx) -> Fel {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn trace(&self, f: &FieldCtx) -> Fel {
        f.add(self.a, self.d)
    }

    pub fn mul(&self, f: &FieldCtx, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            f.add(f.mul(self.a, rhs.a), f.mul(self.b, rhs.c)),
            f.add(f.mul(self.a, rhs.b), f.mul(self.b, rhs.d)),
            f.add(f.mul(self.c, rhs.a), f.mul(self.d, rhs.c)),
            f.add(f.mul(self.c, rhs.b), f.mul(self.d, rhs.d)),
        )
    }

    pub fn scale(&self, f: &FieldCtx, s: Fel) -> Mat2 {
        Mat2::new(f.mul(self.a, s), f.mul(self.b, s), f.mul(self.c, s), f.mul(self.d, s))
    }

    /// Inverse; requires det != 0.
    pub fn inv(&self, f: &FieldCtx) -> Result<Mat2> {
        let det = self.det(f);
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let di = f.inv(det);
        Ok(Mat2::new(
            f.mul(self.d, di),
            f.mul(f.neg(self.b), di),
            f.mul(f.neg(self.c), di),
            f.mul(self.a, di),
        ))
    }

    /// Entrywise j-fold Frobenius.
    pub fn frobenius(&self, f: &FieldCtx, j: u32) -> Mat2 {
        Mat2::new(
            f.frobenius(self.a, j),
            f.frobenius(self.b, j),
            f.frobenius(self.c, j),
            f.frobenius(self.d, j),
        )
    }

    /// Nonzero scalar multiple of the identity.
    pub fn is_scalar(&self, _f: &FieldCtx) -> bool {
        self.b.is_zero() && self.c.is_zero() && !self.a.is_zero() && self.a == self.d
    }

    /// tr^2 / det, the scaling-invariant trace parameter.
    pub fn theta(&self, f: &FieldCtx) -> Fel {
        let t = self.trace(f);
        f.div(f.mul(t, t), self.det(f))
    }

    pub fn entries(&self) -> [Fel; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// An invertible 2x2 matrix up to nonzero scalars, kept in canonical form:
/// the first nonzero entry in the order a, b, c, d equals 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ProjElement(Mat2);

impl ProjElement {
    pub fn new(f: &FieldCtx, m: Mat2) -> Result<ProjElement> {
        if m.det(f).is_zero() {
            return Err(Error::Singular);
        }
        Ok(ProjElement(canonicalize(f, m)))
    }

    pub fn identity(f: &FieldCtx) -> ProjElement {
        ProjElement(Mat2::identity(f))
    }

    pub fn rep(&self) -> &Mat2 {
        &self.0
    }

    pub fn is_identity(&self, f: &FieldCtx) -> bool {
        *self == ProjElement::identity(f)
    }

    pub fn mul(&self, f: &FieldCtx, rhs: &ProjElement) -> ProjElement {
        ProjElement(canonicalize(f, self.0.mul(f, &rhs.0)))
    }

    pub fn inv(&self, f: &FieldCtx) -> ProjElement {
        // Adjugate; scaling by 1/det is absorbed by canonicalization.
        let m = self.0;
        let adj = Mat2::new(m.d, f.neg(m.b), f.neg(m.c), m.a);
        ProjElement(canonicalize(f, adj))
    }

    pub fn pow(&self, f: &FieldCtx, mut n: u32) -> ProjElement {
        let mut result = ProjElement::identity(f);
        let mut acc = *self;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(f, &acc);
            }
            acc = acc.mul(f, &acc);
            n >>= 1;
        }
        result
    }

    /// Least n >= 1 with self^n projectively trivial; errors past the cap.
    pub fn order(&self, f: &FieldCtx, cap: u32) -> Result<u32> {
        let id = ProjElement::identity(f);
        let mut acc = *self;
        for n in 1..=cap {
            if acc == id {
                return Ok(n);
            }
            acc = acc.mul(f, self);
        }
        Err(Error::OrderCap { cap })
    }

    /// Entrywise Frobenius descends to projective classes.
    pub fn frobenius(&self, f: &FieldCtx, j: u32) -> ProjElement {
        ProjElement(canonicalize(f, self.0.frobenius(f, j)))
    }
}

fn canonicalize(f: &FieldCtx, m: Mat2) -> Mat2 {
    let lead = [m.a, m.b, m.c, m.d]
        .into_iter()
        .find(|x| !x.is_zero())
        .expect("projective representative must be nonzero");
    m.scale(f, f.inv(lead))
}

/// Where a projective element sits relative to the standard PSL(2,q).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PslMembership {
    /// Representative scalable into GF(q) with square determinant.
    Psl,
    /// Representative over GF(q), determinant a non-square.
    PglOnly,
    /// No scalar multiple has all entries in GF(q).
    NotOverGfq,
}

/// Classify a projective element against the standard copy of PSL(2,q).
///
/// The canonical representative starts with entry 1, so it is GF(q)-defined
/// exactly when some scalar multiple is.
pub fn in_psl2q(f: &FieldCtx, x: &ProjElement) -> PslMembership {
    let m = x.rep();
    if !m.entries().iter().all(|&v| f.in_gfq(v)) {
        return PslMembership::NotOverGfq;
    }
    if f.chi_q(m.det(f)) == 1 {
        PslMembership::Psl
    } else {
        PslMembership::PglOnly
    }
}

/// A semilinear automorphism (A, j) acting by T -> A phi_j(T) A^{-1}.
///
/// Only j mod e is observable on matrices defined over GF(q), so the twist is
/// stored reduced; composition adds twists mod e.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SemilinearAuto {
    a: ProjElement,
    j: u32,
}

impl SemilinearAuto {
    pub fn new(f: &FieldCtx, a: ProjElement, j: u32) -> SemilinearAuto {
        SemilinearAuto { a, j: j % f.e() }
    }

    pub fn matrix(&self) -> &ProjElement {
        &self.a
    }

    pub fn twist(&self) -> u32 {
        self.j
    }

    /// r = p^j, the field exponent the twist applies.
    pub fn r(&self, f: &FieldCtx) -> u64 {
        (f.p() as u64).pow(self.j)
    }

    pub fn apply(&self, f: &FieldCtx, t: &ProjElement) -> ProjElement {
        let twisted = t.frobenius(f, self.j);
        self.a.mul(f, &twisted).mul(f, &self.a.inv(f))
    }

    /// self after g: (B,j)(A,i) = (B phi_j(A), j + i).
    pub fn compose(&self, f: &FieldCtx, g: &SemilinearAuto) -> SemilinearAuto {
        let m = self.a.mul(f, &g.a.frobenius(f, self.j));
        SemilinearAuto::new(f, m, self.j + g.j)
    }

    pub fn is_identity(&self, f: &FieldCtx) -> bool {
        self.j == 0 && self.a.is_identity(f)
    }

    /// Involution test: j = 0 with A^2 scalar and A itself not scalar, or
    /// e = 2j with A phi_j(A) scalar.
    pub fn is_involution(&self, f: &FieldCtx) -> bool {
        let m = self.a.rep();
        if self.j == 0 {
            let sq = m.mul(f, m);
            sq.is_scalar(f) && !self.a.is_identity(f)
        } else if 2 * self.j == f.e() {
            let tw = m.mul(f, &m.frobenius(f, self.j));
            tw.is_scalar(f)
        } else {
            false
        }
    }
}

/// The admissible twist exponents for involutions: 0, plus e/2 when e is even.
pub fn involution_twists(f: &FieldCtx) -> Vec<u32> {
    let mut v = vec![0];
    if f.e() % 2 == 0 {
        v.push(f.e() / 2);
    }
    v
}

/// The four entrywise involution equations for (A, j), with r = p^j:
/// a^{r+1} = d^{r+1}, b c^r = c b^r, a b^r + b d^r = 0, c a^r + d c^r = 0.
///
/// Valid only for j = 0 or 2j = e; other twists are rejected.
pub fn check_invoabcd(f: &FieldCtx, m: &Mat2, j: u32) -> Result<bool> {
    if !(j == 0 || 2 * j == f.e()) {
        return Err(Error::BadTwist { j, e: f.e() });
    }
    let r = (f.p() as u64).pow(j);
    let fr = |x: Fel| f.frobenius(x, j);
    let [a, b, c, d] = m.entries();
    let eq1 = f.pow(a, r + 1) == f.pow(d, r + 1);
    let eq2 = f.mul(b, fr(c)) == f.mul(c, fr(b));
    let eq3 = f.add(f.mul(a, fr(b)), f.mul(b, fr(d))).is_zero();
    let eq4 = f.add(f.mul(c, fr(a)), f.mul(d, fr(c))).is_zero();
    Ok(eq1 && eq2 && eq3 && eq4)
}

/// All canonical projective elements with entries in GF(q): the standard
/// PGL(2,q), in a deterministic order.
pub fn pgl2q_elements(f: &FieldCtx) -> Vec<ProjElement> {
    let mut gfq = vec![Fel::ZERO];
    for i in 0..f.q2() - 1 {
        let x = f.from_log(i);
        if f.in_gfq(x) {
            gfq.push(x);
        }
    }
    gfq.sort();
    let mut out = Vec::with_capacity((f.q() as usize).pow(3));
    // Canonical forms: [1,b,c,d] or [0,1,c,d]; a = b = 0 forces det = 0.
    for &b in &gfq {
        for &c in &gfq {
            for &d in &gfq {
                let m = Mat2::new(f.one(), b, c, d);
                if !m.det(f).is_zero() {
                    out.push(ProjElement(m));
                }
                let m = Mat2::new(Fel::ZERO, f.one(), c, d);
                if b.is_zero() && !m.det(f).is_zero() {
                    out.push(ProjElement(m));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(q: u32) -> FieldCtx {
        FieldCtx::for_q(q).unwrap()
    }

    fn random_fel(f: &FieldCtx, rng: &mut ChaCha8Rng) -> Fel {
        let v = rng.random_range(0..f.q2());
        if v == 0 {
            Fel::ZERO
        } else {
            f.from_log(v - 1)
        }
    }

    fn random_gfq_fel(f: &FieldCtx, rng: &mut ChaCha8Rng) -> Fel {
        let v = rng.random_range(0..f.q());
        if v == 0 {
            Fel::ZERO
        } else {
            f.from_log((v - 1) * (f.q() + 1))
        }
    }

    fn random_invertible_over_gfq(f: &FieldCtx, rng: &mut ChaCha8Rng) -> Mat2 {
        loop {
            let m = Mat2::new(
                random_gfq_fel(f, rng),
                random_gfq_fel(f, rng),
                random_gfq_fel(f, rng),
                random_gfq_fel(f, rng),
            );
            if !m.det(f).is_zero() {
                return m;
            }
        }
    }

    #[test]
    fn canonical_form_and_equality() {
        let f = ctx(7);
        let m = Mat2::new(f.from_int(3), f.from_int(5), f.from_int(1), f.from_int(2));
        let x = ProjElement::new(&f, m).unwrap();
        let scaled = m.scale(&f, f.from_int(4));
        let y = ProjElement::new(&f, scaled).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.rep().a, f.one());
        let sing = Mat2::new(f.one(), f.one(), f.one(), f.one());
        assert!(ProjElement::new(&f, sing).is_err());
    }

    #[test]
    fn identity_and_inverse_laws() {
        let f = ctx(9);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let id = ProjElement::identity(&f);
        for _ in 0..200 {
            let m = random_invertible_over_gfq(&f, &mut rng);
            let x = ProjElement::new(&f, m).unwrap();
            assert_eq!(x.mul(&f, &id), x);
            assert_eq!(id.mul(&f, &x), x);
            assert_eq!(x.mul(&f, &x.inv(&f)), id);
        }
    }

    #[test]
    fn psl25_is_a_group_of_order_60() {
        let f = ctx(5);
        let psl: Vec<ProjElement> = pgl2q_elements(&f)
            .into_iter()
            .filter(|x| in_psl2q(&f, x) == PslMembership::Psl)
            .collect();
        assert_eq!(psl.len(), 60);
        use std::collections::HashSet;
        let set: HashSet<_> = psl.iter().copied().collect();
        for x in &psl {
            for y in &psl {
                assert!(set.contains(&x.mul(&f, y)));
            }
        }
        // Associativity spot-check on the full cube is cheap at this size.
        for x in psl.iter().step_by(7) {
            for y in psl.iter().step_by(5) {
                for z in psl.iter().step_by(3) {
                    assert_eq!(
                        x.mul(&f, y).mul(&f, z),
                        x.mul(&f, &y.mul(&f, z))
                    );
                }
            }
        }
    }

    #[test]
    fn group_orders_match_psl_pgl() {
        for q in [5u32, 7, 9] {
            let f = ctx(q);
            let all = pgl2q_elements(&f);
            let qe = q as usize;
            assert_eq!(all.len(), qe * qe * qe - qe);
            let psl = all.iter().filter(|x| in_psl2q(&f, x) == PslMembership::Psl).count();
            assert_eq!(psl, qe * (qe * qe - 1) / 2, "q = {q}");
        }
    }

    #[test]
    fn order_of_diagonal_root_pair() {
        let f = ctx(7);
        // xi of order 6 = 2k with k = 3.
        let xi = f.primitive_2k_roots(3).unwrap()[0];
        let m = Mat2::new(xi, Fel::ZERO, Fel::ZERO, f.inv(xi));
        let x = ProjElement::new(&f, m).unwrap();
        assert_eq!(x.order(&f, 10).unwrap(), 3);
    }

    #[test]
    fn trace_zero_elements_are_involutions() {
        let f = ctx(13);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = 0;
        while seen < 100 {
            let b = random_fel(&f, &mut rng);
            let c = random_fel(&f, &mut rng);
            let a = random_fel(&f, &mut rng);
            let m = Mat2::new(a, b, c, f.neg(a));
            if m.det(&f).is_zero() {
                continue;
            }
            let x = ProjElement::new(&f, m).unwrap();
            if x.is_identity(&f) {
                continue;
            }
            assert_eq!(x.order(&f, 5).unwrap(), 2);
            seen += 1;
        }
    }

    #[test]
    fn order_cap_errors() {
        let f = ctx(5);
        let g = f.generator();
        let m = Mat2::new(g, Fel::ZERO, Fel::ZERO, f.one());
        let x = ProjElement::new(&f, m).unwrap();
        // Projective order of diag(g, 1) is the order of g, 24 > cap 6.
        assert!(matches!(x.order(&f, 6), Err(Error::OrderCap { cap: 6 })));
    }

    #[test]
    fn theta_transforms_by_frobenius_under_apply() {
        let f = ctx(9);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let a = loop {
                let m = Mat2::new(
                    random_fel(&f, &mut rng),
                    random_fel(&f, &mut rng),
                    random_fel(&f, &mut rng),
                    random_fel(&f, &mut rng),
                );
                if !m.det(&f).is_zero() {
                    break m;
                }
            };
            let t = random_invertible_over_gfq(&f, &mut rng);
            let j = rng.random_range(0..2);
            let auto = SemilinearAuto::new(&f, ProjElement::new(&f, a).unwrap(), j);
            let tp = ProjElement::new(&f, t).unwrap();
            let image = auto.apply(&f, &tp);
            assert_eq!(image.rep().theta(&f), f.frobenius(t.theta(&f), j));
        }
    }

    #[test]
    fn compose_matches_definition() {
        let f = ctx(9);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let a = ProjElement::new(&f, random_invertible_over_gfq(&f, &mut rng)).unwrap();
            let b = ProjElement::new(&f, random_invertible_over_gfq(&f, &mut rng)).unwrap();
            let fa = SemilinearAuto::new(&f, a, rng.random_range(0..2));
            let fb = SemilinearAuto::new(&f, b, rng.random_range(0..2));
            let comp = fa.compose(&f, &fb);
            let t = ProjElement::new(&f, random_invertible_over_gfq(&f, &mut rng)).unwrap();
            assert_eq!(comp.apply(&f, &t), fa.apply(&f, &fb.apply(&f, &t)));
        }
        let a = ProjElement::new(&f, random_invertible_over_gfq(&f, &mut rng)).unwrap();
        let fa = SemilinearAuto::new(&f, a, 1);
        let id = SemilinearAuto::new(&f, ProjElement::identity(&f), 0);
        assert_eq!(fa.compose(&f, &id), fa);
        assert_eq!(id.compose(&f, &fa), fa);
        // Untwisted composition is plain matrix multiplication.
        let b = ProjElement::new(&f, random_invertible_over_gfq(&f, &mut rng)).unwrap();
        let ga = SemilinearAuto::new(&f, a, 0);
        let gb = SemilinearAuto::new(&f, b, 0);
        assert_eq!(*ga.compose(&f, &gb).matrix(), a.mul(&f, &b));
    }

    #[test]
    fn involution_examples() {
        let f = ctx(7);
        let diag = Mat2::new(f.one(), Fel::ZERO, Fel::ZERO, f.neg(f.one()));
        let fd = SemilinearAuto::new(&f, ProjElement::new(&f, diag).unwrap(), 0);
        assert!(fd.is_involution(&f));
        assert!(check_invoabcd(&f, &diag, 0).unwrap());

        let anti = Mat2::new(Fel::ZERO, f.one(), f.from_int(2), Fel::ZERO);
        let fa = SemilinearAuto::new(&f, ProjElement::new(&f, anti).unwrap(), 0);
        assert!(fa.is_involution(&f));
        assert!(check_invoabcd(&f, &anti, 0).unwrap());

        let id = SemilinearAuto::new(&f, ProjElement::identity(&f), 0);
        assert!(!id.is_involution(&f));
        assert!(id.is_identity(&f));

        assert!(check_invoabcd(&f, &diag, 1).is_err());
    }

    #[test]
    fn involution_means_apply_twice_is_identity() {
        let f = ctx(9);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut involutions = 0;
        for _ in 0..2000 {
            let m = random_invertible_over_gfq(&f, &mut rng);
            let j = if rng.random_range(0..2) == 0 { 0 } else { 1 };
            let auto = SemilinearAuto::new(&f, ProjElement::new(&f, m).unwrap(), j);
            if !auto.is_involution(&f) {
                continue;
            }
            involutions += 1;
            for _ in 0..5 {
                let t = ProjElement::new(&f, random_invertible_over_gfq(&f, &mut rng)).unwrap();
                assert_eq!(auto.apply(&f, &auto.apply(&f, &t)), t);
            }
        }
        assert!(involutions > 0);
    }

    #[test]
    fn entrywise_equations_agree_with_involution_test() {
        let f = ctx(9);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..2000 {
            let m = random_invertible_over_gfq(&f, &mut rng);
            let j = if rng.random_range(0..2) == 0 { 0 } else { 1 };
            let auto = SemilinearAuto::new(&f, ProjElement::new(&f, m).unwrap(), j);
            let eqs = check_invoabcd(&f, &m, j).unwrap();
            assert_eq!(
                auto.is_involution(&f),
                eqs && !auto.is_identity(&f),
                "m = {m:?}, j = {j}"
            );
        }
    }

    #[test]
    fn psl_membership_cases() {
        let f = ctx(7);
        assert_eq!(in_psl2q(&f, &ProjElement::identity(&f)), PslMembership::Psl);
        // 3 is a non-square mod 7.
        let nu = f.from_int(3);
        assert_eq!(f.chi_q(nu), -1);
        let m = Mat2::new(nu, Fel::ZERO, Fel::ZERO, f.one());
        assert_eq!(in_psl2q(&f, &ProjElement::new(&f, m).unwrap()), PslMembership::PglOnly);
        let m = Mat2::new(f.generator(), Fel::ZERO, Fel::ZERO, f.one());
        assert_eq!(
            in_psl2q(&f, &ProjElement::new(&f, m).unwrap()),
            PslMembership::NotOverGfq
        );
    }

    #[test]
    fn twist_reduction_mod_e() {
        let f = ctx(9);
        let a = ProjElement::identity(&f);
        let t0 = SemilinearAuto::new(&f, a, 0);
        let t2 = SemilinearAuto::new(&f, a, 2);
        assert_eq!(t0, t2);
        let t1 = SemilinearAuto::new(&f, a, 3);
        assert_eq!(t1.twist(), 1);
    }
}
