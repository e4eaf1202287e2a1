//! Generating triples (X, Y, Z) for the four map families on PSL/PGL(2,q),
//! built from explicit matrices over GF(q^2), with full validation of the
//! presentation orders and the type-(5,5) icosahedral-collapse detector.
//!
//! Family naming: the two letters give the (vertex order, face order) sides,
//! with `p` the characteristic and `k`/`l` orders coprime to it.

use crate::field::{Fel, FieldCtx};
use crate::projective::{Mat2, ProjElement};
use crate::{gcd, is_hyperbolic, Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Family {
    Pp,
    Kp,
    Pl,
    Kl,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Pp => "pp",
            Family::Kp => "kp",
            Family::Pl => "pl",
            Family::Kl => "kl",
        }
    }
}

/// The trace data identifying one map candidate of type (k, l).
///
/// Root and trace entries are present exactly on the sides coprime to p;
/// the characteristic sides carry no free parameter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MapSignature {
    pub family: Family,
    pub k: u32,
    pub l: u32,
    pub xi_k: Option<Fel>,
    pub xi_l: Option<Fel>,
    pub omega_k: Option<Fel>,
    pub omega_l: Option<Fel>,
}

impl MapSignature {
    /// D = omega_k^2 + omega_l^2 - 4, defined for the (k,l) family only.
    pub fn big_d(&self, f: &FieldCtx) -> Option<Fel> {
        match (self.omega_k, self.omega_l) {
            (Some(wk), Some(wl)) => {
                let s = f.add(f.mul(wk, wk), f.mul(wl, wl));
                Some(f.sub(s, f.from_int(4)))
            }
            _ => None,
        }
    }

    /// Short display form like "(6,7)[g^12, g^40]".
    pub fn describe(&self) -> String {
        let mut traces = Vec::new();
        if let Some(w) = self.omega_k {
            traces.push(format!("{w}"));
        }
        if let Some(w) = self.omega_l {
            traces.push(format!("{w}"));
        }
        if traces.is_empty() {
            format!("({},{})", self.k, self.l)
        } else {
            format!("({},{})[{}]", self.k, self.l, traces.join(", "))
        }
    }
}

/// A validated generating triple with its rotations R = YZ, S = ZX.
///
/// `x_m`, `y_m`, `z_m` are the determinant-1 representative matrices the
/// witness search relies on; the projective views are derived from them.
#[derive(Clone, Debug)]
pub struct GenTriple {
    pub sig: MapSignature,
    pub x_m: Mat2,
    pub y_m: Mat2,
    pub z_m: Mat2,
    pub x: ProjElement,
    pub y: ProjElement,
    pub z: ProjElement,
    pub r: ProjElement,
    pub s: ProjElement,
    pub alpha: Fel,
    pub eta: Option<Fel>,
    pub beta: Option<Fel>,
    pub big_d: Option<Fel>,
}

fn finish(
    f: &FieldCtx,
    sig: MapSignature,
    x_m: Mat2,
    y_m: Mat2,
    z_m: Mat2,
    eta: Option<Fel>,
    beta: Option<Fel>,
    big_d: Option<Fel>,
) -> Result<GenTriple> {
    debug_assert_eq!(x_m.det(f), f.one());
    debug_assert_eq!(y_m.det(f), f.one());
    debug_assert_eq!(z_m.det(f), f.one());
    let x = ProjElement::new(f, x_m)?;
    let y = ProjElement::new(f, y_m)?;
    let z = ProjElement::new(f, z_m)?;
    let r = y.mul(f, &z);
    let s = z.mul(f, &x);
    let t = GenTriple {
        sig,
        x_m,
        y_m,
        z_m,
        x,
        y,
        z,
        r,
        s,
        alpha: f.alpha(),
        eta,
        beta,
        big_d,
    };
    validate_triple(f, &t, sig.k, sig.l)?;
    Ok(t)
}

/// The unique type-(p,p) triple.
pub fn triple_pp(f: &FieldCtx) -> Result<GenTriple> {
    let p = f.p();
    if !is_hyperbolic(p, p) {
        return Err(Error::NonHyperbolic { k: p, l: p });
    }
    let a = f.alpha();
    let na = f.neg(a);
    let two = f.from_int(2);
    // X = -alpha [[1,0],[2,-1]], Y = -alpha [[1,-1],[0,-1]], Z = alpha [[1,0],[0,-1]]
    let x_m = Mat2::new(na, Fel::ZERO, f.mul(na, two), a);
    let y_m = Mat2::new(na, a, Fel::ZERO, a);
    let z_m = Mat2::new(a, Fel::ZERO, Fel::ZERO, na);
    let sig = MapSignature {
        family: Family::Pp,
        k: p,
        l: p,
        xi_k: None,
        xi_l: None,
        omega_k: None,
        omega_l: None,
    };
    finish(f, sig, x_m, y_m, z_m, None, None, None)
}

fn order_side(f: &FieldCtx, xi: Fel, side: &'static str) -> Result<(u32, Fel)> {
    let n = f.order_of(xi);
    if n < 6 || n % 2 != 0 {
        return Err(Error::InvalidOrder { k: n, why: "root must have even order at least 6" });
    }
    let k = n / 2;
    if gcd(k as u64, f.p() as u64) != 1 {
        return Err(Error::InvalidOrder { k, why: "order shares a factor with p" });
    }
    let omega = f.add(xi, f.inv(xi));
    if !f.in_gfq(omega) {
        return Err(Error::OmegaOutsideField);
    }
    let _ = side;
    Ok((k, omega))
}

/// Type (k, p): vertex rotations of order k from a primitive 2k-th root.
pub fn triple_kp(f: &FieldCtx, xi_k: Fel) -> Result<GenTriple> {
    let (k, omega) = order_side(f, xi_k, "k")?;
    let p = f.p();
    if !is_hyperbolic(k, p) {
        return Err(Error::NonHyperbolic { k, l: p });
    }
    let a = f.alpha();
    let eta = f.inv(f.sub(xi_k, f.inv(xi_k)));
    let ea = f.mul(eta, a);
    let two = f.from_int(2);
    // X = eta alpha [[-w, -2 xi],[2 xi^{-1}, w]]
    let x_m = Mat2::scaled(
        f,
        ea,
        f.neg(omega),
        f.neg(f.mul(two, xi_k)),
        f.mul(two, f.inv(xi_k)),
        omega,
    );
    // Y = -alpha [[0, xi],[xi^{-1}, 0]]
    let y_m = Mat2::scaled(f, f.neg(a), Fel::ZERO, xi_k, f.inv(xi_k), Fel::ZERO);
    // Z = alpha [[0,1],[1,0]]
    let z_m = Mat2::scaled(f, a, Fel::ZERO, f.one(), f.one(), Fel::ZERO);
    let sig = MapSignature {
        family: Family::Kp,
        k,
        l: p,
        xi_k: Some(xi_k),
        xi_l: None,
        omega_k: Some(omega),
        omega_l: None,
    };
    let t = finish(f, sig, x_m, y_m, z_m, Some(eta), None, None)?;
    // R must be the diagonal rotation diag(xi, xi^{-1}).
    let diag = ProjElement::new(f, Mat2::new(xi_k, Fel::ZERO, Fel::ZERO, f.inv(xi_k)))?;
    if t.r != diag {
        return Err(Error::TripleInvalid("R is not diag(xi, xi^-1)".into()));
    }
    Ok(t)
}

/// Type (p, l): face rotations of order l from a primitive 2l-th root.
pub fn triple_pl(f: &FieldCtx, xi_l: Fel) -> Result<GenTriple> {
    let (l, omega) = order_side(f, xi_l, "l")?;
    let p = f.p();
    if !is_hyperbolic(p, l) {
        return Err(Error::NonHyperbolic { k: p, l });
    }
    if omega.is_zero() {
        return Err(Error::InvalidOrder { k: l, why: "omega = 0 leaves X undefined" });
    }
    let a = f.alpha();
    // X = alpha [[0, w^{-1}],[w, 0]]
    let x_m = Mat2::scaled(f, a, Fel::ZERO, f.inv(omega), omega, Fel::ZERO);
    // Y = -alpha [[1,0],[0,-1]]
    let y_m = Mat2::scaled(f, f.neg(a), f.one(), Fel::ZERO, Fel::ZERO, f.neg(f.one()));
    // Z = alpha [[1,1],[0,-1]]
    let z_m = Mat2::scaled(f, a, f.one(), f.one(), Fel::ZERO, f.neg(f.one()));
    let sig = MapSignature {
        family: Family::Pl,
        k: p,
        l,
        xi_k: None,
        xi_l: Some(xi_l),
        omega_k: None,
        omega_l: Some(omega),
    };
    finish(f, sig, x_m, y_m, z_m, None, None, None)
}

/// Type (k, l), both sides coprime to p.
///
/// Refuses D = 0 (the construction degenerates) and the (5,5) signatures
/// that collapse onto the icosahedral subgroup.
pub fn triple_kl(f: &FieldCtx, xi_k: Fel, xi_l: Fel) -> Result<GenTriple> {
    let (k, wk) = order_side(f, xi_k, "k")?;
    let (l, wl) = order_side(f, xi_l, "l")?;
    if !is_hyperbolic(k, l) {
        return Err(Error::NonHyperbolic { k, l });
    }
    if k == 5 && l == 5 && a5_collapse(f, xi_k, xi_l)? {
        return Err(Error::IcosahedralCollapse);
    }
    let big_d = f.sub(f.add(f.mul(wk, wk), f.mul(wl, wl)), f.from_int(4));
    if big_d.is_zero() {
        return Err(Error::DegenerateD);
    }
    let eta = f.inv(f.sub(xi_k, f.inv(xi_k)));
    // beta^2 = -1/D; the projective triple does not depend on the root choice.
    let beta = f
        .sqrt(f.neg(f.inv(big_d)))
        .expect("-1/D lies in GF(q), its index in GF(q^2) is even");
    let eb = f.mul(eta, beta);
    // X = eta beta [[D, D w_l xi_k],[-w_l xi_k^{-1}, -D]]
    let x_m = Mat2::scaled(
        f,
        eb,
        big_d,
        f.mul(big_d, f.mul(wl, xi_k)),
        f.neg(f.mul(wl, f.inv(xi_k))),
        f.neg(big_d),
    );
    // Y = beta [[0, xi_k D],[xi_k^{-1}, 0]]
    let y_m = Mat2::scaled(f, beta, Fel::ZERO, f.mul(xi_k, big_d), f.inv(xi_k), Fel::ZERO);
    // Z = beta [[0, D],[1, 0]]
    let z_m = Mat2::scaled(f, beta, Fel::ZERO, big_d, f.one(), Fel::ZERO);
    let sig = MapSignature {
        family: Family::Kl,
        k,
        l,
        xi_k: Some(xi_k),
        xi_l: Some(xi_l),
        omega_k: Some(wk),
        omega_l: Some(wl),
    };
    let t = finish(f, sig, x_m, y_m, z_m, Some(eta), Some(beta), Some(big_d))?;
    let (r_expect, s_expect) = rotation_pair_kl(f, xi_k, xi_l)?;
    if t.r != r_expect {
        return Err(Error::TripleInvalid("R is not diag(xi_k, xi_k^-1)".into()));
    }
    if t.s != s_expect {
        return Err(Error::TripleInvalid("S does not match the face rotation form".into()));
    }
    Ok(t)
}

/// Construct the triple a signature describes.
pub fn construct(f: &FieldCtx, sig: &MapSignature) -> Result<GenTriple> {
    match sig.family {
        Family::Pp => triple_pp(f),
        Family::Kp => triple_kp(f, sig.xi_k.expect("kp signature carries xi_k")),
        Family::Pl => triple_pl(f, sig.xi_l.expect("pl signature carries xi_l")),
        Family::Kl => triple_kl(
            f,
            sig.xi_k.expect("kl signature carries xi_k"),
            sig.xi_l.expect("kl signature carries xi_l"),
        ),
    }
}

/// The rotations (R, S) of the (k,l) family directly, without the D != 0 and
/// collapse refusals. Used to inspect degenerate rotation groups.
pub fn rotation_pair_kl(f: &FieldCtx, xi_k: Fel, xi_l: Fel) -> Result<(ProjElement, ProjElement)> {
    let (_, wl) = order_side(f, xi_l, "l")?;
    let (_, wk) = order_side(f, xi_k, "k")?;
    let big_d = f.sub(f.add(f.mul(wk, wk), f.mul(wl, wl)), f.from_int(4));
    let r = ProjElement::new(f, Mat2::new(xi_k, Fel::ZERO, Fel::ZERO, f.inv(xi_k)))?;
    // S = eta [[-w_l xi_k^{-1}, -D],[1, w_l xi_k]]; eta drops projectively.
    let s = ProjElement::new(
        f,
        Mat2::new(
            f.neg(f.mul(wl, f.inv(xi_k))),
            f.neg(big_d),
            f.one(),
            f.mul(wl, xi_k),
        ),
    )?;
    Ok((r, s))
}

/// Whether a type-(5,5) root pair collapses onto the icosahedral subgroup:
/// exactly when the two trace parameters differ.
pub fn a5_collapse(f: &FieldCtx, xi_k: Fel, xi_l: Fel) -> Result<bool> {
    let (k, wk) = order_side(f, xi_k, "k")?;
    let (l, wl) = order_side(f, xi_l, "l")?;
    if k != 5 || l != 5 {
        return Err(Error::InvalidOrder { k, why: "collapse test applies to type (5,5) only" });
    }
    Ok(wk != wl)
}

/// Check the presentation facts of a triple: X, Y, Z and XY are projective
/// involutions, YZ has order k, ZX has order l, and the stored rotations
/// match. Returns the first failed relation.
pub fn validate_triple(f: &FieldCtx, t: &GenTriple, k: u32, l: u32) -> Result<()> {
    let cap = f.q() + 1;
    let fail = |what: &str| Err(Error::TripleInvalid(what.to_string()));
    if t.x.order(f, cap)? != 2 {
        return fail("order(X) != 2");
    }
    if t.y.order(f, cap)? != 2 {
        return fail("order(Y) != 2");
    }
    if t.z.order(f, cap)? != 2 {
        return fail("order(Z) != 2");
    }
    if t.x.mul(f, &t.y).order(f, cap)? != 2 {
        return fail("order(XY) != 2");
    }
    let yz = t.y.mul(f, &t.z);
    if yz.order(f, cap)? != k {
        return fail("order(YZ) != k");
    }
    let zx = t.z.mul(f, &t.x);
    if zx.order(f, cap)? != l {
        return fail("order(ZX) != l");
    }
    if t.r != yz {
        return fail("R != YZ");
    }
    if t.s != zx {
        return fail("S != ZX");
    }
    Ok(())
}
