//! Arithmetic in GF(q) and GF(q^2) for odd prime powers q = p^e.
//!
//! Everything runs over GF(q^2), represented by discrete-log tables against a
//! fixed primitive element g. The subfield GF(q) is the set of elements whose
//! log index is divisible by q+1 (plus zero), so subfield membership, square
//! roots, Frobenius maps and root-of-unity searches are all index arithmetic.

use crate::{euler_phi, gcd, Error, Result};

/// Largest permitted table size (number of GF(q^2) elements).
const TABLE_LIMIT: u64 = 1 << 20;

/// An element of GF(q^2): the discrete-log index of a nonzero element, or zero.
///
/// Values are only meaningful relative to the [`FieldCtx`] that produced them.
/// Equality and hashing are canonical.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fel(u32);

const ZERO_REP: u32 = u32::MAX;

impl Fel {
    pub const ZERO: Fel = Fel(ZERO_REP);

    pub fn is_zero(self) -> bool {
        self.0 == ZERO_REP
    }

    /// Discrete-log index against the context generator; `None` for zero.
    pub fn log(self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }

    fn idx(self) -> u32 {
        debug_assert!(!self.is_zero());
        self.0
    }
}

impl std::fmt::Debug for Fel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(i) => write!(f, "g^{i}"),
        }
    }
}

impl std::fmt::Display for Fel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Size parameters of the field tower GF(p) <= GF(q) <= GF(q^2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldParams {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub q2: u32,
}

/// Arithmetic context for GF(q^2) with its GF(q) subfield.
///
/// Immutable after construction; all operations are pure and take `&self`.
pub struct FieldCtx {
    params: FieldParams,
    /// exp[i] = polynomial code of g^i, for 0 <= i < q^2 - 1.
    exp: Vec<u32>,
    /// log_tbl[code] = i with exp[i] = code; log_tbl[0] unused.
    log_tbl: Vec<u32>,
    /// Monic irreducible modulus of degree 2e, low coefficients first,
    /// leading 1 included.
    modulus: Vec<u32>,
    alpha: Fel,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Split q into (p, e) with p prime and q = p^e.
pub fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let mut m = q;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    if m == 1 {
        Some((p, e))
    } else {
        None
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense little-endian polynomials over GF(p), used only during construction.
mod poly {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul_mod(u: &[u32], v: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if u.is_empty() || v.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; u.len() + v.len() - 1];
        for (i, &a) in u.iter().enumerate() {
            for (j, &b) in v.iter().enumerate() {
                prod[i + j] += a as u64 * b as u64;
            }
        }
        let mut prod: Vec<u32> = prod.iter().map(|&x| (x % p as u64) as u32).collect();
        rem(&mut prod, m, p);
        prod
    }

    /// Reduce v modulo the monic polynomial m, in place.
    pub fn rem(v: &mut Vec<u32>, m: &[u32], p: u32) {
        let d = m.len() - 1;
        while v.len() > d {
            let lead = *v.last().unwrap();
            let shift = v.len() - 1 - d;
            if lead != 0 {
                for (i, &mc) in m.iter().enumerate() {
                    let pos = shift + i;
                    let sub = (lead as u64 * mc as u64) % p as u64;
                    let cur = v[pos] as u64;
                    v[pos] = ((cur + p as u64 * p as u64 - sub) % p as u64) as u32;
                }
            }
            v.pop();
        }
        trim(v);
    }

    pub fn pow_mod(base: &[u32], mut n: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut acc = base.to_vec();
        rem(&mut acc, m, p);
        while n > 0 {
            if n & 1 == 1 {
                result = mul_mod(&result, &acc, m, p);
            }
            acc = mul_mod(&acc, &acc, m, p);
            n >>= 1;
        }
        result
    }

    pub fn sub(u: &[u32], v: &[u32], p: u32) -> Vec<u32> {
        let n = u.len().max(v.len());
        let mut out = vec![0u32; n];
        for i in 0..n {
            let a = u.get(i).copied().unwrap_or(0);
            let b = v.get(i).copied().unwrap_or(0);
            out[i] = (a + p - b) % p;
        }
        trim(&mut out);
        out
    }

    pub fn gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = poly_rem_full(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn poly_rem_full(u: &[u32], v: &[u32], p: u32) -> Vec<u32> {
        // v need not be monic here; scale by the inverse of its lead.
        let mut r = u.to_vec();
        trim(&mut r);
        let dl = v.len() - 1;
        let lead_inv = mod_inv(*v.last().unwrap(), p);
        while r.len() > dl {
            let coef = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - dl;
            for (i, &vc) in v.iter().enumerate() {
                let sub = (coef as u64 * vc as u64) % p as u64;
                let cur = r[shift + i] as u64;
                r[shift + i] = ((cur + p as u64 * p as u64 - sub) % p as u64) as u32;
            }
            r.pop();
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    fn mod_inv(a: u32, p: u32) -> u32 {
        // p prime; Fermat.
        let mut result = 1u64;
        let mut acc = a as u64 % p as u64;
        let mut n = p - 2;
        while n > 0 {
            if n & 1 == 1 {
                result = result * acc % p as u64;
            }
            acc = acc * acc % p as u64;
            n >>= 1;
        }
        result as u32
    }
}

/// Rabin irreducibility test for a monic polynomial of degree d over GF(p).
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = (f.len() - 1) as u32;
    let x = vec![0u32, 1];
    let pd = (p as u64).pow(d);
    let xq = poly::pow_mod(&x, pd, f, p);
    if xq != x {
        return false;
    }
    for t in prime_divisors(d as u64) {
        let sub_deg = d as u64 / t;
        let pe = (p as u64).pow(sub_deg as u32);
        let xe = poly::pow_mod(&x, pe, f, p);
        let diff = poly::sub(&xe, &x, p);
        if diff.is_empty() {
            return false;
        }
        let g = poly::gcd(f.to_vec(), diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl FieldCtx {
    /// Build the arithmetic context for GF(p^e) inside GF(p^{2e}).
    ///
    /// The modulus is the monic irreducible of degree 2e whose non-leading
    /// coefficients, read as base-p digits with the constant term least
    /// significant, form the smallest integer; the generator is the element
    /// with the smallest polynomial code among those of full order. Both
    /// choices are deterministic, so indices are reproducible across runs.
    pub fn new(p: u32, e: u32) -> Result<FieldCtx> {
        if p < 3 || !is_prime(p) || p % 2 == 0 {
            return Err(Error::NotOddPrime(p));
        }
        if e == 0 {
            return Err(Error::NotOddPrimePower(0));
        }
        let d = 2 * e;
        let q2_big = (p as u64).checked_pow(d).ok_or(Error::TableTooBig(u64::MAX))?;
        if q2_big > TABLE_LIMIT {
            return Err(Error::TableTooBig(q2_big));
        }
        let q2 = q2_big as u32;
        let q = (p as u64).pow(e) as u32;
        let params = FieldParams { p, e, q, q2 };

        let modulus = find_modulus(p, d);
        let (exp, log_tbl) = build_tables(&modulus, params);

        let alpha = Fel((q2 - 1) / 4);
        Ok(FieldCtx { params, exp, log_tbl, modulus, alpha })
    }

    /// As [`FieldCtx::new`], from q directly.
    pub fn for_q(q: u32) -> Result<FieldCtx> {
        let (p, e) = factor_prime_power(q).ok_or(Error::NotOddPrimePower(q))?;
        if p == 2 {
            return Err(Error::NotOddPrime(2));
        }
        FieldCtx::new(p, e)
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }
    pub fn p(&self) -> u32 {
        self.params.p
    }
    pub fn e(&self) -> u32 {
        self.params.e
    }
    pub fn q(&self) -> u32 {
        self.params.q
    }
    pub fn q2(&self) -> u32 {
        self.params.q2
    }
    /// Order of the multiplicative group of GF(q^2).
    fn n(&self) -> u32 {
        self.params.q2 - 1
    }

    /// The modulus polynomial, low coefficients first, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Polynomial code of the generator g.
    pub fn generator_code(&self) -> u32 {
        self.exp[1]
    }

    pub fn zero(&self) -> Fel {
        Fel::ZERO
    }
    pub fn one(&self) -> Fel {
        Fel(0)
    }
    /// The fixed square root of -1.
    pub fn alpha(&self) -> Fel {
        self.alpha
    }
    /// The generator itself, g^1.
    pub fn generator(&self) -> Fel {
        Fel(1)
    }

    /// Element with the given discrete-log index.
    pub fn from_log(&self, i: u32) -> Fel {
        Fel(i % self.n())
    }

    /// Embed an integer via the prime subfield.
    pub fn from_int(&self, m: i64) -> Fel {
        let p = self.params.p as i64;
        let m = m.rem_euclid(p) as u32;
        if m == 0 {
            Fel::ZERO
        } else {
            Fel(self.log_tbl[m as usize])
        }
    }

    /// Polynomial code (base-p digit encoding) of an element.
    pub fn code(&self, x: Fel) -> u32 {
        match x.log() {
            None => 0,
            Some(i) => self.exp[i as usize],
        }
    }

    /// Element with the given polynomial code.
    pub fn from_code(&self, c: u32) -> Fel {
        if c == 0 {
            Fel::ZERO
        } else {
            Fel(self.log_tbl[c as usize])
        }
    }

    pub fn mul(&self, x: Fel, y: Fel) -> Fel {
        match (x.log(), y.log()) {
            (Some(i), Some(j)) => Fel((i + j) % self.n()),
            _ => Fel::ZERO,
        }
    }

    pub fn inv(&self, x: Fel) -> Fel {
        let i = x.idx();
        Fel((self.n() - i) % self.n())
    }

    pub fn div(&self, x: Fel, y: Fel) -> Fel {
        self.mul(x, self.inv(y))
    }

    pub fn neg(&self, x: Fel) -> Fel {
        match x.log() {
            None => Fel::ZERO,
            Some(i) => Fel((i + self.n() / 2) % self.n()),
        }
    }

    pub fn add(&self, x: Fel, y: Fel) -> Fel {
        match (x.log(), y.log()) {
            (None, _) => y,
            (_, None) => x,
            (Some(i), Some(j)) => {
                let p = self.params.p;
                let mut a = self.exp[i as usize];
                let mut b = self.exp[j as usize];
                let mut sum = 0u32;
                let mut place = 1u32;
                while a != 0 || b != 0 {
                    let digit = (a % p + b % p) % p;
                    sum += digit * place;
                    place *= p;
                    a /= p;
                    b /= p;
                }
                self.from_code(sum)
            }
        }
    }

    pub fn sub(&self, x: Fel, y: Fel) -> Fel {
        self.add(x, self.neg(y))
    }

    /// x^n for n >= 0, with 0^0 = 1.
    pub fn pow(&self, x: Fel, n: u64) -> Fel {
        match x.log() {
            None => {
                if n == 0 {
                    self.one()
                } else {
                    Fel::ZERO
                }
            }
            Some(i) => Fel(((i as u64 * (n % self.n() as u64)) % self.n() as u64) as u32),
        }
    }

    /// x^{p^j}, the j-fold Frobenius. Identity at j = 2e.
    pub fn frobenius(&self, x: Fel, j: u32) -> Fel {
        match x.log() {
            None => Fel::ZERO,
            Some(i) => {
                let jr = j % (2 * self.params.e);
                let r = (self.params.p as u64).pow(jr) % self.n() as u64;
                Fel(((i as u64 * r) % self.n() as u64) as u32)
            }
        }
    }

    /// Multiplicative order; 0 has none, reported as 0.
    pub fn order_of(&self, x: Fel) -> u32 {
        match x.log() {
            None => 0,
            Some(i) => (self.n() as u64 / gcd(self.n() as u64, i as u64)) as u32,
        }
    }

    /// Membership in the subfield GF(q).
    pub fn in_gfq(&self, x: Fel) -> bool {
        match x.log() {
            None => true,
            Some(i) => i % (self.params.q + 1) == 0,
        }
    }

    /// Membership in GF(p^d) <= GF(q^2); requires d | 2e to be a subfield.
    pub fn in_subfield(&self, x: Fel, d: u32) -> bool {
        if (2 * self.params.e) % d != 0 {
            return false;
        }
        match x.log() {
            None => true,
            Some(i) => {
                let sub_order = (self.params.p as u64).pow(d) - 1;
                let step = self.n() as u64 / gcd(self.n() as u64, sub_order);
                i as u64 % step == 0
            }
        }
    }

    /// Smallest d with x in GF(p^d); always a divisor of 2e.
    pub fn element_degree(&self, x: Fel) -> u32 {
        for d in 1..=(2 * self.params.e) {
            if (2 * self.params.e) % d == 0 && self.in_subfield(x, d) {
                return d;
            }
        }
        unreachable!("every element lies in GF(q^2) itself")
    }

    /// Canonical square root: the root with the smaller log index, i.e.
    /// g^{i/2} for x = g^i with even i. `None` when i is odd.
    pub fn sqrt(&self, x: Fel) -> Option<Fel> {
        match x.log() {
            None => Some(Fel::ZERO),
            Some(i) => {
                if i % 2 == 0 {
                    Some(Fel(i / 2))
                } else {
                    None
                }
            }
        }
    }

    /// Quadratic character of GF(q): +1 for nonzero squares of GF(q),
    /// -1 for non-squares, 0 for zero. The argument must lie in GF(q).
    pub fn chi_q(&self, x: Fel) -> i32 {
        debug_assert!(self.in_gfq(x), "chi_q needs an element of GF(q)");
        match x.log() {
            None => 0,
            Some(i) => {
                let m = i / (self.params.q + 1);
                if m % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// All elements of exact multiplicative order 2k in GF(q^2), ascending by
    /// log index. Empty when 2k does not divide q^2 - 1.
    pub fn primitive_2k_roots(&self, k: u32) -> Result<Vec<Fel>> {
        if k < 3 {
            return Err(Error::InvalidOrder { k, why: "rotation order must be at least 3" });
        }
        if k % self.params.p == 0 {
            return Err(Error::InvalidOrder { k, why: "order divisible by the characteristic" });
        }
        let n = 2 * k;
        if self.n() % n != 0 {
            return Ok(Vec::new());
        }
        let step = self.n() / n;
        let mut out = Vec::with_capacity(euler_phi(n) as usize);
        for m in 1..n {
            if gcd(m as u64, n as u64) == 1 {
                out.push(Fel(m * step));
            }
        }
        out.sort();
        debug_assert_eq!(out.len() as u32, euler_phi(n));
        Ok(out)
    }

    /// Pairs (xi, omega) with xi a primitive 2k-th root, omega = xi + xi^{-1},
    /// one pair per inverse-pair of roots, restricted to omega in GF(q).
    /// The xi of a pair is the one of {xi, xi^{-1}} with the smaller index.
    /// Sorted ascending by the index of omega.
    pub fn omegas_for_order(&self, k: u32) -> Result<Vec<(Fel, Fel)>> {
        let roots = self.primitive_2k_roots(k)?;
        let mut out: Vec<(Fel, Fel)> = Vec::new();
        for &xi in &roots {
            let xi_inv = self.inv(xi);
            if xi_inv < xi {
                continue;
            }
            let omega = self.add(xi, xi_inv);
            if !self.in_gfq(omega) {
                continue;
            }
            if !out.iter().any(|&(_, w)| w == omega) {
                out.push((xi, omega));
            }
        }
        out.sort_by_key(|&(_, w)| w);
        Ok(out)
    }

    /// The primitive 2k-th root with xi + xi^{-1} = omega and the smaller
    /// index of the two. `None` when omega does not arise for this order.
    pub fn xi_for_omega(&self, k: u32, omega: Fel) -> Option<Fel> {
        let roots = self.primitive_2k_roots(k).ok()?;
        roots
            .into_iter()
            .filter(|&xi| self.add(xi, self.inv(xi)) == omega)
            .min()
    }
}

fn find_modulus(p: u32, d: u32) -> Vec<u32> {
    let total = (p as u64).pow(d);
    for enc in 0..total {
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        let mut m = enc;
        for _ in 0..d {
            coeffs.push((m % p as u64) as u32);
            m /= p as u64;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

fn build_tables(modulus: &[u32], params: FieldParams) -> (Vec<u32>, Vec<u32>) {
    let FieldParams { p, q2, .. } = params;
    let n = q2 - 1;
    let encode = |poly: &[u32]| -> u32 {
        let mut code = 0u32;
        let mut place = 1u32;
        for &c in poly {
            code += c * place;
            place *= p;
        }
        code
    };

    // Generator: smallest polynomial code with full multiplicative order.
    let factors = prime_divisors(n as u64);
    let mut gen_poly = None;
    'cand: for code in 2..q2 {
        let mut poly_form = Vec::new();
        let mut m = code;
        while m != 0 {
            poly_form.push(m % p);
            m /= p;
        }
        for &t in &factors {
            let e = poly::pow_mod(&poly_form, n as u64 / t, modulus, p);
            if e == [1] {
                continue 'cand;
            }
        }
        gen_poly = Some(poly_form);
        break;
    }
    let gen_poly = gen_poly.expect("GF(q^2)* is cyclic, a generator exists");

    let mut exp = vec![0u32; n as usize];
    let mut log_tbl = vec![0u32; q2 as usize];
    let mut acc = vec![1u32];
    for i in 0..n {
        let code = encode(&acc);
        exp[i as usize] = code;
        log_tbl[code as usize] = i;
        acc = poly::mul_mod(&acc, &gen_poly, modulus, p);
    }
    debug_assert_eq!(acc, vec![1], "generator order must be q^2 - 1");
    (exp, log_tbl)
}
