//! Census of regular maps on PSL(2,q): enumerate admissible signatures,
//! fold them into Galois-and-sign classes, drop the ones whose rotation
//! group falls into a proper subgroup, and classify what remains.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::field::{factor_prime_power, Fel, FieldCtx};
use crate::symmetry::{classify, Bucket, SymFlags};
use crate::triples::{construct, Family, MapSignature};
use crate::{gcd, is_hyperbolic, Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubgroupKind {
    ProperSubfield,
    HalfFieldPgl,
    Icosahedral,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupAssignment {
    Psl,
    Pgl,
    Subgroup(SubgroupKind),
}

/// Full symmetry group of the map, as a marker on each census class.
/// The rotation subgroup is PSL(2,q) either way.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum FlagGroup {
    #[serde(rename = "PSL")]
    Psl,
    #[serde(rename = "PGL")]
    Pgl,
}

impl FlagGroup {
    pub fn as_str(self) -> &'static str {
        match self {
            FlagGroup::Psl => "PSL",
            FlagGroup::Pgl => "PGL",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MapClass {
    pub sig: MapSignature,
    pub flags: SymFlags,
    pub flag_group: FlagGroup,
    /// Number of raw signatures folded into this class.
    pub orbit: u32,
}

#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct SkipStats {
    /// Raw (k,l) signatures refused for D = 0.
    pub degenerate_d: u32,
    /// Raw (5,5) signatures refused for icosahedral collapse.
    pub collapsed: u32,
    /// Classes whose trace field is a proper subfield.
    pub subfield: u32,
    /// Classes generating PGL(2, sqrt(q)) inside PSL(2,q).
    pub half_field: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub q: u32,
    pub maps: u32,
    pub none: u32,
    pub sd_only: u32,
    pub sp_only: u32,
    pub sd_sp: u32,
    pub sp_mr: u32,
    pub sd_sp_mr: u32,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub row: CensusRow,
    pub classes: Vec<MapClass>,
    pub skipped: SkipStats,
}

impl Census {
    /// Class counts per (k, l), for duality-pairing checks.
    pub fn kl_counts(&self) -> BTreeMap<(u32, u32), u32> {
        let mut m = BTreeMap::new();
        for c in &self.classes {
            *m.entry((c.sig.k, c.sig.l)).or_insert(0) += 1;
        }
        m
    }
}

/// Rotation orders available over GF(q): the characteristic plus every k
/// coprime to it with a primitive 2k-th root in GF(q^2) whose trace sum
/// stays in GF(q). The divisibility form: 2k divides q-1 or q+1.
pub fn admissible_orders(f: &FieldCtx) -> Vec<u32> {
    let q = f.q() as u64;
    let p = f.p();
    let mut ks = vec![p];
    let mut k = 3u32;
    while 2 * (k as u64) <= q + 1 {
        if k != p
            && gcd(k as u64, p as u64) == 1
            && ((q - 1) % (2 * k as u64) == 0 || (q + 1) % (2 * k as u64) == 0)
        {
            ks.push(k);
        }
        k += 1;
    }
    ks.sort();
    ks
}

/// Ordered pairs of admissible orders of hyperbolic type.
pub fn hyperbolic_pairs(f: &FieldCtx) -> Vec<(u32, u32)> {
    let ks = admissible_orders(f);
    let mut pairs = Vec::new();
    for &k in &ks {
        for &l in &ks {
            if is_hyperbolic(k, l) {
                pairs.push((k, l));
            }
        }
    }
    pairs
}

fn family_of(f: &FieldCtx, k: u32, l: u32) -> Family {
    match (k == f.p(), l == f.p()) {
        (true, true) => Family::Pp,
        (false, true) => Family::Kp,
        (true, false) => Family::Pl,
        (false, false) => Family::Kl,
    }
}

/// All signatures of type (k, l) before class folding. Degenerate and
/// collapsing (k,l)-pairs are dropped here and tallied in the stats.
pub fn raw_signatures(f: &FieldCtx, k: u32, l: u32) -> Result<(Vec<MapSignature>, SkipStats)> {
    let mut stats = SkipStats::default();
    let fam = family_of(f, k, l);
    let mut sigs = Vec::new();
    match fam {
        Family::Pp => sigs.push(MapSignature {
            family: fam,
            k,
            l,
            xi_k: None,
            xi_l: None,
            omega_k: None,
            omega_l: None,
        }),
        Family::Kp => {
            for (xi, w) in f.omegas_for_order(k)? {
                sigs.push(MapSignature {
                    family: fam,
                    k,
                    l,
                    xi_k: Some(xi),
                    xi_l: None,
                    omega_k: Some(w),
                    omega_l: None,
                });
            }
        }
        Family::Pl => {
            for (xi, w) in f.omegas_for_order(l)? {
                sigs.push(MapSignature {
                    family: fam,
                    k,
                    l,
                    xi_k: None,
                    xi_l: Some(xi),
                    omega_k: None,
                    omega_l: Some(w),
                });
            }
        }
        Family::Kl => {
            let side_k = f.omegas_for_order(k)?;
            let side_l = f.omegas_for_order(l)?;
            for &(xk, wk) in &side_k {
                for &(xl, wl) in &side_l {
                    if k == 5 && l == 5 && wk != wl {
                        stats.collapsed += 1;
                        continue;
                    }
                    let d = f.sub(f.add(f.mul(wk, wk), f.mul(wl, wl)), f.from_int(4));
                    if d.is_zero() {
                        stats.degenerate_d += 1;
                        log::debug!(
                            "q = {}: ({k},{l}) traces {wk}, {wl} give a degenerate pair",
                            f.q()
                        );
                        continue;
                    }
                    sigs.push(MapSignature {
                        family: fam,
                        k,
                        l,
                        xi_k: Some(xk),
                        xi_l: Some(xl),
                        omega_k: Some(wk),
                        omega_l: Some(wl),
                    });
                }
            }
        }
    }
    Ok((sigs, stats))
}

fn omega_key(w: Option<Fel>) -> u32 {
    w.and_then(|x| x.log()).unwrap_or(0)
}

fn sig_key(sig: &MapSignature) -> (u32, u32, u32, u32) {
    (sig.k, sig.l, omega_key(sig.omega_k), omega_key(sig.omega_l))
}

/// The trace pairs equivalent to this signature: simultaneous Frobenius on
/// both sides, and independent sign flips on each even-order side.
fn orbit_trace_pairs(f: &FieldCtx, sig: &MapSignature) -> Vec<(Option<Fel>, Option<Fel>)> {
    let flips = |w: Option<Fel>, order: u32| -> Vec<Option<Fel>> {
        match w {
            None => vec![None],
            Some(x) => {
                if order % 2 == 0 {
                    vec![Some(x), Some(f.neg(x))]
                } else {
                    vec![Some(x)]
                }
            }
        }
    };
    let mut out = Vec::new();
    let mut wk = sig.omega_k;
    let mut wl = sig.omega_l;
    for _ in 0..f.e() {
        for a in flips(wk, sig.k) {
            for b in flips(wl, sig.l) {
                out.push((a, b));
            }
        }
        wk = wk.map(|x| f.frobenius(x, 1));
        wl = wl.map(|x| f.frobenius(x, 1));
    }
    out.sort_by_key(|&(a, b)| (omega_key(a), omega_key(b)));
    out.dedup();
    out
}

/// Canonical representative of a signature's class: the orbit member with
/// lexicographically least trace indices, roots re-derived to match.
pub fn canonicalize(f: &FieldCtx, sig: &MapSignature) -> MapSignature {
    let (wk, wl) = orbit_trace_pairs(f, sig)[0];
    let xi_k = wk.map(|w| f.xi_for_omega(sig.k, w).expect("trace belongs to order k"));
    let xi_l = wl.map(|w| f.xi_for_omega(sig.l, w).expect("trace belongs to order l"));
    MapSignature {
        family: sig.family,
        k: sig.k,
        l: sig.l,
        xi_k,
        xi_l,
        omega_k: wk,
        omega_l: wl,
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / (gcd(a as u64, b as u64) as u32) * b
}

/// Decide whether the rotation pair generates all of PSL(2,q) or lands in
/// a proper subgroup, from the trace data alone.
pub fn group_filter(f: &FieldCtx, sig: &MapSignature) -> GroupAssignment {
    if sig.family == Family::Pp {
        return if f.e() == 1 {
            GroupAssignment::Psl
        } else {
            GroupAssignment::Subgroup(SubgroupKind::ProperSubfield)
        };
    }
    let mut deg = 1;
    for w in [sig.omega_k, sig.omega_l].into_iter().flatten() {
        deg = lcm(deg, f.element_degree(w));
    }
    if deg < f.e() {
        return GroupAssignment::Subgroup(SubgroupKind::ProperSubfield);
    }
    if f.e() % 2 == 0 {
        let h = f.e() / 2;
        let sq_in = |w: Fel| f.in_subfield(f.mul(w, w), h);
        let caught = match sig.family {
            Family::Kp => sq_in(sig.omega_k.unwrap()),
            Family::Pl => sq_in(sig.omega_l.unwrap()),
            Family::Kl => {
                let wk = sig.omega_k.unwrap();
                let wl = sig.omega_l.unwrap();
                sq_in(wk)
                    && sq_in(wl)
                    && (f.in_subfield(wk, h)
                        || f.in_subfield(wl, h)
                        || f.in_subfield(f.mul(wk, wl), h))
            }
            Family::Pp => unreachable!(),
        };
        if caught {
            return GroupAssignment::Subgroup(SubgroupKind::HalfFieldPgl);
        }
    }
    GroupAssignment::Psl
}

fn flag_group_marker(f: &FieldCtx, sig: &MapSignature) -> FlagGroup {
    let x = match sig.family {
        Family::Kl => f.neg(sig.big_d(f).unwrap()),
        _ => f.neg(f.one()),
    };
    if f.chi_q(x) == 1 {
        FlagGroup::Psl
    } else {
        FlagGroup::Pgl
    }
}

/// Build the full census for one field. With `validate`, every class is
/// cross-checked against witness search and the in-group Mobius test.
pub fn census(f: &FieldCtx, validate: bool) -> Result<Census> {
    let mut skipped = SkipStats::default();
    let mut folded: BTreeMap<(u32, u32, u32, u32), (MapSignature, u32)> = BTreeMap::new();
    for (k, l) in hyperbolic_pairs(f) {
        let (sigs, stats) = raw_signatures(f, k, l)?;
        skipped.degenerate_d += stats.degenerate_d;
        skipped.collapsed += stats.collapsed;
        for sig in sigs {
            let canon = canonicalize(f, &sig);
            let e = folded.entry(sig_key(&canon)).or_insert((canon, 0));
            e.1 += 1;
        }
    }
    let mut classes = Vec::new();
    let mut buckets: BTreeMap<Bucket, u32> = BTreeMap::new();
    for (sig, orbit) in folded.into_values() {
        match group_filter(f, &sig) {
            GroupAssignment::Subgroup(SubgroupKind::ProperSubfield) => {
                skipped.subfield += 1;
                continue;
            }
            GroupAssignment::Subgroup(SubgroupKind::HalfFieldPgl) => {
                skipped.half_field += 1;
                continue;
            }
            GroupAssignment::Subgroup(SubgroupKind::Icosahedral) => unreachable!(),
            GroupAssignment::Psl | GroupAssignment::Pgl => {}
        }
        let t = construct(f, &sig)?;
        let flags = classify(f, &t, validate)?;
        let Some(bucket) = flags.bucket() else {
            return Err(Error::BucketViolation(format!(
                "q = {}, {}: Mobius regularity without Petrie symmetry",
                f.q(),
                sig.describe()
            )));
        };
        *buckets.entry(bucket).or_insert(0) += 1;
        classes.push(MapClass {
            sig,
            flags,
            flag_group: flag_group_marker(f, &sig),
            orbit,
        });
    }
    let count = |b: Bucket| buckets.get(&b).copied().unwrap_or(0);
    let row = CensusRow {
        q: f.q(),
        maps: classes.len() as u32,
        none: count(Bucket::None),
        sd_only: count(Bucket::SdOnly),
        sp_only: count(Bucket::SpOnly),
        sd_sp: count(Bucket::SdSp),
        sp_mr: count(Bucket::SpMr),
        sd_sp_mr: count(Bucket::SdSpMr),
    };
    Ok(Census { row, classes, skipped })
}

/// Odd prime powers from 5 up to `qmax`, the census domain.
pub fn census_fields(qmax: u32) -> Vec<u32> {
    (5..=qmax)
        .filter(|&q| q % 2 == 1 && factor_prime_power(q).is_some())
        .collect()
}
