//! Independent validation by brute force inside PGL(2,q): enumerate the
//! involution triples directly, count their orbits under the full
//! semilinear group, classify each orbit from the definitions alone, and
//! diff the outcome against the trace-based census.
//!
//! Nothing here consults the closed-form conditions; agreement between the
//! two paths is the point.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::enumerate::census;
use crate::field::FieldCtx;
use crate::projective::{in_psl2q, pgl2q_elements, ProjElement, PslMembership};
use crate::symmetry::Bucket;
use crate::{is_hyperbolic, Error, Result};

pub struct OracleGroup {
    pub all: Vec<ProjElement>,
    pub psl_size: usize,
    pub involutions_psl: Vec<ProjElement>,
    pub involutions_outer: Vec<ProjElement>,
}

/// Enumerate PGL(2,q) once: every canonical element plus its involutions
/// split by which side of PSL they sit on.
pub fn build_group(f: &FieldCtx) -> OracleGroup {
    let all = pgl2q_elements(f);
    let mut psl_size = 0;
    let mut involutions_psl = Vec::new();
    let mut involutions_outer = Vec::new();
    for g in &all {
        let side = in_psl2q(f, g);
        if side == PslMembership::Psl {
            psl_size += 1;
        }
        if g.rep().trace(f).is_zero() && !g.is_identity(f) {
            match side {
                PslMembership::Psl => involutions_psl.push(*g),
                PslMembership::PglOnly => involutions_outer.push(*g),
                PslMembership::NotOverGfq => unreachable!("canonical GF(q) element"),
            }
        }
    }
    let q = f.q() as usize;
    debug_assert_eq!(all.len(), q * q * q - q);
    debug_assert_eq!(psl_size, q * (q * q - 1) / 2);
    OracleGroup { all, psl_size, involutions_psl, involutions_outer }
}

/// Size of the subgroup generated by `gens`, by breadth-first closure.
/// Stops with an error once more than `cap` elements appear.
pub fn closure_order(f: &FieldCtx, gens: &[ProjElement], cap: u32) -> Result<u32> {
    let mut seen: HashSet<ProjElement> = HashSet::new();
    seen.insert(ProjElement::identity(f));
    let mut queue: Vec<ProjElement> = vec![ProjElement::identity(f)];
    while let Some(g) = queue.pop() {
        for h in gens {
            let ng = g.mul(f, h);
            if seen.insert(ng) {
                if seen.len() as u32 > cap {
                    return Err(Error::OrderCap { cap });
                }
                queue.push(ng);
            }
        }
    }
    Ok(seen.len() as u32)
}

/// Whether <r, s> exceeds half of PSL(2,q). Since both generators lie in
/// PSL, exceeding half forces the closure to be all of it.
fn generates_psl(f: &FieldCtx, r: &ProjElement, s: &ProjElement, psl_size: usize) -> bool {
    let half = psl_size / 2;
    let mut seen: HashSet<ProjElement> = HashSet::new();
    seen.insert(ProjElement::identity(f));
    let mut queue = vec![ProjElement::identity(f)];
    while let Some(g) = queue.pop() {
        for h in [r, s] {
            let ng = g.mul(f, h);
            if seen.insert(ng) {
                if seen.len() > half {
                    return true;
                }
                queue.push(ng);
            }
        }
    }
    false
}

#[derive(Clone, Copy, Debug)]
struct Auto {
    a: ProjElement,
    a_inv: ProjElement,
    j: u32,
}

impl Auto {
    fn image(&self, f: &FieldCtx, t: &ProjElement) -> ProjElement {
        self.a.mul(f, &t.frobenius(f, self.j)).mul(f, &self.a_inv)
    }
}

#[derive(Clone, Debug, Default)]
pub struct OracleCensus {
    pub q: u32,
    pub total: u32,
    pub kl: BTreeMap<(u32, u32), u32>,
    pub buckets: BTreeMap<Bucket, u32>,
}

/// Orbit census straight from the definitions. Refuses fields beyond
/// `cap`: the cost grows roughly like q^4.
pub fn oracle_census(f: &FieldCtx, cap: u32) -> Result<OracleCensus> {
    if f.q() > cap {
        return Err(Error::OracleCap { q: f.q(), cap });
    }
    let group = build_group(f);
    let e = f.e();
    let mut out = OracleCensus { q: f.q(), ..Default::default() };

    let all_autos: Vec<Auto> = (0..e)
        .flat_map(|j| {
            group.all.iter().map(move |a| (j, a))
        })
        .map(|(j, a)| Auto { a: *a, a_inv: a.inv(f), j })
        .collect();

    for (x0, slice) in [
        (&group.involutions_psl, &group.involutions_psl),
        (&group.involutions_outer, &group.involutions_outer),
    ]
    .into_iter()
    .filter_map(|(reps, slice)| reps.first().map(|x| (*x, slice)))
    {
        // Stabilizer of x0 in the semilinear group: for each field twist,
        // the matrices carrying the twisted x0 back onto x0.
        let stab: Vec<Auto> = all_autos
            .iter()
            .filter(|auto| auto.image(f, &x0) == x0)
            .copied()
            .collect();
        debug_assert_eq!(stab.len() % e as usize, 0);

        let ys: Vec<ProjElement> = slice
            .iter()
            .filter(|y| **y != x0 && y.mul(f, &x0) == x0.mul(f, y))
            .copied()
            .collect();
        let cap_ord = f.q() + 1;
        let mut visited: HashSet<(ProjElement, ProjElement)> = HashSet::new();
        for &y in &ys {
            for &z in slice.iter() {
                if visited.contains(&(y, z)) {
                    continue;
                }
                let r = y.mul(f, &z);
                let Ok(k) = r.order(f, cap_ord) else { continue };
                if k < 3 {
                    continue;
                }
                let s = z.mul(f, &x0);
                let Ok(l) = s.order(f, cap_ord) else { continue };
                if l < 3 || !is_hyperbolic(k, l) {
                    continue;
                }
                if !generates_psl(f, &r, &s, group.psl_size) {
                    continue;
                }
                // One new orbit. Mark every slice member it contains; the
                // action is free, so the stabilizer sweeps them out exactly.
                let mut members = HashSet::new();
                for auto in &stab {
                    members.insert((auto.image(f, &y), auto.image(f, &z)));
                }
                assert_eq!(members.len(), stab.len(), "free action");
                visited.extend(members);

                out.total += 1;
                *out.kl.entry((k, l)).or_insert(0) += 1;
                let xy = x0.mul(f, &y);
                let mut sd = false;
                let mut sp = false;
                for auto in &all_autos {
                    if !sd
                        && auto.image(f, &x0) == y
                        && auto.image(f, &y) == x0
                        && auto.image(f, &z) == z
                    {
                        sd = true;
                    }
                    if !sp
                        && auto.image(f, &x0) == xy
                        && auto.image(f, &y) == y
                        && auto.image(f, &z) == z
                    {
                        sp = true;
                    }
                    if sd && sp {
                        break;
                    }
                }
                let mr = k % 2 == 0 && {
                    let h = r.pow(f, k / 2);
                    x0.mul(f, &h).mul(f, &x0) == h.mul(f, &y)
                };
                let flags = crate::symmetry::SymFlags { sd, sp, mr };
                let Some(bucket) = flags.bucket() else {
                    return Err(Error::BucketViolation(format!(
                        "oracle at q = {}: type ({k},{l}) orbit is Mobius-regular without Petrie symmetry",
                        f.q()
                    )));
                };
                *out.buckets.entry(bucket).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KlMismatch {
    pub k: u32,
    pub l: u32,
    pub oracle: u32,
    pub census: u32,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BucketMismatch {
    pub bucket: String,
    pub oracle: u32,
    pub census: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffReport {
    pub q: u32,
    pub ok: bool,
    pub oracle_total: u32,
    pub census_total: u32,
    pub kl_mismatches: Vec<KlMismatch>,
    pub bucket_mismatches: Vec<BucketMismatch>,
}

/// Run both pipelines and report every disagreement.
pub fn diff_against_enumerate(f: &FieldCtx, cap: u32) -> Result<DiffReport> {
    let o = oracle_census(f, cap)?;
    let c = census(f, false)?;
    let census_kl = c.kl_counts();
    let mut kl_mismatches = Vec::new();
    let keys: std::collections::BTreeSet<(u32, u32)> =
        o.kl.keys().chain(census_kl.keys()).copied().collect();
    for key in keys {
        let a = o.kl.get(&key).copied().unwrap_or(0);
        let b = census_kl.get(&key).copied().unwrap_or(0);
        if a != b {
            kl_mismatches.push(KlMismatch { k: key.0, l: key.1, oracle: a, census: b });
        }
    }
    let census_buckets: BTreeMap<Bucket, u32> = [
        (Bucket::None, c.row.none),
        (Bucket::SdOnly, c.row.sd_only),
        (Bucket::SpOnly, c.row.sp_only),
        (Bucket::SdSp, c.row.sd_sp),
        (Bucket::SpMr, c.row.sp_mr),
        (Bucket::SdSpMr, c.row.sd_sp_mr),
    ]
    .into_iter()
    .filter(|&(_, n)| n > 0)
    .collect();
    let mut bucket_mismatches = Vec::new();
    let bkeys: std::collections::BTreeSet<Bucket> =
        o.buckets.keys().chain(census_buckets.keys()).copied().collect();
    for key in bkeys {
        let a = o.buckets.get(&key).copied().unwrap_or(0);
        let b = census_buckets.get(&key).copied().unwrap_or(0);
        if a != b {
            bucket_mismatches.push(BucketMismatch {
                bucket: key.as_str().to_string(),
                oracle: a,
                census: b,
            });
        }
    }
    let ok = kl_mismatches.is_empty()
        && bucket_mismatches.is_empty()
        && o.total == c.row.maps;
    Ok(DiffReport {
        q: f.q(),
        ok,
        oracle_total: o.total,
        census_total: c.row.maps,
        kl_mismatches,
        bucket_mismatches,
    })
}
