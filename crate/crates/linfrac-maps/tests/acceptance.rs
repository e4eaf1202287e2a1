//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any fail.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linfrac_maps::enumerate::{census, census_fields};
use linfrac_maps::field::FieldCtx;
use linfrac_maps::oracle::{closure_order, diff_against_enumerate};
use linfrac_maps::projective::{check_invoabcd, involution_twists, Mat2, ProjElement, SemilinearAuto};
use linfrac_maps::symmetry::analyze;
use linfrac_maps::triples::{a5_collapse, construct, rotation_pair_kl, validate_triple, Family};

const GOLDEN: [[u32; 8]; 25] = [
    [5, 1, 0, 1, 0, 0, 0, 0],
    [7, 5, 4, 1, 0, 0, 0, 0],
    [9, 3, 2, 1, 0, 0, 0, 0],
    [11, 16, 11, 3, 1, 1, 0, 0],
    [13, 33, 26, 4, 2, 1, 0, 0],
    [17, 58, 50, 6, 0, 0, 2, 0],
    [19, 70, 58, 8, 4, 0, 0, 0],
    [23, 113, 101, 8, 1, 0, 2, 1],
    [25, 63, 52, 7, 3, 0, 1, 0],
    [27, 54, 48, 4, 2, 0, 0, 0],
    [29, 183, 163, 13, 7, 0, 0, 0],
    [31, 209, 190, 13, 0, 0, 6, 0],
    [37, 315, 290, 16, 8, 1, 0, 0],
    [41, 382, 356, 18, 2, 0, 6, 0],
    [43, 430, 400, 20, 10, 0, 0, 0],
    [47, 515, 485, 20, 1, 0, 8, 1],
    [49, 264, 238, 16, 7, 0, 3, 0],
    [53, 663, 625, 25, 13, 0, 0, 0],
    [59, 820, 779, 27, 13, 1, 0, 0],
    [61, 879, 836, 28, 14, 1, 0, 0],
    [67, 1072, 1024, 32, 16, 0, 0, 0],
    [71, 1199, 1151, 32, 4, 0, 11, 1],
    [73, 1276, 1227, 33, 3, 1, 12, 0],
    [79, 1493, 1438, 37, 2, 0, 16, 0],
    [81, 381, 356, 15, 7, 0, 3, 0],
];

fn ctx(q: u32) -> FieldCtx {
    FieldCtx::for_q(q).unwrap()
}

// 1: the table subcommand reproduces every known census row up to q = 81.
fn c1_table_binary() -> Result<String, String> {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_linfrac-maps"))
        .args(["table", "--qmax", "81", "--format", "json"])
        .output()
        .map_err(|e| format!("spawn failed: {e}"))?;
    if !out.status.success() {
        return Err(format!("exit {:?}", out.status.code()));
    }
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let rows: Vec<serde_json::Value> = text
        .lines()
        .map(|line| serde_json::from_str(line).map_err(|e| format!("bad json line: {e}")))
        .collect::<Result<_, _>>()?;
    if rows.len() != GOLDEN.len() {
        return Err(format!("{} rows, expected {}", rows.len(), GOLDEN.len()));
    }
    let cols = ["q", "maps", "none", "sd_only", "sp_only", "sd_sp", "sp_mr", "sd_sp_mr"];
    for (row, g) in rows.iter().zip(GOLDEN) {
        for (name, want) in cols.iter().zip(g) {
            let got = row[*name].as_u64().ok_or_else(|| format!("missing {name}"))?;
            if got != want as u64 {
                return Err(format!("q = {}: {name} = {got}, expected {want}", g[0]));
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    if secs >= 30.0 {
        return Err(format!("took {secs:.1}s, limit 30s"));
    }
    Ok(format!("25 rows in {secs:.2}s"))
}

// 2: brute-force recount inside PGL(2,q) agrees exactly on the small fields.
fn c2_oracle_agreement() -> Result<String, String> {
    let started = Instant::now();
    for q in [5u32, 7, 9, 11, 13] {
        let d = diff_against_enumerate(&ctx(q), 13).map_err(|e| e.to_string())?;
        if !d.ok {
            return Err(format!("q = {q} disagrees: {d:?}"));
        }
    }
    let secs = started.elapsed().as_secs_f64();
    if secs >= 300.0 {
        return Err(format!("took {secs:.1}s, limit 300s"));
    }
    Ok(format!("q in {{5,7,9,11,13}} in {secs:.2}s"))
}

// 3: the trace conditions and the explicit witness searches give the same
// answer on every census class through q = 31.
fn c3_conditions_vs_witnesses() -> Result<String, String> {
    let mut checked = 0u32;
    for q in census_fields(31) {
        let f = ctx(q);
        let c = census(&f, false).map_err(|e| e.to_string())?;
        for class in &c.classes {
            let t = construct(&f, &class.sig).map_err(|e| e.to_string())?;
            let cls = analyze(&f, &t).map_err(|e| e.to_string())?;
            let sig = class.sig.describe();
            if cls.flags.sd != cls.duality.is_some() {
                return Err(format!("q = {q} {sig}: sd {} vs witness {}", cls.flags.sd, cls.duality.is_some()));
            }
            if cls.flags.sp != cls.petrie.is_some() {
                return Err(format!("q = {q} {sig}: sp {} vs witness {}", cls.flags.sp, cls.petrie.is_some()));
            }
            if cls.flags.mr != cls.mr_seen {
                return Err(format!("q = {q} {sig}: mr {} vs direct {}", cls.flags.mr, cls.mr_seen));
            }
            if cls.flags != class.flags {
                return Err(format!("q = {q} {sig}: census flags differ"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} classes agree"))
}

// 4: the closed-form involution test on (A, j) pairs matches the entrywise
// formula on random samples, and every published witness is involutory in
// the sense that applies to it.
fn c4_involution_test() -> Result<String, String> {
    let mut samples = 0u32;
    for q in [5u32, 9, 13, 25, 49] {
        let f = ctx(q);
        let twists = involution_twists(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + q as u64);
        let mut done = 0;
        while done < 10_000 {
            let m = Mat2::new(
                f.from_int(rng.random_range(0..q) as i64),
                f.from_int(rng.random_range(0..q) as i64),
                f.from_int(rng.random_range(0..q) as i64),
                f.from_int(rng.random_range(0..q) as i64),
            );
            if m.det(&f).is_zero() {
                continue;
            }
            let j = twists[rng.random_range(0..twists.len())];
            let auto = SemilinearAuto::new(&f, ProjElement::new(&f, m).unwrap(), j);
            if auto.is_identity(&f) {
                continue;
            }
            let by_formula = check_invoabcd(&f, &m, j).map_err(|e| e.to_string())?;
            if auto.is_involution(&f) != by_formula {
                return Err(format!(
                    "q = {q}, j = {j}, A = {:?}: is_involution {} vs formula {}",
                    m.entries(),
                    auto.is_involution(&f),
                    by_formula
                ));
            }
            done += 1;
            samples += 1;
        }
    }

    // Witness semantics across a field with both plain and twisted hits.
    let f = ctx(25);
    let c = census(&f, false).map_err(|e| e.to_string())?;
    let mut twisted = 0u32;
    for class in &c.classes {
        let t = construct(&f, &class.sig).map_err(|e| e.to_string())?;
        let cls = analyze(&f, &t).map_err(|e| e.to_string())?;
        let gens = [t.x, t.y, t.z];
        for w in [&cls.duality, &cls.petrie].into_iter().flatten() {
            if w.twist() == 0 {
                if !w.is_involution(&f) {
                    return Err(format!("q = 25 {}: plain witness not involutory", class.sig.describe()));
                }
            } else {
                twisted += 1;
            }
            for g in &gens {
                if w.apply(&f, &w.apply(&f, g)) != *g {
                    return Err(format!("q = 25 {}: witness does not undo itself", class.sig.describe()));
                }
            }
        }
    }
    if twisted == 0 {
        return Err("expected twisted witnesses at q = 25".into());
    }
    Ok(format!("{samples} random pairs, {twisted} twisted witnesses"))
}

// 5: every constructed triple validates, Mobius regularity never appears
// without Petrie symmetry, buckets partition the census, and the class
// count is symmetric in (k, l).
fn c5_structural_soundness() -> Result<String, String> {
    let mut triples = 0u32;
    for q in census_fields(81) {
        let f = ctx(q);
        let c = census(&f, false).map_err(|e| e.to_string())?;
        for class in &c.classes {
            let t = construct(&f, &class.sig).map_err(|e| e.to_string())?;
            validate_triple(&f, &t, class.sig.k, class.sig.l).map_err(|e| e.to_string())?;
            if class.flags.bucket().is_none() {
                return Err(format!("q = {q} {}: mr without sp", class.sig.describe()));
            }
            triples += 1;
        }
        let r = &c.row;
        let sum = r.none + r.sd_only + r.sp_only + r.sd_sp + r.sp_mr + r.sd_sp_mr;
        if sum != r.maps || c.classes.len() as u32 != r.maps {
            return Err(format!("q = {q}: buckets sum {sum}, classes {}, maps {}", c.classes.len(), r.maps));
        }
        let kl: BTreeMap<(u32, u32), u32> = c.kl_counts();
        for (&(k, l), &n) in &kl {
            let m = kl.get(&(l, k)).copied().unwrap_or(0);
            if n != m {
                return Err(format!("q = {q}: {n} classes of type ({k},{l}) but {m} of ({l},{k})"));
            }
        }
    }
    Ok(format!("{triples} triples validated"))
}

// 6: for order-5 rotation pairs, trace inequality, trace product +-1, and
// the collapse test agree, and the collapsed pairs close into a group of
// order 60 where checked.
fn c6_icosahedral_collapse() -> Result<String, String> {
    let mut pairs = 0u32;
    for q in census_fields(81) {
        let f = ctx(q);
        let Ok(omegas) = f.omegas_for_order(5) else { continue };
        for &(xi_a, w_a) in &omegas {
            for &(xi_b, w_b) in &omegas {
                let collapse = a5_collapse(&f, xi_a, xi_b).map_err(|e| e.to_string())?;
                let prod = f.mul(w_a, w_b);
                let prod_unit = prod == f.one() || prod == f.neg(f.one());
                if collapse != (w_a != w_b) || collapse != prod_unit {
                    return Err(format!(
                        "q = {q}: collapse {collapse}, traces differ {}, product unit {prod_unit}",
                        w_a != w_b
                    ));
                }
                pairs += 1;
            }
        }
    }
    for q in [9u32, 11] {
        let f = ctx(q);
        let omegas = f.omegas_for_order(5).map_err(|e| e.to_string())?;
        let psl = f.q() * (f.q() * f.q() - 1) / 2;
        for &(xi_a, w_a) in &omegas {
            for &(xi_b, w_b) in &omegas {
                let (r, s) = rotation_pair_kl(&f, xi_a, xi_b).map_err(|e| e.to_string())?;
                let n = closure_order(&f, &[r, s], psl + 1).map_err(|e| e.to_string())?;
                let want = if w_a != w_b { 60 } else { psl };
                if n != want {
                    return Err(format!("q = {q}: closure {n}, expected {want}"));
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs, closures at q = 9, 11"))
}

// 7: equal traces with 3 w^2 = 4 force self-duality and Petrie symmetry.
fn c7_shared_trace_identity() -> Result<String, String> {
    let mut hits = 0u32;
    for q in census_fields(81) {
        let f = ctx(q);
        let four = f.from_int(4);
        let three = f.from_int(3);
        let c = census(&f, false).map_err(|e| e.to_string())?;
        for class in &c.classes {
            if class.sig.family != Family::Kl {
                continue;
            }
            let (Some(wk), Some(wl)) = (class.sig.omega_k, class.sig.omega_l) else {
                continue;
            };
            if wk != wl || f.mul(three, f.mul(wk, wk)) != four {
                continue;
            }
            if !(class.flags.sd && class.flags.sp) {
                return Err(format!(
                    "q = {q} {}: 3w^2 = 4 but sd = {}, sp = {}",
                    class.sig.describe(),
                    class.flags.sd,
                    class.flags.sp
                ));
            }
            hits += 1;
        }
    }
    if hits == 0 {
        return Err("no class with 3w^2 = 4 found".into());
    }
    Ok(format!("{hits} classes checked"))
}

fn main() {
    let criteria: [(&str, fn() -> Result<String, String>); 7] = [
        ("table subcommand reproduces the census up to q = 81", c1_table_binary),
        ("brute-force recount agrees on q in {5,7,9,11,13}", c2_oracle_agreement),
        ("trace conditions match witness searches through q = 31", c3_conditions_vs_witnesses),
        ("involution formula matches on random semilinear pairs", c4_involution_test),
        ("triples validate and the census partitions cleanly", c5_structural_soundness),
        ("icosahedral collapse detection is consistent", c6_icosahedral_collapse),
        ("equal traces with 3w^2 = 4 force both symmetries", c7_shared_trace_identity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("acceptance {} ({name}): PASS [{detail}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {} ({name}): FAIL [{why}]", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
