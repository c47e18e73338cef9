//! Acceptance gate: one check per shipped guarantee, one printed line per
//! check. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; the test fails if any criterion fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use ordwalk_core::csequence::min_above;
use ordwalk_core::ladder::build_coloring;
use ordwalk_core::selftest::{self, Sampler};
use ordwalk_core::topology::{
    alpha1_merge, frechet_extract, gdelta_separate, member, Point,
};
use ordwalk_core::walks::{coherence_delta, rho2, stabilizer, trace, unbounded_witness};
use ordwalk_core::{naive, Ordinal, ProbeSet};

fn parse(s: &str) -> Ordinal {
    Ordinal::parse(s).unwrap()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn golden_selftest() -> Result<serde_json::Value, String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/selftest.json");
    let raw = std::fs::read_to_string(&path).map_err(err)?;
    serde_json::from_str(&raw).map_err(err)
}

/// Production and reference step counts agree on every probe pair.
fn oracle_equivalence() -> Result<String, String> {
    let start = Instant::now();
    let probe = ProbeSet::new(&parse("w^3"), 2).map_err(err)?;
    let mut pairs = 0u64;
    for alpha in probe.iter() {
        for beta in probe.iter() {
            if alpha > beta {
                continue;
            }
            let fast = rho2(alpha, beta).map_err(err)?;
            let slow = naive::rho2(alpha, beta).map_err(err)?;
            if fast != slow {
                return Err(format!("rho2({alpha}, {beta}): fast {fast}, naive {slow}"));
            }
            pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        return Err(format!("{pairs} pairs took {elapsed:.2?}, budget 10s"));
    }
    Ok(format!("{pairs} pairs agree in {elapsed:.2?}"))
}

/// Zero steps to itself, one step from the successor.
fn definitional_identities() -> Result<String, String> {
    let probe = ProbeSet::new(&parse("w^3"), 2).map_err(err)?;
    for alpha in probe.iter() {
        let same = rho2(alpha, alpha).map_err(err)?;
        if same != 0 {
            return Err(format!("rho2({alpha}, {alpha}) = {same}"));
        }
        let next = rho2(alpha, &alpha.successor()).map_err(err)?;
        if next != 1 {
            return Err(format!("rho2({alpha}, {alpha} + 1) = {next}"));
        }
    }
    Ok(format!("{} probes", probe.len()))
}

/// Traces descend strictly, span their endpoints, and recompute stepwise.
fn trace_structure() -> Result<String, String> {
    let probe = ProbeSet::new(&parse("w^3"), 2).map_err(err)?;
    let mut checked = 0u64;
    for alpha in probe.iter() {
        for beta in probe.iter() {
            if alpha > beta {
                continue;
            }
            let walk = trace(alpha, beta).map_err(err)?;
            let points = walk.points();
            if points.first() != Some(beta) || points.last() != Some(alpha) {
                return Err(format!("trace({alpha}, {beta}) endpoints wrong"));
            }
            if points.len() as u64 != walk.rho2() + 1 {
                return Err(format!("trace({alpha}, {beta}) length off"));
            }
            for i in 0..points.len() - 1 {
                if points[i + 1] >= points[i] {
                    return Err(format!("trace({alpha}, {beta}) fails to decrease"));
                }
                let step = min_above(&points[i], alpha).map_err(err)?;
                if step != points[i + 1] {
                    return Err(format!(
                        "trace({alpha}, {beta}) step {i} is {}, recomputed {step}",
                        points[i + 1]
                    ));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} traces"))
}

/// Probes strictly between the stabilizer and alpha keep the walk prefix.
fn stabilizer_soundness() -> Result<String, String> {
    let probe = ProbeSet::new(&parse("w^4"), 2).map_err(err)?;
    let members = probe.members();
    let mut sampler = Sampler::new(1);
    let mut sampled = 0;
    let mut probes_checked = 0u64;
    while sampled < 200 {
        let a = sampler.pick(members).clone();
        let b = sampler.pick(members).clone();
        let (alpha, beta) = if a < b { (a, b) } else { (b, a) };
        if alpha == beta {
            continue;
        }
        sampled += 1;
        let eta = stabilizer(&alpha, &beta).map_err(err)?;
        let base_walk = trace(&alpha, &beta).map_err(err)?;
        let n = base_walk.rho2() as usize;
        let base_count = base_walk.rho2();
        for xi in members {
            if *xi <= eta || *xi >= alpha {
                continue;
            }
            probes_checked += 1;
            let count = rho2(xi, &beta).map_err(err)?;
            if count < base_count {
                return Err(format!(
                    "rho2({xi}, {beta}) = {count} < rho2({alpha}, {beta}) = {base_count}"
                ));
            }
            let side_walk = trace(xi, &beta).map_err(err)?;
            if side_walk.points()[..n] != base_walk.points()[..n] {
                return Err(format!(
                    "trace({xi}, {beta}) does not extend the prefix of trace({alpha}, {beta})"
                ));
            }
        }
    }
    Ok(format!("200 pairs, {probes_checked} probes between"))
}

/// Every separated point is excluded at its certificate level; the apex
/// stays inside every level.
fn separation_exactness() -> Result<String, String> {
    let probe = ProbeSet::new(&parse("w^3"), 2).map_err(err)?;
    let members = probe.members().to_vec();
    let mut sampler = Sampler::new(1);
    for _ in 0..100 {
        let size = sampler.between(1, 8) as usize;
        let set: BTreeSet<Ordinal> = sampler.subset(&members, size).into_iter().collect();
        let separation = gdelta_separate(&set).map_err(err)?;
        for xi in &set {
            let level = separation.certificate[xi];
            let point = Point::Ord(xi.clone());
            if member(&point, &separation.open(level)).map_err(err)? {
                return Err(format!(
                    "{xi} still inside level {level} at {}",
                    separation.beta
                ));
            }
        }
        for n in 0..=32 {
            if !member(&Point::Apex, &separation.open(n)).map_err(err)? {
                return Err(format!("apex left level {n} at {}", separation.beta));
            }
        }
    }
    Ok("100 seeded sets".to_string())
}

/// Extraction output clears its index and never repeats.
fn extraction_soundness() -> Result<String, String> {
    let probe = ProbeSet::new(&parse("w^3"), 2).map_err(err)?;
    let members = probe.members().to_vec();
    let limits: Vec<Ordinal> = members
        .iter()
        .filter(|o| o.is_limit())
        .cloned()
        .chain([parse("w^3")])
        .collect();
    let mut sampler = Sampler::new(1);
    for _ in 0..50 {
        let size = sampler.between(4, 10) as usize;
        let pool: BTreeSet<Ordinal> = sampler.subset(&members, size).into_iter().collect();
        let anchor = sampler.pick(&limits).clone();
        let max_index = sampler.between(3, 6);
        let picked = frechet_extract(&pool, &anchor, max_index).map_err(err)?;
        let distinct: BTreeSet<_> = picked.iter().collect();
        if distinct.len() != picked.len() {
            return Err(format!("repeated pick toward {anchor}"));
        }
        for (index, xi) in picked.iter().enumerate() {
            let count = rho2(xi, &anchor).map_err(err)?;
            if count < index as u64 {
                return Err(format!(
                    "pick {index} toward {anchor} is {xi} with rho2 {count}"
                ));
            }
        }
    }
    Ok("50 seeded instances".to_string())
}

/// Merged output obeys both dominance inequalities.
fn merge_dominance() -> Result<String, String> {
    let probe = ProbeSet::new(&parse("w^3"), 2).map_err(err)?;
    let members = probe.members().to_vec();
    let limits: Vec<Ordinal> = members
        .iter()
        .filter(|o| o.is_limit())
        .cloned()
        .chain([parse("w^3")])
        .collect();
    let mut sampler = Sampler::new(1);
    for _ in 0..50 {
        let anchor = sampler.pick(&limits).clone();
        let family_count = sampler.between(1, 3) as usize;
        let mut families = Vec::new();
        for _ in 0..family_count {
            let size = sampler.between(0, 5) as usize;
            let family: BTreeSet<Ordinal> = sampler
                .subset(&members, size)
                .into_iter()
                .filter(|xi| *xi < anchor)
                .collect();
            families.push(family);
        }
        let merged = alpha1_merge(&families, &anchor).map_err(err)?;
        for xi in &merged {
            if !families.iter().any(|family| family.contains(xi)) {
                return Err(format!("{xi} appeared from nowhere toward {anchor}"));
            }
        }
        for (n, family) in families.iter().enumerate() {
            for xi in family {
                let keeps = rho2(xi, &anchor).map_err(err)? > n as u64;
                if keeps && !merged.contains(xi) {
                    return Err(format!("{xi} from family {n} lost toward {anchor}"));
                }
            }
        }
    }
    Ok("50 seeded instances".to_string())
}

/// Fiber sizes stay within the recorded certificates at growing prefixes.
fn coloring_certificates() -> Result<String, String> {
    let start = Instant::now();
    let mut fibers = 0u64;
    for gamma in ["w + 1", "w*2", "w^2", "w^3"] {
        let gamma = parse(gamma);
        let coloring = build_coloring(&gamma).map_err(err)?;
        let probe = ProbeSet::new(&gamma, 2).map_err(err)?;
        for alpha in probe.iter().filter(|o| o.is_limit()) {
            for prefix in [64, 128, 256] {
                // fiber_report enforces the bound internally and errors on
                // any violation.
                let report = coloring.fiber_report(alpha, prefix).map_err(err)?;
                if report.max_multiplicity > report.bound {
                    return Err(format!(
                        "fiber {} at {alpha} prefix {prefix} exceeds bound {}",
                        report.max_multiplicity, report.bound
                    ));
                }
                fibers += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        return Err(format!("{fibers} fiber reports took {elapsed:.2?}, budget 30s"));
    }
    Ok(format!("{fibers} fiber reports in {elapsed:.2?}"))
}

/// The witness scan produces the golden pair and clears the threshold.
fn witness_productivity() -> Result<String, String> {
    let probe = ProbeSet::new(&parse("w^5"), 3).map_err(err)?;
    let Some((alpha, beta)) = unbounded_witness(&probe, &probe, 3).map_err(err)? else {
        return Err("no witness below w^5 at tier 3".to_string());
    };
    let count = rho2(&alpha, &beta).map_err(err)?;
    if count <= 3 {
        return Err(format!("witness ({alpha}, {beta}) has rho2 {count}"));
    }
    let golden = golden_selftest()?;
    let expected = &golden["witness"];
    if expected["alpha"] != alpha.to_string().as_str()
        || expected["beta"] != beta.to_string().as_str()
    {
        return Err(format!(
            "witness ({alpha}, {beta}) drifted from golden ({}, {})",
            expected["alpha"], expected["beta"]
        ));
    }
    Ok(format!("({alpha}, {beta}) with rho2 {count}"))
}

/// Tier-3 and tier-2 drift summaries agree on most fixed pairs, and every
/// summary matches the committed golden table.
fn coherence_stability() -> Result<String, String> {
    let golden = golden_selftest()?;
    let table = golden["coherence"].as_array().ok_or("golden table missing")?;
    let pairs = selftest::coherence_pairs();
    if table.len() != pairs.len() {
        return Err(format!(
            "golden table has {} rows, expected {}",
            table.len(),
            pairs.len()
        ));
    }
    let mut agreements = 0;
    for ((beta, gamma), row) in pairs.iter().zip(table) {
        let mut deltas = [0u64; 2];
        for (slot, (tier, key)) in [(2u32, "tier2"), (3, "tier3")].iter().enumerate() {
            let probes = ProbeSet::new(beta, *tier).map_err(err)?;
            let report = coherence_delta(beta, gamma, &probes).map_err(err)?;
            let expected = &row[*key];
            if expected["maxDelta"] != report.max_delta
                || expected["argmax"] != report.argmax.to_string().as_str()
            {
                return Err(format!(
                    "({beta}, {gamma}) tier {tier} drifted from golden: got {} at {}",
                    report.max_delta, report.argmax
                ));
            }
            deltas[slot] = report.max_delta;
        }
        if deltas[0] == deltas[1] {
            agreements += 1;
        }
    }
    if agreements < 15 {
        return Err(format!("only {agreements}/20 pairs stable across tiers"));
    }
    Ok(format!("{agreements}/20 pairs stable, golden matched"))
}

/// Two full generation runs emit identical bytes.
fn selftest_determinism() -> Result<String, String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ord"))
            .args(["selftest", "--generate"])
            .output()
            .map_err(err)
    };
    let first = run()?;
    let second = run()?;
    if first.status.code() != Some(0) || second.status.code() != Some(0) {
        return Err("generation run failed".to_string());
    }
    if first.stdout.is_empty() {
        return Err("generation produced no output".to_string());
    }
    if first.stdout != second.stdout {
        return Err("generation runs differ".to_string());
    }
    Ok(format!("{} identical bytes", first.stdout.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Result<String, String>); 11] = [
        ("01 oracle equivalence", oracle_equivalence),
        ("02 definitional identities", definitional_identities),
        ("03 trace structure", trace_structure),
        ("04 stabilizer soundness", stabilizer_soundness),
        ("05 separation exactness", separation_exactness),
        ("06 extraction soundness", extraction_soundness),
        ("07 merge dominance", merge_dominance),
        ("08 coloring certificates", coloring_certificates),
        ("09 witness productivity", witness_productivity),
        ("10 coherence stability", coherence_stability),
        ("11 selftest determinism", selftest_determinism),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {name}: {reason}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
