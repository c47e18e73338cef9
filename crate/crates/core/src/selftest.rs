//! Golden self-test corpus: generation from the reference evaluators,
//! verification against the production paths.
//!
//! [`generate`] computes every walk-derived value in the document with the
//! separately coded [`naive`](crate::naive) evaluator, and the topology
//! answers with small standalone re-statements of their defining rules, so
//! the committed corpus never depends on the code it is meant to check.
//! The one exception is the fiber section: coloring fibers have no second
//! evaluator, so those entries are a regression baseline taken from the
//! production recursion. [`verify`] recomputes the whole document with the
//! production modules and reports every field that drifted.
//!
//! Sampling is deterministic: a counter-mode stream cipher seeded from the
//! document seed, reduced by plain modulo so the draws stay stable across
//! dependency upgrades.

use std::collections::{BTreeMap, BTreeSet};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::{self, FiberReport};
use crate::naive;
use crate::ordinal::{Ordinal, ProbeSet};
use crate::topology;
use crate::walks::{self, TraceRecord};

pub const DEFAULT_SEED: u64 = 1;

/// Probe cap for the witness scan.
pub const WITNESS_CAP: &str = "w^5";
pub const WITNESS_TIER: u32 = 3;
pub const WITNESS_THRESHOLD: u64 = 3;

/// Cap and tier of the exhaustive step-count grid.
pub const GRID_CAP: &str = "w^3";
pub const GRID_TIER: u32 = 2;

/// Deterministic draws for the seeded sections, shared with the test
/// suites so their corpora match the documented ones.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform-enough index below `n`; `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index needs a positive range");
        (self.rng.next_u64() % n as u64) as usize
    }

    /// A value in `lo..=hi`.
    pub fn between(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.rng.next_u64() % (hi - lo + 1)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.index(items.len())]
    }

    /// A sorted subset of distinct members, capped by the pool size.
    pub fn subset(&mut self, items: &[Ordinal], size: usize) -> Vec<Ordinal> {
        let size = size.min(items.len());
        let mut chosen = BTreeSet::new();
        while chosen.len() < size {
            chosen.insert(items[self.index(items.len())].clone());
        }
        chosen.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rho2Grid {
    pub cap: Ordinal,
    pub tier: u32,
    /// `(alpha, beta, rho2)` for every probe pair `alpha <= beta`.
    pub pairs: Vec<(Ordinal, Ordinal, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeltaSummary {
    pub max_delta: u64,
    pub argmax: Ordinal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceCase {
    pub beta: Ordinal,
    pub gamma: Ordinal,
    pub tier2: DeltaSummary,
    pub tier3: DeltaSummary,
    /// Whether widening the probe tier moved the maximum at all.
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCase {
    pub cap: Ordinal,
    pub tier: u32,
    pub threshold: u64,
    pub alpha: Ordinal,
    pub beta: Ordinal,
    pub rho2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCase {
    pub set: Vec<Ordinal>,
    pub beta: Ordinal,
    pub certificate: BTreeMap<Ordinal, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtractionCase {
    pub pool: Vec<Ordinal>,
    pub anchor: Ordinal,
    pub max_index: u64,
    pub result: Vec<Ordinal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeCase {
    pub families: Vec<Vec<Ordinal>>,
    pub anchor: Ordinal,
    pub result: Vec<Ordinal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCase {
    pub gamma: Ordinal,
    pub report: FiberReport,
}

/// The whole self-test corpus. Inputs are recorded next to outputs, so
/// verification replays the exact instances without touching the sampler.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SelftestDocument {
    pub seed: u64,
    pub traces: Vec<TraceRecord>,
    pub rho2_grid: Rho2Grid,
    pub coherence: Vec<CoherenceCase>,
    pub witness: WitnessCase,
    pub separation: Vec<SeparationCase>,
    pub extraction: Vec<ExtractionCase>,
    pub merge: Vec<MergeCase>,
    pub fibers: Vec<FiberCase>,
}

/// Fixed walk endpoints for the trace section.
pub fn trace_pairs() -> Vec<(Ordinal, Ordinal)> {
    [
        ("0", "w"),
        ("0", "w^2"),
        ("2", "w*2"),
        ("w", "w^(w)"),
        ("w^2 + 3", "w^3"),
        ("w*2 + 1", "w^2*2"),
        ("w^2", "w^2"),
        ("3", "w^3 + w^2*2"),
        ("w + 1", "w^2 + w*3"),
        ("0", "w^(w^2)"),
    ]
    .iter()
    .map(|(a, b)| (parse(a), parse(b)))
    .collect()
}

/// Fixed endpoint pairs for the coherence stability table.
pub fn coherence_pairs() -> Vec<(Ordinal, Ordinal)> {
    [
        ("w", "w*2"),
        ("w", "w*4"),
        ("w", "w^2"),
        ("w", "w^2 + w"),
        ("w + 3", "w*2 + 3"),
        ("w*2", "w*3"),
        ("w*2", "w^2"),
        ("w*2", "w^2*2"),
        ("w*2 + 1", "w^2 + 1"),
        ("w*3", "w^2 + w*2"),
        ("w^2", "w^2 + w"),
        ("w^2", "w^2*2"),
        ("w^2", "w^2*2 + w*2 + 1"),
        ("w^2", "w^2*3"),
        ("w^2 + 1", "w^2*3"),
        ("w^2 + w", "w^2 + w*2"),
        ("w^2 + w", "w^2*2"),
        ("w^2 + w*2", "w^2*2 + w"),
        ("w^2*2", "w^2*2 + w"),
        ("w^2*2 + w", "w^2*3 + w*3"),
    ]
    .iter()
    .map(|(b, g)| (parse(b), parse(g)))
    .collect()
}

/// Coloring targets and ladder prefixes for the fiber baseline.
pub fn fiber_instances() -> Vec<(Ordinal, Ordinal, u64)> {
    [
        ("w + 1", "w", 64),
        ("w*2", "w", 64),
        ("w^2", "w", 64),
        ("w^2", "w*2", 64),
        ("w^3", "w*3", 64),
        ("w^3", "w^2", 64),
        ("w^3", "w^2 + w", 64),
        ("w^3", "w^2*2", 48),
    ]
    .iter()
    .map(|(g, a, p)| (parse(g), parse(a), *p))
    .collect()
}

fn parse(lit: &str) -> Ordinal {
    Ordinal::parse(lit).expect("fixed literal parses")
}

/// Builds the corpus from the reference evaluators.
pub fn generate(seed: u64) -> Result<SelftestDocument> {
    let mut sampler = Sampler::new(seed);
    let grid_probe = ProbeSet::new(&parse(GRID_CAP), GRID_TIER)?;
    let members: Vec<Ordinal> = grid_probe.members().to_vec();
    let limits: Vec<Ordinal> = members
        .iter()
        .filter(|o| o.is_limit())
        .cloned()
        .chain([parse(GRID_CAP)])
        .collect();

    let mut traces = Vec::new();
    for (alpha, beta) in trace_pairs() {
        let points = naive::trace(&alpha, &beta, walks::DEFAULT_STEP_GUARD)?;
        let rho2 = points.len() as u64 - 1;
        traces.push(TraceRecord {
            alpha,
            beta,
            points,
            rho2,
        });
    }

    let mut pairs = Vec::new();
    for (i, alpha) in members.iter().enumerate() {
        for beta in &members[i..] {
            pairs.push((alpha.clone(), beta.clone(), naive::rho2(alpha, beta)?));
        }
    }
    let rho2_grid = Rho2Grid {
        cap: grid_probe.cap().clone(),
        tier: grid_probe.tier(),
        pairs,
    };

    let mut coherence = Vec::new();
    for (beta, gamma) in coherence_pairs() {
        let tier2 = oracle_coherence(&beta, &gamma, 2)?;
        let tier3 = oracle_coherence(&beta, &gamma, 3)?;
        let agree = tier2.max_delta == tier3.max_delta;
        coherence.push(CoherenceCase {
            beta,
            gamma,
            tier2,
            tier3,
            agree,
        });
    }

    let witness = oracle_witness()?;

    let mut separation = Vec::new();
    for _ in 0..16 {
        let size = sampler.between(1, 6) as usize;
        let set = sampler.subset(&members, size);
        let (beta, certificate) = oracle_separation(&set)?;
        separation.push(SeparationCase {
            set,
            beta,
            certificate,
        });
    }

    let mut extraction = Vec::new();
    for _ in 0..12 {
        let size = sampler.between(4, 10) as usize;
        let pool = sampler.subset(&members, size);
        let anchor = sampler.pick(&limits).clone();
        let max_index = sampler.between(3, 6);
        let result = oracle_extraction(&pool, &anchor, max_index)?;
        extraction.push(ExtractionCase {
            pool,
            anchor,
            max_index,
            result,
        });
    }

    let mut merge = Vec::new();
    for _ in 0..12 {
        let anchor = sampler.pick(&limits).clone();
        let below: Vec<Ordinal> = members.iter().filter(|m| *m < &anchor).cloned().collect();
        let count = sampler.between(1, 3) as usize;
        let mut families = Vec::new();
        for _ in 0..count {
            let size = sampler.between(0, 5) as usize;
            families.push(sampler.subset(&below, size));
        }
        let result = oracle_merge(&families, &anchor)?;
        merge.push(MergeCase {
            families,
            anchor,
            result,
        });
    }

    let mut fibers = Vec::new();
    for (gamma, alpha, prefix) in fiber_instances() {
        let coloring = ladder::build_coloring(&gamma)?;
        let report = coloring.fiber_report(&alpha, prefix)?;
        fibers.push(FiberCase { gamma, report });
    }

    Ok(SelftestDocument {
        seed,
        traces,
        rho2_grid,
        coherence,
        witness,
        separation,
        extraction,
        merge,
        fibers,
    })
}

/// Recomputes the document with the production modules; returns one line
/// per drifted field, empty when everything matches.
pub fn verify(doc: &SelftestDocument) -> Result<Vec<String>> {
    let mut drift = Vec::new();

    for expected in &doc.traces {
        let got = walks::trace(&expected.alpha, &expected.beta)?.record();
        if got != *expected {
            drift.push(format!(
                "trace({}, {}) diverged from the recorded walk",
                expected.alpha, expected.beta
            ));
        }
    }

    let probe = ProbeSet::new(&doc.rho2_grid.cap, doc.rho2_grid.tier)?;
    let members = probe.members();
    let mut expected_pairs = doc.rho2_grid.pairs.iter();
    for (i, alpha) in members.iter().enumerate() {
        for beta in &members[i..] {
            match expected_pairs.next() {
                Some((ea, eb, erho)) => {
                    if ea != alpha || eb != beta {
                        drift.push(format!(
                            "grid order: expected pair ({ea}, {eb}), enumerated ({alpha}, {beta})"
                        ));
                    } else if walks::rho2(alpha, beta)? != *erho {
                        drift.push(format!("rho2({alpha}, {beta}) != {erho}"));
                    }
                }
                None => {
                    drift.push("grid is shorter than the probe enumeration".to_string());
                    break;
                }
            }
        }
    }
    if expected_pairs.next().is_some() {
        drift.push("grid is longer than the probe enumeration".to_string());
    }

    for case in &doc.coherence {
        for (tier, expected) in [(2, &case.tier2), (3, &case.tier3)] {
            let probes = ProbeSet::new(&case.beta, tier)?;
            let report = walks::coherence_delta(&case.beta, &case.gamma, &probes)?;
            if report.max_delta != expected.max_delta || report.argmax != expected.argmax {
                drift.push(format!(
                    "coherence({}, {}) at tier {tier}: got {} at {}, recorded {} at {}",
                    case.beta,
                    case.gamma,
                    report.max_delta,
                    report.argmax,
                    expected.max_delta,
                    expected.argmax
                ));
            }
        }
        if case.agree != (case.tier2.max_delta == case.tier3.max_delta) {
            drift.push(format!(
                "coherence({}, {}): agree flag is inconsistent",
                case.beta, case.gamma
            ));
        }
    }

    let w = &doc.witness;
    let lower = ProbeSet::new(&w.cap, w.tier)?;
    match walks::unbounded_witness(&lower, &lower, w.threshold)? {
        Some((alpha, beta)) => {
            if alpha != w.alpha || beta != w.beta {
                drift.push(format!(
                    "witness: got ({alpha}, {beta}), recorded ({}, {})",
                    w.alpha, w.beta
                ));
            } else if walks::rho2(&alpha, &beta)? != w.rho2 {
                drift.push(format!("witness rho2({alpha}, {beta}) != {}", w.rho2));
            }
        }
        None => drift.push("witness scan found nothing".to_string()),
    }

    for case in &doc.separation {
        let set: BTreeSet<Ordinal> = case.set.iter().cloned().collect();
        let separation = topology::gdelta_separate(&set)?;
        if separation.beta != case.beta || separation.certificate != case.certificate {
            drift.push(format!(
                "separation of {{{}}} diverged",
                render_list(&case.set)
            ));
        }
    }

    for case in &doc.extraction {
        let pool: BTreeSet<Ordinal> = case.pool.iter().cloned().collect();
        let got = topology::frechet_extract(&pool, &case.anchor, case.max_index)?;
        if got != case.result {
            drift.push(format!(
                "extraction from {{{}}} toward {} diverged",
                render_list(&case.pool),
                case.anchor
            ));
        }
    }

    for case in &doc.merge {
        let families: Vec<BTreeSet<Ordinal>> = case
            .families
            .iter()
            .map(|f| f.iter().cloned().collect())
            .collect();
        let got = topology::alpha1_merge(&families, &case.anchor)?;
        let expected: BTreeSet<Ordinal> = case.result.iter().cloned().collect();
        if got != expected {
            drift.push(format!("merge toward {} diverged", case.anchor));
        }
    }

    for case in &doc.fibers {
        let coloring = ladder::build_coloring(&case.gamma)?;
        let report = coloring.fiber_report(&case.report.alpha, case.report.prefix)?;
        if report != case.report {
            drift.push(format!(
                "fiber report for {} on the ladder of {} diverged",
                case.gamma, case.report.alpha
            ));
        }
    }

    Ok(drift)
}

/// Canonical rendering: pretty JSON plus a trailing newline.
pub fn to_json(doc: &SelftestDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("document serializes");
    out.push('\n');
    out
}

pub fn from_json(input: &str) -> Result<SelftestDocument> {
    serde_json::from_str(input).map_err(|e| Error::Syntax {
        pos: 0,
        msg: format!("self-test document: {e}"),
    })
}

fn render_list(items: &[Ordinal]) -> String {
    items
        .iter()
        .map(Ordinal::format)
        .collect::<Vec<_>>()
        .join(", ")
}

fn oracle_coherence(beta: &Ordinal, gamma: &Ordinal, tier: u32) -> Result<DeltaSummary> {
    let probes = ProbeSet::new(beta, tier)?;
    let mut best: Option<(u64, Ordinal)> = None;
    for xi in probes.iter() {
        let delta = naive::rho2(xi, beta)?.abs_diff(naive::rho2(xi, gamma)?);
        if best.as_ref().is_none_or(|(d, _)| delta > *d) {
            best = Some((delta, xi.clone()));
        }
    }
    let (max_delta, argmax) = best.expect("probe sets are never empty");
    Ok(DeltaSummary { max_delta, argmax })
}

fn oracle_witness() -> Result<WitnessCase> {
    let cap = parse(WITNESS_CAP);
    let probe = ProbeSet::new(&cap, WITNESS_TIER)?;
    for alpha in probe.iter() {
        for beta in probe.iter() {
            if alpha >= beta {
                continue;
            }
            let rho2 = naive::rho2(alpha, beta)?;
            if rho2 > WITNESS_THRESHOLD {
                return Ok(WitnessCase {
                    cap,
                    tier: WITNESS_TIER,
                    threshold: WITNESS_THRESHOLD,
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    rho2,
                });
            }
        }
    }
    Err(Error::pre(
        "the witness scan parameters no longer produce a hit",
    ))
}

fn oracle_separation(set: &[Ordinal]) -> Result<(Ordinal, BTreeMap<Ordinal, u64>)> {
    let max = set.last().expect("separation sets are nonempty");
    let beta = oracle_least_limit_above(max);
    let mut certificate = BTreeMap::new();
    for xi in set {
        certificate.insert(xi.clone(), naive::rho2(xi, &beta)?);
    }
    Ok((beta, certificate))
}

fn oracle_least_limit_above(o: &Ordinal) -> Ordinal {
    let mut limit_part = o.clone();
    if let Some((prefix, e, _)) = o.split_last_term() {
        if e.is_zero() {
            limit_part = prefix;
        }
    }
    limit_part.add(&Ordinal::omega())
}

fn oracle_extraction(pool: &[Ordinal], anchor: &Ordinal, max_index: u64) -> Result<Vec<Ordinal>> {
    let mut picked: Vec<Ordinal> = Vec::new();
    for n in 0..=max_index {
        let mut chosen = None;
        for xi in pool {
            if picked.contains(xi) || xi >= anchor {
                continue;
            }
            if naive::rho2(xi, anchor)? >= n {
                chosen = Some(xi.clone());
                break;
            }
        }
        match chosen {
            Some(xi) => picked.push(xi),
            None => break,
        }
    }
    Ok(picked)
}

fn oracle_merge(families: &[Vec<Ordinal>], anchor: &Ordinal) -> Result<Vec<Ordinal>> {
    let mut merged = BTreeSet::new();
    for (n, family) in families.iter().enumerate() {
        for xi in family {
            if naive::rho2(xi, anchor)? > n as u64 {
                merged.insert(xi.clone());
            }
        }
    }
    Ok(merged.into_iter().collect())
}
