//! Minimal walks and the quantities read off them.
//!
//! The walk from `beta` down to `alpha <= beta` repeatedly replaces the
//! current point by the least element of its C-sequence at or above
//! `alpha`; it reaches `alpha` in finitely many steps because each step
//! strictly decreases the current point while staying at or above `alpha`.
//! [`WalkTrace`] records the visited points, `rho2` is the step count, and
//! [`stabilizer`] gives the threshold below which all smaller starting
//! points inherit the walk's prefix. Two scanners, [`coherence_delta`] and
//! [`unbounded_witness`], measure walk behaviour empirically over probe
//! sets; they report, they never assert.

use serde::{Deserialize, Serialize};

use crate::csequence::{min_above, min_above_index};
use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, ProbeSet};

/// Default bound on walk length before the resource guard trips.
pub const DEFAULT_STEP_GUARD: u64 = 1_000_000;

/// A finished walk: `points` starts at `beta`, strictly decreases, and
/// ends at `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTrace {
    alpha: Ordinal,
    beta: Ordinal,
    points: Vec<Ordinal>,
}

impl WalkTrace {
    pub fn alpha(&self) -> &Ordinal {
        &self.alpha
    }

    pub fn beta(&self) -> &Ordinal {
        &self.beta
    }

    pub fn points(&self) -> &[Ordinal] {
        &self.points
    }

    /// Number of steps taken; one less than the number of points.
    pub fn rho2(&self) -> u64 {
        self.points.len() as u64 - 1
    }

    pub fn record(&self) -> TraceRecord {
        TraceRecord {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            points: self.points.clone(),
            rho2: self.rho2(),
        }
    }
}

/// Wire form of a walk, as exported by the CLI and the golden files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub alpha: Ordinal,
    pub beta: Ordinal,
    pub points: Vec<Ordinal>,
    pub rho2: u64,
}

/// Walks from `beta` down to `alpha` with the default step guard.
pub fn trace(alpha: &Ordinal, beta: &Ordinal) -> Result<WalkTrace> {
    trace_guarded(alpha, beta, DEFAULT_STEP_GUARD)
}

pub fn trace_guarded(alpha: &Ordinal, beta: &Ordinal, guard: u64) -> Result<WalkTrace> {
    if alpha > beta {
        return Err(Error::pre(format!(
            "trace needs alpha <= beta, got {alpha} > {beta}"
        )));
    }
    let mut points = vec![beta.clone()];
    let mut current = beta.clone();
    while current != *alpha {
        if points.len() as u64 > guard {
            return Err(Error::resource(format!("walk exceeded {guard} steps")));
        }
        current = min_above(&current, alpha)?;
        points.push(current.clone());
    }
    Ok(WalkTrace {
        alpha: alpha.clone(),
        beta: beta.clone(),
        points,
    })
}

/// Number of walk steps from `beta` down to `alpha`.
pub fn rho2(alpha: &Ordinal, beta: &Ordinal) -> Result<u64> {
    Ok(trace(alpha, beta)?.rho2())
}

pub fn rho2_guarded(alpha: &Ordinal, beta: &Ordinal, guard: u64) -> Result<u64> {
    Ok(trace_guarded(alpha, beta, guard)?.rho2())
}

/// The largest C-sequence element below `alpha` seen along the walk,
/// excluding the final step: with `points = trace(alpha, beta)` and
/// `n = rho2(alpha, beta)`, this is the maximum over `i < n - 1` of the
/// greatest element of `C_(points[i])` strictly below `alpha`, and zero
/// when every such set is empty.
///
/// Every `xi` with `stabilizer < xi < alpha` then walks through
/// `points[0], ..., points[n-1]` before dropping below `alpha`, so
/// `trace(xi, beta)` has that prefix and `rho2(xi, beta) >= n`.
pub fn stabilizer(alpha: &Ordinal, beta: &Ordinal) -> Result<Ordinal> {
    stabilizer_guarded(alpha, beta, DEFAULT_STEP_GUARD)
}

/// `stabilizer` with an explicit step budget for the underlying walk.
pub fn stabilizer_guarded(alpha: &Ordinal, beta: &Ordinal, guard: u64) -> Result<Ordinal> {
    if alpha >= beta {
        return Err(Error::pre(format!(
            "stabilizer needs alpha < beta, got {alpha} >= {beta}"
        )));
    }
    let walk = trace_guarded(alpha, beta, guard)?;
    let n = walk.points().len() - 1;
    let mut eta = Ordinal::zero();
    for point in &walk.points()[..n.saturating_sub(1)] {
        if let Some(below) = greatest_c_element_below(point, alpha)? {
            if below > eta {
                eta = below;
            }
        }
    }
    Ok(eta)
}

/// Greatest element of `C_point` strictly below `bound`, for
/// `bound < point`; `None` when the whole sequence starts at or above
/// `bound`.
fn greatest_c_element_below(point: &Ordinal, bound: &Ordinal) -> Result<Option<Ordinal>> {
    let (index, value) = min_above_index(point, bound)?;
    if index == 0 {
        return Ok(None);
    }
    debug_assert!(value >= *bound);
    let prev = crate::csequence::fund_seq(point, index - 1)?;
    Ok(Some(prev))
}

/// Result of a coherence scan: the largest observed `|rho2(xi, beta) -
/// rho2(xi, gamma)|` over a probe set, and the least probe attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub beta: Ordinal,
    pub gamma: Ordinal,
    #[serde(rename = "maxDelta")]
    pub max_delta: u64,
    pub argmax: Ordinal,
}

/// Scans `probes` and reports how far the two step counts drift apart.
/// Requires `beta < gamma` and a probe cap at most `beta` so both counts
/// are defined for every probe.
pub fn coherence_delta(beta: &Ordinal, gamma: &Ordinal, probes: &ProbeSet) -> Result<CoherenceReport> {
    if beta >= gamma {
        return Err(Error::pre(format!(
            "coherence-delta needs beta < gamma, got {beta} >= {gamma}"
        )));
    }
    if probes.cap() > beta {
        return Err(Error::pre(format!(
            "coherence-delta needs the probe cap at most beta, got {} > {beta}",
            probes.cap()
        )));
    }
    let mut max_delta = 0;
    let mut argmax = None;
    for xi in probes.iter() {
        let a = rho2(xi, beta)?;
        let b = rho2(xi, gamma)?;
        let delta = a.abs_diff(b);
        if argmax.is_none() || delta > max_delta {
            max_delta = delta;
            argmax = Some(xi.clone());
        }
    }
    let argmax = argmax.ok_or_else(|| Error::pre("coherence-delta needs a nonempty probe set"))?;
    Ok(CoherenceReport {
        beta: beta.clone(),
        gamma: gamma.clone(),
        max_delta,
        argmax,
    })
}

/// First pair `(alpha, beta)` in lexicographic scan order over
/// `lower x upper` with `alpha < beta` and `rho2(alpha, beta) > n`;
/// `None` when the scan is exhausted without a hit.
pub fn unbounded_witness(
    lower: &ProbeSet,
    upper: &ProbeSet,
    n: u64,
) -> Result<Option<(Ordinal, Ordinal)>> {
    for alpha in lower.iter() {
        for beta in upper.iter() {
            if alpha >= beta {
                continue;
            }
            if rho2(alpha, beta)? > n {
                return Ok(Some((alpha.clone(), beta.clone())));
            }
        }
    }
    Ok(None)
}
