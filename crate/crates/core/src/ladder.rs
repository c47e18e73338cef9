//! Ladder systems and colorings that are finite-to-one on every ladder.
//!
//! The ladder of a limit ordinal is its canonical fundamental sequence. A
//! [`Coloring`] assigns a natural number to every ordinal below a target
//! `gamma` by structural recursion on stages: a successor stage pairs the
//! previous stage with a ladder index, a `delta + w` stage reuses the stage
//! at `delta + 1`, and any other limit stage routes each point through the
//! club of earlier limits given by [`club_of`]. Every coloring carries
//! certificates: explicit per-ladder fiber bounds, recorded during the same
//! recursion, that [`Coloring::fiber_report`] checks against actual counts.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::csequence::{fund_seq, min_above_index};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Default ceiling on distinct stages a single coloring may touch.
pub const DEFAULT_STAGE_LIMIT: usize = 100_000;

/// `S_alpha[i]`: the i-th element of the ladder of the limit `alpha`.
pub fn ladder(alpha: &Ordinal, i: u64) -> Result<Ordinal> {
    fund_seq(alpha, i)
}

/// The position of `xi` on the ladder of `alpha`; points off the ladder
/// are sent to 0.
pub fn enum_index(alpha: &Ordinal, xi: &Ordinal) -> Result<u64> {
    if !alpha.is_limit() {
        return Err(Error::pre(format!("enum-index needs a limit, got {alpha}")));
    }
    if xi >= alpha {
        return Err(Error::pre(format!(
            "enum-index needs xi < alpha, got {xi} >= {alpha}"
        )));
    }
    let (i, v) = min_above_index(alpha, xi)?;
    Ok(if v == *xi { i } else { 0 })
}

/// Cantor pairing `(a + b)(a + b + 1)/2 + b`.
pub fn pair(a: u64, b: u64) -> Result<u64> {
    let s = a
        .checked_add(b)
        .ok_or_else(|| Error::Overflow(format!("pair({a}, {b}) exceeds 64 bits")))?;
    let t = u128::from(s) * (u128::from(s) + 1) / 2 + u128::from(b);
    u64::try_from(t).map_err(|_| Error::Overflow(format!("pair({a}, {b}) exceeds 64 bits")))
}

/// Inverse of [`pair`].
pub fn unpair(n: u64) -> (u64, u64) {
    let n = u128::from(n);
    let mut w = (((8.0 * n as f64 + 1.0).sqrt() - 1.0) / 2.0) as u128;
    // float sqrt may land a diagonal off in either direction
    while (w + 1) * (w + 2) / 2 <= n {
        w += 1;
    }
    while w * (w + 1) / 2 > n {
        w -= 1;
    }
    let b = n - w * (w + 1) / 2;
    ((w - b) as u64, b as u64)
}

/// The canonical club of limit ordinals below a target, indexable by
/// position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Club {
    gamma: Ordinal,
}

impl Club {
    pub fn gamma(&self) -> &Ordinal {
        &self.gamma
    }

    /// `E[i]`, strictly increasing and cofinal in the target.
    pub fn get(&self, i: u64) -> Result<Ordinal> {
        fund_seq(&self.gamma, i)
    }
}

/// The fundamental sequence of `gamma` as a club, for limits not of the
/// form `delta + w`. For those shapes every cofinal subset meets the
/// successor tail, so no club of limits exists below them.
pub fn club_of(gamma: &Ordinal) -> Result<Club> {
    if !gamma.is_limit() {
        return Err(Error::pre(format!("club-of needs a limit, got {gamma}")));
    }
    let (_, e, _) = gamma.split_last_term().expect("limit is nonzero");
    if *e == Ordinal::one() {
        return Err(Error::pre(format!(
            "club-of rejects targets of the form delta + w, got {gamma}"
        )));
    }
    Ok(Club {
        gamma: gamma.clone(),
    })
}

/// Level-indexed uniformization over the ladders of a club's first `depth`
/// elements.
#[derive(Debug, Clone)]
pub struct Uniformizer {
    club: Club,
    depth: u64,
}

/// Builds the function `F'` over the union of the ladders of `E[0..depth)`:
/// the least level whose ladder holds the point, paired with the index
/// there. Points outside the union evaluate to 0.
pub fn uniformize(club: &Club, depth: u64) -> Uniformizer {
    Uniformizer {
        club: club.clone(),
        depth,
    }
}

impl Uniformizer {
    pub fn club(&self) -> &Club {
        &self.club
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    pub fn evaluate(&self, xi: &Ordinal) -> Result<u64> {
        for k in 0..self.depth {
            let ek = self.club.get(k)?;
            if ek <= *xi {
                continue;
            }
            let (i, v) = min_above_index(&ek, xi)?;
            if v == *xi {
                return pair(k, i);
            }
        }
        Ok(0)
    }
}

/// Fiber counts of a coloring over a ladder prefix, next to the certified
/// bound they must respect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FiberReport {
    pub alpha: Ordinal,
    pub prefix: u64,
    pub bound: u64,
    pub max_multiplicity: u64,
    pub histogram: BTreeMap<u64, u64>,
}

/// A coloring of the ordinals below `gamma`, finite-to-one on every ladder.
///
/// Stages are classified on demand; the memo records which stages a
/// computation has touched and trips a resource guard past the configured
/// ceiling. Lookups never change observable values.
#[derive(Debug)]
pub struct Coloring {
    gamma: Ordinal,
    stage_limit: usize,
    stages: Mutex<BTreeSet<Ordinal>>,
}

/// Builds the stage-`gamma` coloring with the default stage ceiling.
pub fn build_coloring(gamma: &Ordinal) -> Result<Coloring> {
    build_coloring_with_limit(gamma, DEFAULT_STAGE_LIMIT)
}

pub fn build_coloring_with_limit(gamma: &Ordinal, stage_limit: usize) -> Result<Coloring> {
    if gamma.is_zero() {
        return Err(Error::pre("build-coloring needs gamma > 0".to_string()));
    }
    Ok(Coloring {
        gamma: gamma.clone(),
        stage_limit,
        stages: Mutex::new(BTreeSet::new()),
    })
}

impl Coloring {
    pub fn gamma(&self) -> &Ordinal {
        &self.gamma
    }

    /// The color of `xi`.
    pub fn evaluate(&self, xi: &Ordinal) -> Result<u64> {
        if *xi >= self.gamma {
            return Err(Error::pre(format!(
                "evaluate needs xi < gamma, got {xi} >= {}",
                self.gamma
            )));
        }
        self.eval_stage(&self.gamma, xi)
    }

    /// The certified fiber bound for the ladder of the limit `alpha`.
    pub fn certificate(&self, alpha: &Ordinal) -> Result<u64> {
        if !alpha.is_limit() {
            return Err(Error::pre(format!(
                "certificate needs a limit, got {alpha}"
            )));
        }
        if *alpha >= self.gamma {
            return Err(Error::pre(format!(
                "certificate needs alpha < gamma, got {alpha} >= {}",
                self.gamma
            )));
        }
        self.cert_stage(&self.gamma, alpha)
    }

    /// Counts colors over `S_alpha[0..prefix)` and checks the certificate.
    pub fn fiber_report(&self, alpha: &Ordinal, prefix: u64) -> Result<FiberReport> {
        let bound = self.certificate(alpha)?;
        let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
        for i in 0..prefix {
            let xi = fund_seq(alpha, i)?;
            *histogram.entry(self.evaluate(&xi)?).or_insert(0) += 1;
        }
        let max_multiplicity = histogram.values().copied().max().unwrap_or(0);
        if max_multiplicity > bound {
            return Err(Error::CertificateViolation(format!(
                "fiber of size {max_multiplicity} on the ladder of {alpha} exceeds the certified bound {bound}"
            )));
        }
        Ok(FiberReport {
            alpha: alpha.clone(),
            prefix,
            bound,
            max_multiplicity,
            histogram,
        })
    }

    fn touch(&self, stage: &Ordinal) -> Result<()> {
        let mut seen = self.stages.lock().expect("stage memo poisoned");
        if seen.contains(stage) {
            return Ok(());
        }
        if seen.len() >= self.stage_limit {
            return Err(Error::resource(format!(
                "coloring touched more than {} stages",
                self.stage_limit
            )));
        }
        seen.insert(stage.clone());
        Ok(())
    }

    fn eval_stage(&self, stage: &Ordinal, xi: &Ordinal) -> Result<u64> {
        self.touch(stage)?;
        if *stage <= Ordinal::omega() {
            return Ok(xi.natural().expect("points below w are naturals"));
        }
        if let Some(beta) = stage.predecessor() {
            if *xi == beta {
                return Ok(0);
            }
            if beta.is_limit() {
                let below = self.eval_stage(&beta, xi)?;
                return pair(below, enum_index(&beta, xi)?);
            }
            return self.eval_stage(&beta, xi);
        }
        let (prefix, e, c) = stage.split_last_term().expect("limit is nonzero");
        if *e == Ordinal::one() {
            // stage = delta + w
            let next = prefix
                .add(&Ordinal::omega_pow_mul(e.clone(), c - 1))
                .successor();
            if *xi < next {
                return self.eval_stage(&next, xi);
            }
            return Ok(0);
        }
        // stage is a limit with its own club of limits below
        let (k, beta) = min_above_index(stage, &xi.successor())?;
        let below = self.eval_stage(&beta, xi)?;
        let (i, v) = min_above_index(&beta, xi)?;
        let level = if v == *xi { pair(k, i)? } else { 0 };
        pair(below, level)
    }

    fn cert_stage(&self, stage: &Ordinal, alpha: &Ordinal) -> Result<u64> {
        self.touch(stage)?;
        if let Some(beta) = stage.predecessor() {
            if *alpha == beta {
                return Ok(1);
            }
            return self.cert_stage(&beta, alpha);
        }
        let (prefix, e, c) = stage.split_last_term().expect("limit is nonzero");
        if *e == Ordinal::one() {
            let next = prefix
                .add(&Ordinal::omega_pow_mul(e.clone(), c - 1))
                .successor();
            return self.cert_stage(&next, alpha);
        }
        let (k, v) = min_above_index(stage, alpha)?;
        let eta = if k == 0 {
            Ordinal::zero()
        } else {
            fund_seq(stage, k - 1)?
        };
        // ladder elements below the last club element under alpha can land
        // anywhere; each contributes at most one to a fiber
        let stragglers = min_above_index(alpha, &eta)?.0;
        if v == *alpha {
            return Ok(1 + stragglers);
        }
        Ok(self.cert_stage(&v, alpha)? + stragglers)
    }
}
