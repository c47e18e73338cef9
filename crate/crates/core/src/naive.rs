//! Reference walk evaluator.
//!
//! Deliberately slow and literal: the step function scans the fundamental
//! sequence element by element, and the walk applies the definition one
//! step at a time. This module must stay independent of the closed-form
//! step in [`crate::csequence::min_above`] and of [`crate::walks::trace`];
//! tests and the golden self-check compare the two paths.

use crate::csequence::fund_seq;
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::walks::DEFAULT_STEP_GUARD;

/// Least element of `C_beta` at or above `alpha`, by linear scan.
pub fn min_above(beta: &Ordinal, alpha: &Ordinal, guard: u64) -> Result<Ordinal> {
    if alpha >= beta {
        return Err(Error::pre(format!(
            "min-above needs alpha < beta, got {alpha} >= {beta}"
        )));
    }
    if let Some(pred) = beta.predecessor() {
        return Ok(pred);
    }
    for i in 0..guard {
        let v = fund_seq(beta, i)?;
        if v >= *alpha {
            return Ok(v);
        }
    }
    Err(Error::resource(format!(
        "naive min-above scanned {guard} elements of C_({beta})"
    )))
}

/// The walk from `beta` down to `alpha` as the literal definitional
/// recursion: keep replacing `beta` by `min(C_beta \ alpha)`.
pub fn trace(alpha: &Ordinal, beta: &Ordinal, guard: u64) -> Result<Vec<Ordinal>> {
    if alpha > beta {
        return Err(Error::pre(format!(
            "trace needs alpha <= beta, got {alpha} > {beta}"
        )));
    }
    let mut points = vec![beta.clone()];
    let mut current = beta.clone();
    while current != *alpha {
        if points.len() as u64 > guard {
            return Err(Error::resource(format!(
                "naive walk exceeded {guard} steps"
            )));
        }
        current = min_above(&current, alpha, guard)?;
        points.push(current.clone());
    }
    Ok(points)
}

pub fn rho2(alpha: &Ordinal, beta: &Ordinal) -> Result<u64> {
    Ok(trace(alpha, beta, DEFAULT_STEP_GUARD)?.len() as u64 - 1)
}
