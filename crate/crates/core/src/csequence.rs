//! The canonical C-sequence assignment and its step function.
//!
//! Every ordinal `a > 0` gets a set `C_a` of smaller ordinals: a successor
//! `b + 1` gets the singleton `{b}`, and a limit gets the strictly
//! increasing fundamental sequence defined by [`fund_seq`], whose supremum
//! is the limit itself. Nothing here assumes any coherence between the
//! sets of different ordinals; the walk layer only ever asks for the least
//! element of one `C_a` at or above a target, which [`min_above`] answers
//! in closed form per normal-form branch.

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Default guard on enumerated C-sequence prefixes.
pub const DEFAULT_MEMBER_GUARD: u64 = 1_000_000;

/// The `i`-th element of the canonical fundamental sequence of a limit.
///
/// Writing the limit as `m + w^e * c` (final normal-form term) and
/// `v = m + w^e * (c - 1)`:
///
/// * `e = e' + 1`: the sequence is `v + w^e' * (i + 1)`;
/// * `e` a limit: the sequence is `v + w^(C_e[i])`.
///
/// Both branches are strictly increasing in `i` with supremum the limit
/// itself. Errors when `lambda` is zero or a successor.
pub fn fund_seq(lambda: &Ordinal, i: u64) -> Result<Ordinal> {
    if !lambda.is_limit() {
        return Err(Error::pre(format!(
            "fund-seq needs a limit ordinal, got {lambda}"
        )));
    }
    Ok(fund_seq_limit(lambda, i))
}

/// [`fund_seq`] without the limit check; callers guarantee it.
pub(crate) fn fund_seq_limit(lambda: &Ordinal, i: u64) -> Ordinal {
    let (prefix, e, c) = lambda.split_last_term().expect("limit is nonzero");
    let nu = prefix.add(&Ordinal::omega_pow_mul(e.clone(), c - 1));
    match e.predecessor() {
        Some(e_pred) => nu.add(&Ordinal::omega_pow_mul(e_pred, i + 1)),
        None => {
            // e is itself a limit (e > 0 and not a successor).
            let g = fund_seq_limit(e, i);
            nu.add(&Ordinal::omega_pow(g))
        }
    }
}

/// All elements of `C_alpha` strictly below `below`, in increasing order.
///
/// For a limit `alpha` this is finite only when `below <= alpha`; a larger
/// bound would ask for the entire infinite sequence and is rejected. The
/// guard bounds the length of the returned prefix.
pub fn c_members(alpha: &Ordinal, below: &Ordinal) -> Result<Vec<Ordinal>> {
    c_members_guarded(alpha, below, DEFAULT_MEMBER_GUARD)
}

pub fn c_members_guarded(alpha: &Ordinal, below: &Ordinal, guard: u64) -> Result<Vec<Ordinal>> {
    if alpha.is_zero() {
        return Err(Error::pre("c-members needs a positive ordinal"));
    }
    if let Some(pred) = alpha.predecessor() {
        return Ok(if pred < *below { vec![pred] } else { Vec::new() });
    }
    if *below >= *alpha {
        return Err(Error::pre(format!(
            "C_({alpha}) has infinitely many elements below {below}"
        )));
    }
    let mut out = Vec::new();
    for i in 0.. {
        if i >= guard {
            return Err(Error::resource(format!(
                "c-members prefix exceeds {guard} elements"
            )));
        }
        let v = fund_seq_limit(alpha, i);
        if v >= *below {
            break;
        }
        out.push(v);
    }
    Ok(out)
}

/// The least element of `C_beta` at or above `alpha`, for `alpha < beta`.
///
/// This is the single step of a walk. For a successor `beta = g + 1` the
/// answer is `g`; for a limit it is located in closed form on the final
/// normal-form term, without scanning the sequence.
pub fn min_above(beta: &Ordinal, alpha: &Ordinal) -> Result<Ordinal> {
    Ok(min_above_index(beta, alpha)?.1)
}

/// [`min_above`] plus the index of the answer within `C_beta`.
pub fn min_above_index(beta: &Ordinal, alpha: &Ordinal) -> Result<(u64, Ordinal)> {
    if alpha >= beta {
        return Err(Error::pre(format!(
            "min-above needs alpha < beta, got {alpha} >= {beta}"
        )));
    }
    if let Some(pred) = beta.predecessor() {
        // C_beta = {pred} and alpha < beta means alpha <= pred.
        return Ok((0, pred));
    }
    Ok(min_above_limit(beta, alpha))
}

fn min_above_limit(beta: &Ordinal, alpha: &Ordinal) -> (u64, Ordinal) {
    let (prefix, e, c) = beta.split_last_term().expect("limit is nonzero");
    let nu = prefix.add(&Ordinal::omega_pow_mul(e.clone(), c - 1));
    match e.predecessor() {
        Some(e_pred) => {
            let first = nu.add(&Ordinal::omega_pow(e_pred.clone()));
            if *alpha <= first {
                return (0, first);
            }
            // alpha = nu + w^e_pred * q + r with r < w^e_pred and q >= 1.
            let delta = alpha.minus(&nu).expect("alpha > first >= nu");
            let (dq, rest_is_zero) = {
                let (rest, de, dc) = split_leading(&delta);
                debug_assert_eq!(*de, e_pred);
                (dc, rest.is_zero())
            };
            let m = if rest_is_zero { dq } else { dq + 1 };
            (m - 1, nu.add(&Ordinal::omega_pow_mul(e_pred, m)))
        }
        None => {
            let g0 = fund_seq_limit(e, 0);
            let first = nu.add(&Ordinal::omega_pow(g0));
            if *alpha <= first {
                return (0, first);
            }
            // Need the least i with w^(C_e[i]) >= delta, i.e. C_e[i] >= g
            // where g is the least exponent with w^g >= delta.
            let delta = alpha.minus(&nu).expect("alpha > first >= nu");
            let (rest, de, dc) = split_leading(&delta);
            let g = if dc == 1 && rest.is_zero() {
                de.clone()
            } else {
                de.successor()
            };
            let (i, exp) = min_above_limit(e, &g);
            (i, nu.add(&Ordinal::omega_pow(exp)))
        }
    }
}

/// Splits the leading normal-form term: `o = w^e * c + rest`.
fn split_leading(o: &Ordinal) -> (Ordinal, &Ordinal, u64) {
    let (e, c) = &o.terms()[0];
    let rest = o
        .minus(&Ordinal::omega_pow_mul(e.clone(), *c))
        .expect("leading term bounds the ordinal");
    (rest, e, *c)
}
