//! Computational minimal walks on ordinals below epsilon-zero.
//!
//! The crate builds up in layers:
//!
//! * [`ordinal`]: exact Cantor-normal-form arithmetic and deterministic
//!   probe-set enumeration;
//! * [`csequence`]: the canonical fundamental-sequence assignment, its
//!   finite restrictions, and the min-above step function;
//! * [`walks`]: walk traces, step counts, stabilizers, and the empirical
//!   coherence / unboundedness scanners (with a separately coded naive
//!   evaluator in [`naive`] kept as the reference path);
//! * [`topology`]: membership and witness extraction for the walk-weight
//!   neighborhood base on the space of ordinals plus an apex point;
//! * [`ladder`]: ladder-system uniformization and finite-to-one colorings
//!   with recorded fiber certificates;
//! * [`selftest`]: the golden-file self-check used by the CLI.

pub mod csequence;
pub mod error;
pub mod ladder;
pub mod naive;
pub mod ordinal;
pub mod selftest;
pub mod topology;
pub mod walks;

pub use error::{Error, Result};
pub use ordinal::{Ordinal, ProbeSet};
pub use walks::{TraceRecord, WalkTrace};
