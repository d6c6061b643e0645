//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Variants carry enough
//! context (index, offending value, field name) that callers can report
//! the failure without re-deriving it.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A goal distribution needs at least two outcomes to be interesting.
    #[error("goal distribution needs at least 2 entries, got {0}")]
    TooFewGoals(usize),

    /// A probability entry was negative or non-finite.
    #[error("probability at index {index} is {value}; entries must be finite and >= 0")]
    InvalidProbability { index: usize, value: f64 },

    /// Entries summed too far from 1 to renormalize safely.
    #[error("probabilities sum to {sum}; |sum - 1| exceeds the renormalization tolerance {tol:e}")]
    NotNormalized { sum: f64, tol: f64 },

    /// Two vectors that must be paired elementwise have different lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// KL divergence is undefined when p puts mass where q has none.
    #[error("KL divergence undefined: p[{index}] = {p_val} > 0 where q[{index}] = 0")]
    KlUndefined { index: usize, p_val: f64 },

    /// A rate-of-change vector must conserve total probability.
    #[error("dp_dt must sum to 0 (probability conservation), got {sum}; tolerance {tol:e}")]
    NotConserving { sum: f64, tol: f64 },

    /// The chain-rule entropy rate is undefined at the simplex boundary.
    #[error("entropy rate undefined: p[{index}] = 0 with dp_dt[{index}] = {rate} != 0")]
    RateAtBoundary { index: usize, rate: f64 },

    /// A scalar parameter failed validation; `field` names the offender.
    #[error("invalid {field}: {value} ({requirement})")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A count parameter failed validation.
    #[error("invalid {field}: {value} ({requirement})")]
    InvalidCount {
        field: &'static str,
        value: usize,
        requirement: &'static str,
    },

    /// An axis for the phase grid was empty or not strictly increasing.
    #[error("invalid {axis} axis: {reason}")]
    InvalidAxis {
        axis: &'static str,
        reason: &'static str,
    },

    /// A sample set was too small or degenerate for the requested statistic.
    #[error("invalid sample for {what}: {reason}")]
    InvalidSample {
        what: &'static str,
        reason: &'static str,
    },

    /// Configuration JSON failed to parse (includes unknown keys).
    #[error("config parse error: {0}")]
    ConfigParse(#[from] serde_json::Error),

    /// Filesystem failure while reading config or writing artifacts.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
