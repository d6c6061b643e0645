//! Entropy of goal distributions.
//!
//! A system's objectives are modeled as a probability distribution over a
//! discrete set of goal states. Alignment corresponds to concentration of
//! that distribution; its Shannon entropy (in nats)
//!
//! ```text
//! S(p) = -sum_i p_i ln p_i
//! ```
//!
//! measures how far the system has diffused away from its intended goal.
//! This module owns the distribution type and the pointwise quantities
//! derived from it: entropy, KL divergence, the chain-rule entropy rate,
//! and the alignment energy E_a = -k0 * T_e * S.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Construction renormalizes when |sum - 1| is at most this.
pub const NORMALIZATION_TOL: f64 = 1e-9;
/// `entropy_rate_chain_rule` requires `sum(dp_dt)` within this of zero.
pub const CONSERVATION_TOL: f64 = 1e-10;

/// Probability distribution over at least two goal states.
///
/// Entries are finite, non-negative, and sum to 1 within 1e-12 after
/// construction. Zero entries are allowed (a one-hot distribution is a
/// valid, fully aligned state).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct GoalDistribution {
    probs: Vec<f64>,
}

impl GoalDistribution {
    /// Validates and renormalizes `probs`.
    ///
    /// Rejects fewer than two entries, any negative or non-finite entry,
    /// and sums farther than [`NORMALIZATION_TOL`] from 1.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::TooFewGoals(probs.len()));
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidProbability { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized {
                sum,
                tol: NORMALIZATION_TOL,
            });
        }
        let probs = probs.into_iter().map(|p| p / sum).collect();
        Ok(Self { probs })
    }

    /// Uniform distribution over `n` goals.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewGoals(n));
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    /// All mass on goal `index`.
    pub fn one_hot(n: usize, index: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewGoals(n));
        }
        if index >= n {
            return Err(Error::InvalidCount {
                field: "index",
                value: index,
                requirement: "must be < n",
            });
        }
        let mut probs = vec![0.0; n];
        probs[index] = 1.0;
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of goal states; always at least 2.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.probs.len()
    }
}

impl TryFrom<Vec<f64>> for GoalDistribution {
    type Error = Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        Self::new(probs)
    }
}

impl From<GoalDistribution> for Vec<f64> {
    fn from(dist: GoalDistribution) -> Self {
        dist.probs
    }
}

/// Kahan-compensated sum; keeps the accumulation error O(eps) even for
/// a million-term uniform distribution.
fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for term in terms {
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Shannon entropy in nats, with the 0 ln 0 = 0 convention.
pub fn shannon_entropy(dist: &GoalDistribution) -> f64 {
    compensated_sum(
        dist.probs()
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln()),
    )
}

/// Maximum entropy ln(n) attainable over `n` goals.
pub fn max_entropy(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooFewGoals(n));
    }
    Ok((n as f64).ln())
}

/// KL divergence D(p || q) in nats.
///
/// Terms with p_i = 0 contribute nothing. Fails with [`Error::KlUndefined`]
/// when p puts mass on an index where q has none (absolute continuity).
pub fn kl_divergence(p: &GoalDistribution, q: &GoalDistribution) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let mut terms = Vec::with_capacity(p.len());
    for (index, (&pi, &qi)) in p.probs().iter().zip(q.probs()).enumerate() {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Err(Error::KlUndefined { index, p_val: pi });
        }
        terms.push(pi * (pi / qi).ln());
    }
    Ok(compensated_sum(terms.into_iter()))
}

/// Chain-rule entropy rate dS/dt = -sum_i (ln p_i + 1) dp_i/dt.
///
/// `dp_dt` must be the same length as the distribution and sum to zero
/// within [`CONSERVATION_TOL`]. The rate is undefined where p_i = 0 moves
/// (ln 0 diverges); a zero entry with zero rate contributes nothing.
pub fn entropy_rate_chain_rule(dist: &GoalDistribution, dp_dt: &[f64]) -> Result<f64> {
    if dist.len() != dp_dt.len() {
        return Err(Error::LengthMismatch {
            left: dist.len(),
            right: dp_dt.len(),
        });
    }
    let sum: f64 = dp_dt.iter().sum();
    if sum.abs() > CONSERVATION_TOL {
        return Err(Error::NotConserving {
            sum,
            tol: CONSERVATION_TOL,
        });
    }
    let mut rate = 0.0;
    for (index, (&pi, &dpi)) in dist.probs().iter().zip(dp_dt).enumerate() {
        if dpi == 0.0 {
            continue;
        }
        if pi == 0.0 {
            return Err(Error::RateAtBoundary { index, rate: dpi });
        }
        rate -= (pi.ln() + 1.0) * dpi;
    }
    Ok(rate)
}

/// Coupling constants for the alignment energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlignmentEnergyParams {
    k0: f64,
    t_e: f64,
}

impl AlignmentEnergyParams {
    /// Both the conversion constant `k0` and the ethical temperature `t_e`
    /// must be finite and positive.
    pub fn new(k0: f64, t_e: f64) -> Result<Self> {
        if !k0.is_finite() || k0 <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "k0",
                value: k0,
                requirement: "must be finite and > 0",
            });
        }
        if !t_e.is_finite() || t_e <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "t_e",
                value: t_e,
                requirement: "must be finite and > 0",
            });
        }
        Ok(Self { k0, t_e })
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn t_e(&self) -> f64 {
        self.t_e
    }
}

/// Alignment energy E_a = -k0 * T_e * S for entropy `s >= 0`.
///
/// Monotone decreasing in `s`: aligned (low-entropy) states sit at higher
/// energy, so alignment is thermodynamically disfavored without work input.
pub fn alignment_energy(s: f64, params: &AlignmentEnergyParams) -> f64 {
    -params.k0 * params.t_e * s
}

/// Energy rate dE_a/dt = -k0 * T_e * dS/dt.
pub fn alignment_energy_rate(s_rate: f64, params: &AlignmentEnergyParams) -> f64 {
    -params.k0 * params.t_e * s_rate
}
