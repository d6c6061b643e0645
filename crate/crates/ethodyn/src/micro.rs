//! Gradient-descent micro testbed.
//!
//! A single agent holds logits over n goal states. Each step it descends
//! the cross-entropy loss against a (possibly misspecified) proxy
//! distribution q, with isotropic Gaussian parameter noise and an optional
//! restoring force toward the intended goal:
//!
//! ```text
//! theta' = theta - eta * (softmax(theta) - q)
//!                + sigma_eps * z
//!                - align_strength * eta * (softmax(theta) - onehot(g*))
//! ```
//!
//! Tracking the entropy of softmax(theta) step by step gives a miniature,
//! mechanistic version of the macro drift law: with no restoring force and
//! any noise, entropy climbs away from a concentrated start.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::defaults;
use crate::entropy::{shannon_entropy, GoalDistribution};
use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::stats::sign_test;

/// Parameters of one micro agent run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MicroConfig {
    /// Number of goal states (>= 2).
    pub n_goals: usize,
    /// Initial logits; length n_goals.
    pub theta0: Vec<f64>,
    /// Proxy objective the agent actually optimizes; length n_goals.
    pub proxy_probs: Vec<f64>,
    /// Learning rate (> 0).
    pub eta: f64,
    /// Std of the per-coordinate Gaussian parameter noise (>= 0).
    pub sigma_eps: f64,
    /// Strength of the restoring force toward the intended goal (>= 0).
    pub align_strength: f64,
    /// Index of the intended goal (< n_goals).
    pub intended_goal: usize,
    /// Number of SGD steps.
    pub steps: usize,
    /// Seed for the per-trial substreams.
    pub seed: u64,
}

/// Concentrated default logits: 90% of the mass on goal `intended`, the
/// leaked 10% on its successor, and a vanishing share elsewhere. The
/// two-point carrier keeps the initial entropy at the 0.325-nat anchor
/// for every n.
pub fn concentrated_theta0(n_goals: usize, intended: usize) -> Vec<f64> {
    let mut theta = vec![-30.0; n_goals];
    theta[intended] = 9f64.ln();
    theta[(intended + 1) % n_goals] = 0.0;
    theta
}

impl Default for MicroConfig {
    fn default() -> Self {
        let n = defaults::MICRO_N_GOALS;
        Self {
            n_goals: n,
            theta0: concentrated_theta0(n, 0),
            proxy_probs: vec![1.0 / n as f64; n],
            eta: defaults::MICRO_ETA,
            sigma_eps: defaults::MICRO_SIGMA_EPS,
            align_strength: 0.0,
            intended_goal: 0,
            steps: defaults::MICRO_STEPS,
            seed: defaults::MASTER_SEED,
        }
    }
}

impl MicroConfig {
    /// Checks every field; the error names the offending field.
    pub fn validate(&self) -> Result<()> {
        if self.n_goals < 2 {
            return Err(Error::InvalidCount {
                field: "n_goals",
                value: self.n_goals,
                requirement: "must be >= 2",
            });
        }
        if self.theta0.len() != self.n_goals {
            return Err(Error::InvalidCount {
                field: "theta0",
                value: self.theta0.len(),
                requirement: "length must equal n_goals",
            });
        }
        if self.theta0.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "theta0",
                value: f64::NAN,
                requirement: "entries must be finite",
            });
        }
        if self.proxy_probs.len() != self.n_goals {
            return Err(Error::InvalidCount {
                field: "proxy_probs",
                value: self.proxy_probs.len(),
                requirement: "length must equal n_goals",
            });
        }
        GoalDistribution::new(self.proxy_probs.clone())?;
        if !self.eta.is_finite() || self.eta <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "eta",
                value: self.eta,
                requirement: "must be finite and > 0",
            });
        }
        for (field, value) in [
            ("sigma_eps", self.sigma_eps),
            ("align_strength", self.align_strength),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    requirement: "must be finite and >= 0",
                });
            }
        }
        if self.intended_goal >= self.n_goals {
            return Err(Error::InvalidCount {
                field: "intended_goal",
                value: self.intended_goal,
                requirement: "must be < n_goals",
            });
        }
        if self.steps == 0 {
            return Err(Error::InvalidCount {
                field: "steps",
                value: self.steps,
                requirement: "must be >= 1",
            });
        }
        Ok(())
    }

    fn proxy(&self) -> Result<GoalDistribution> {
        GoalDistribution::new(self.proxy_probs.clone())
    }
}

/// Numerically stable softmax; valid for any finite logits (magnitudes up
/// to and beyond +-700 are fine thanks to max subtraction).
pub fn softmax(logits: &[f64]) -> Result<GoalDistribution> {
    if logits.len() < 2 {
        return Err(Error::TooFewGoals(logits.len()));
    }
    if let Some((index, &value)) = logits.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::InvalidProbability { index, value });
    }
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&t| (t - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    GoalDistribution::new(exps.into_iter().map(|e| e / sum).collect())
}

/// Gradient of the cross-entropy loss -sum_i q_i ln softmax(theta)_i,
/// which is softmax(theta) - q.
pub fn proxy_loss_grad(theta: &[f64], proxy: &GoalDistribution) -> Result<Vec<f64>> {
    if theta.len() != proxy.len() {
        return Err(Error::LengthMismatch {
            left: theta.len(),
            right: proxy.len(),
        });
    }
    let p = softmax(theta)?;
    Ok(p.probs().iter().zip(proxy.probs()).map(|(a, b)| a - b).collect())
}

/// One noisy SGD step; consumes exactly `n_goals` Gaussian draws.
pub fn sgd_step(theta: &[f64], config: &MicroConfig, stream: &mut Stream) -> Result<Vec<f64>> {
    let proxy = config.proxy()?;
    let grad = proxy_loss_grad(theta, &proxy)?;
    let p = softmax(theta)?;
    let mut next = Vec::with_capacity(theta.len());
    for (i, &t) in theta.iter().enumerate() {
        let onehot = if i == config.intended_goal { 1.0 } else { 0.0 };
        let align = config.align_strength * config.eta * (p.probs()[i] - onehot);
        let noise = config.sigma_eps * stream.next_gaussian();
        next.push(t - config.eta * grad[i] + noise - align);
    }
    Ok(next)
}

/// Entropy trace of one micro run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MicroTrajectory {
    /// s_values[k] is the entropy after k steps; length steps + 1.
    pub s_values: Vec<f64>,
    /// Goal distribution at the final step.
    pub final_dist: GoalDistribution,
}

impl MicroTrajectory {
    pub fn s0(&self) -> f64 {
        self.s_values[0]
    }

    pub fn s_final(&self) -> f64 {
        *self.s_values.last().expect("non-empty trace")
    }

    /// CSV rendering with header `step,s`, round-trip precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,s\n");
        for (k, &s) in self.s_values.iter().enumerate() {
            out.push_str(&format!("{},{}\n", k, s));
        }
        out
    }
}

/// Runs one agent on the substream `(config.seed, trial_index)`.
pub fn run_micro_trial(config: &MicroConfig, trial_index: u64) -> Result<MicroTrajectory> {
    config.validate()?;
    let mut stream = Stream::substream(config.seed, trial_index);
    let mut theta = config.theta0.clone();
    let mut s_values = Vec::with_capacity(config.steps + 1);
    s_values.push(shannon_entropy(&softmax(&theta)?));
    for _ in 0..config.steps {
        theta = sgd_step(&theta, config, &mut stream)?;
        s_values.push(shannon_entropy(&softmax(&theta)?));
    }
    Ok(MicroTrajectory {
        s_values,
        final_dist: softmax(&theta)?,
    })
}

/// Runs the agent on trial index 0.
pub fn run_micro(config: &MicroConfig) -> Result<MicroTrajectory> {
    run_micro_trial(config, 0)
}

/// Outcome of the micro second-law check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondLawReport {
    pub n_seeds: usize,
    /// Fraction of seeds whose final entropy exceeds the initial one.
    pub fraction_increased: f64,
    pub mean_delta_s: f64,
    /// Two-sided exact binomial sign-test p-value; 1.0 when degenerate.
    pub sign_test_p: f64,
    /// True when every delta was exactly zero (no evidence either way).
    pub degenerate: bool,
}

/// Tests whether entropy increases across `n_seeds` independent runs.
///
/// Requires an unforced agent (`align_strength == 0`) starting at least
/// 0.1 nat below the entropy ceiling, so there is room to climb.
pub fn second_law_check(config: &MicroConfig, n_seeds: usize) -> Result<SecondLawReport> {
    config.validate()?;
    if n_seeds == 0 {
        return Err(Error::InvalidCount {
            field: "n_seeds",
            value: n_seeds,
            requirement: "must be >= 1",
        });
    }
    if config.align_strength != 0.0 {
        return Err(Error::InvalidParameter {
            field: "align_strength",
            value: config.align_strength,
            requirement: "second-law check requires align_strength = 0",
        });
    }
    let s0 = shannon_entropy(&softmax(&config.theta0)?);
    let ceiling = (config.n_goals as f64).ln();
    if s0 >= ceiling - 0.1 {
        return Err(Error::InvalidParameter {
            field: "theta0",
            value: s0,
            requirement: "initial entropy must sit at least 0.1 nat below ln(n_goals)",
        });
    }
    let deltas: Vec<f64> = (0..n_seeds as u64)
        .into_par_iter()
        .map(|i| run_micro_trial(config, i).map(|t| t.s_final() - t.s0()))
        .collect::<Result<_>>()?;
    let increased = deltas.iter().filter(|&&d| d > 0.0).count();
    let mean_delta_s = deltas.iter().sum::<f64>() / n_seeds as f64;
    let degenerate = deltas.iter().all(|&d| d == 0.0);
    let sign_test_p = if degenerate { 1.0 } else { sign_test(&deltas)? };
    Ok(SecondLawReport {
        n_seeds,
        fraction_increased: increased as f64 / n_seeds as f64,
        mean_delta_s,
        sign_test_p,
        degenerate,
    })
}
