//! Coarse-grained entropy dynamics.
//!
//! The macro state is a single scalar: the ethical entropy S(t) of the goal
//! distribution. It obeys
//!
//! ```text
//! dS/dt = sigma_total - gamma
//! ```
//!
//! integrated by classical RK4 (exact on the constant baseline field),
//! with additive measurement noise `xi * sqrt(dt) * z` applied per step and
//! the state projected back into [0, s_max]. An ensemble runs independent
//! trials off per-trial substreams, so results do not depend on thread
//! count or execution order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::defaults;
use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::stats::mean_std;

/// Full parameter set for one macro ensemble.
///
/// The default is the calibrated baseline (no alignment work); see
/// [`crate::config::defaults`] for where each number comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MacroConfig {
    /// Initial entropy (nats).
    pub s0: f64,
    /// Entropy ceiling (nats); the state is projected into [0, s_max].
    pub s_max: f64,
    /// Noise-channel production rate (nats per unit time).
    pub sigma_noise_rate: f64,
    /// Gaming-channel production rate (nats per unit time).
    pub sigma_gaming_rate: f64,
    /// Alignment-work rate (nats per unit time).
    pub gamma: f64,
    /// Diffusion amplitude of the per-step measurement noise.
    pub xi: f64,
    /// Integrator time step.
    pub dt: f64,
    /// Steps per trial; the horizon is steps * dt.
    pub steps: usize,
    /// Independent trials in the ensemble.
    pub trials: usize,
    /// Seed from which every trial derives its substream.
    pub master_seed: u64,
}

impl Default for MacroConfig {
    fn default() -> Self {
        Self {
            s0: defaults::S0,
            s_max: defaults::S_MAX,
            sigma_noise_rate: defaults::SIGMA_NOISE_RATE,
            sigma_gaming_rate: defaults::SIGMA_GAMING_RATE,
            gamma: 0.0,
            xi: defaults::XI,
            dt: defaults::DT,
            steps: defaults::STEPS,
            trials: defaults::TRIALS,
            master_seed: defaults::MASTER_SEED,
        }
    }
}

impl MacroConfig {
    /// Combined production rate sigma_noise + sigma_gaming.
    pub fn sigma_total(&self) -> f64 {
        self.sigma_noise_rate + self.sigma_gaming_rate
    }

    /// Simulated horizon steps * dt.
    pub fn horizon(&self) -> f64 {
        self.steps as f64 * self.dt
    }

    /// Checks every field; the error names the offending field.
    pub fn validate(&self) -> Result<()> {
        let scalar_checks = [
            ("s0", self.s0, 0.0f64),
            ("s_max", self.s_max, f64::MIN_POSITIVE),
            ("sigma_noise_rate", self.sigma_noise_rate, 0.0),
            ("sigma_gaming_rate", self.sigma_gaming_rate, 0.0),
            ("gamma", self.gamma, 0.0),
            ("xi", self.xi, 0.0),
            ("dt", self.dt, f64::MIN_POSITIVE),
        ];
        for (field, value, min) in scalar_checks {
            if !value.is_finite() || value < min {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    requirement: if min > 0.0 {
                        "must be finite and > 0"
                    } else {
                        "must be finite and >= 0"
                    },
                });
            }
        }
        if self.s0 > self.s_max {
            return Err(Error::InvalidParameter {
                field: "s0",
                value: self.s0,
                requirement: "must not exceed s_max",
            });
        }
        if self.steps == 0 {
            return Err(Error::InvalidCount {
                field: "steps",
                value: self.steps,
                requirement: "must be >= 1",
            });
        }
        if self.trials == 0 {
            return Err(Error::InvalidCount {
                field: "trials",
                value: self.trials,
                requirement: "must be >= 1",
            });
        }
        Ok(())
    }
}

/// Baseline drift field sigma_total - gamma (state-independent).
///
/// The state argument is kept so the signature matches the injected fields
/// used to verify the integrator.
pub fn drift(_s: f64, config: &MacroConfig) -> f64 {
    config.sigma_total() - config.gamma
}

/// One classical RK4 step of an arbitrary field ds/dt = f(s).
pub fn rk4_step_field<F: Fn(f64) -> f64>(s: f64, dt: f64, field: F) -> f64 {
    let k1 = field(s);
    let k2 = field(s + 0.5 * dt * k1);
    let k3 = field(s + 0.5 * dt * k2);
    let k4 = field(s + dt * k3);
    s + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
}

/// One RK4 step of the baseline drift.
pub fn rk4_step(s: f64, config: &MacroConfig) -> f64 {
    rk4_step_field(s, config.dt, |x| drift(x, config))
}

/// RK4 drift step plus diffusion `xi * sqrt(dt) * z`, projected into
/// [0, s_max]. `z` is a standard normal draw.
pub fn step_with_noise(s: f64, config: &MacroConfig, z: f64) -> f64 {
    let drifted = rk4_step(s, config);
    (drifted + config.xi * config.dt.sqrt() * z).clamp(0.0, config.s_max)
}

/// One recorded trial path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    /// times[k] = k * dt, exactly.
    pub times: Vec<f64>,
    /// s_values[k] is the state after k steps; length steps + 1.
    pub s_values: Vec<f64>,
}

impl Trajectory {
    /// CSV rendering with header `step,time,s`, round-trip precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,time,s\n");
        for (k, (&t, &s)) in self.times.iter().zip(&self.s_values).enumerate() {
            out.push_str(&format!("{},{},{}\n", k, t, s));
        }
        out
    }
}

/// Integrates one trial from the substream `(master_seed, trial_index)`.
pub fn simulate_trial(config: &MacroConfig, trial_index: u64) -> Trajectory {
    let mut stream = Stream::substream(config.master_seed, trial_index);
    let mut s = config.s0.min(config.s_max).max(0.0);
    let mut s_values = Vec::with_capacity(config.steps + 1);
    s_values.push(s);
    for _ in 0..config.steps {
        let z = stream.next_gaussian();
        s = step_with_noise(s, config, z);
        s_values.push(s);
    }
    let times = (0..=config.steps).map(|k| k as f64 * config.dt).collect();
    Trajectory { times, s_values }
}

/// Cross-trial statistics of an ensemble.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub times: Vec<f64>,
    /// Mean over trials at each step.
    pub mean_path: Vec<f64>,
    /// Sample standard deviation over trials at each step.
    pub std_path: Vec<f64>,
    /// Final state of each trial, in trial order.
    pub final_values: Vec<f64>,
    pub final_mean: f64,
    pub final_std: f64,
}

impl EnsembleSummary {
    /// CSV rendering with header `step,time,mean,std`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,time,mean,std\n");
        for (k, &t) in self.times.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                k, t, self.mean_path[k], self.std_path[k]
            ));
        }
        out
    }
}

/// Trials plus their summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleResult {
    pub trajectories: Vec<Trajectory>,
    pub summary: EnsembleSummary,
}

/// Runs `config.trials` independent trials (in parallel) and summarizes.
///
/// Output is a pure function of the config: trial k always consumes the
/// same substream, and the summary folds trials in index order.
pub fn run_ensemble(config: &MacroConfig) -> Result<EnsembleResult> {
    config.validate()?;
    let trajectories: Vec<Trajectory> = (0..config.trials as u64)
        .into_par_iter()
        .map(|k| simulate_trial(config, k))
        .collect();

    let times = trajectories[0].times.clone();
    let mut mean_path = Vec::with_capacity(times.len());
    let mut std_path = Vec::with_capacity(times.len());
    let mut column = vec![0.0; trajectories.len()];
    for k in 0..times.len() {
        for (i, t) in trajectories.iter().enumerate() {
            column[i] = t.s_values[k];
        }
        let (m, s) = mean_std(&column)?;
        mean_path.push(m);
        std_path.push(s);
    }
    let final_values: Vec<f64> = trajectories
        .iter()
        .map(|t| *t.s_values.last().expect("non-empty path"))
        .collect();
    let (final_mean, final_std) = mean_std(&final_values)?;
    Ok(EnsembleResult {
        trajectories,
        summary: EnsembleSummary {
            times,
            mean_path,
            std_path,
            final_values,
            final_mean,
            final_std,
        },
    })
}
