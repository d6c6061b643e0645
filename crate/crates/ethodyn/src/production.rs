//! Entropy production rates.
//!
//! Optimization pressure applied through an imperfect channel produces
//! ethical entropy at rate sigma. Two mechanisms are modeled:
//!
//! ```text
//! sigma_noise  = (eta^2 / 2) * lambda_max * tr(Sigma)     stochastic gradient noise
//! sigma_gaming = eta * D_KL(p_proxy || p_true)            proxy misspecification
//! ```
//!
//! Instrumental feedback amplifies the gaming term by exp(alpha * I).
//! Total production is additive; drift occurs whenever alignment work
//! gamma fails to remove entropy at least as fast as sigma_total creates it.

use serde::{Deserialize, Serialize};

use crate::entropy::{kl_divergence, GoalDistribution};
use crate::error::{Error, Result};

/// Parameters of the entropy production channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductionParams {
    eta: f64,
    lambda_max: f64,
    trace_sigma: f64,
    alpha_instr: f64,
    instrumental_i: f64,
}

impl ProductionParams {
    /// `eta` (learning rate) and `lambda_max` (top loss curvature) must be
    /// positive; `trace_sigma` (gradient noise covariance trace),
    /// `alpha_instr`, and `instrumental_i` must be non-negative. All finite.
    pub fn new(
        eta: f64,
        lambda_max: f64,
        trace_sigma: f64,
        alpha_instr: f64,
        instrumental_i: f64,
    ) -> Result<Self> {
        let positive = [("eta", eta), ("lambda_max", lambda_max)];
        for (field, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    requirement: "must be finite and > 0",
                });
            }
        }
        let non_negative = [
            ("trace_sigma", trace_sigma),
            ("alpha_instr", alpha_instr),
            ("instrumental_i", instrumental_i),
        ];
        for (field, value) in non_negative {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    requirement: "must be finite and >= 0",
                });
            }
        }
        Ok(Self {
            eta,
            lambda_max,
            trace_sigma,
            alpha_instr,
            instrumental_i,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn trace_sigma(&self) -> f64 {
        self.trace_sigma
    }

    pub fn alpha_instr(&self) -> f64 {
        self.alpha_instr
    }

    pub fn instrumental_i(&self) -> f64 {
        self.instrumental_i
    }
}

/// Noise-driven production (eta^2 / 2) * lambda_max * tr(Sigma).
pub fn sigma_noise(params: &ProductionParams) -> f64 {
    0.5 * params.eta * params.eta * params.lambda_max * params.trace_sigma
}

/// Gaming-driven production eta * D_KL(p_proxy || p_true).
///
/// Propagates the KL support error when the proxy puts mass where the
/// true objective has none; see [`kl_divergence`].
pub fn sigma_gaming(
    eta: f64,
    p_proxy: &GoalDistribution,
    p_true: &GoalDistribution,
) -> Result<f64> {
    Ok(eta * kl_divergence(p_proxy, p_true)?)
}

/// Gaming production amplified by instrumental feedback exp(alpha * I).
pub fn sigma_gaming_amplified(
    params: &ProductionParams,
    p_proxy: &GoalDistribution,
    p_true: &GoalDistribution,
) -> Result<f64> {
    let base = sigma_gaming(params.eta, p_proxy, p_true)?;
    Ok(base * (params.alpha_instr * params.instrumental_i).exp())
}

/// Total production. Both component rates must be non-negative.
pub fn sigma_total(noise: f64, gaming: f64) -> Result<f64> {
    for (field, value) in [("sigma_noise", noise), ("sigma_gaming", gaming)] {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidParameter {
                field,
                value,
                requirement: "must be finite and >= 0",
            });
        }
    }
    Ok(noise + gaming)
}
