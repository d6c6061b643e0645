//! Critical alignment-work threshold and phase structure.
//!
//! Sustaining a low-entropy goal distribution against optimization noise
//! requires alignment work at rate at least
//!
//! ```text
//! gamma_crit = (lambda_max / 2) * ln N
//! ```
//!
//! for a system with N parameters and top loss curvature lambda_max. The
//! (N, gamma) plane splits into a stable region (gamma >= gamma_crit) and a
//! drift region; [`phase_grid`] evaluates the classification over a grid.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scale parameters of the optimized system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemScale {
    n_params: f64,
    lambda_max: f64,
}

impl SystemScale {
    /// `n_params` is a parameter count (>= 2; accepted as f64 so scientific
    /// notation like 7e9 passes through exactly); `lambda_max` must be
    /// finite and positive.
    pub fn new(n_params: f64, lambda_max: f64) -> Result<Self> {
        if !n_params.is_finite() || n_params < 2.0 {
            return Err(Error::InvalidParameter {
                field: "n_params",
                value: n_params,
                requirement: "must be finite and >= 2",
            });
        }
        if !lambda_max.is_finite() || lambda_max <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "lambda_max",
                value: lambda_max,
                requirement: "must be finite and > 0",
            });
        }
        Ok(Self {
            n_params,
            lambda_max,
        })
    }

    pub fn n_params(&self) -> f64 {
        self.n_params
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }
}

/// Critical alignment-work rate (lambda_max / 2) * ln(n_params).
pub fn gamma_crit(scale: &SystemScale) -> f64 {
    0.5 * scale.lambda_max * scale.n_params.ln()
}

/// Phase of the alignment dynamics at a given work rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Drift,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stability::Stable => f.write_str("stable"),
            Stability::Drift => f.write_str("drift"),
        }
    }
}

/// Classifies a work rate against the critical threshold.
///
/// The boundary belongs to the stable phase: gamma == gamma_crit is Stable.
/// Negative or non-finite gamma is rejected.
pub fn classify_stability(gamma: f64, scale: &SystemScale) -> Result<Stability> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidParameter {
            field: "gamma",
            value: gamma,
            requirement: "must be finite and >= 0",
        });
    }
    if gamma >= gamma_crit(scale) {
        Ok(Stability::Stable)
    } else {
        Ok(Stability::Drift)
    }
}

/// Stability labels over the (N, gamma) plane.
///
/// `labels[i][j]` classifies `(n_axis[j], gamma_axis[i])`; rows scan gamma,
/// columns scan N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    pub n_axis: Vec<f64>,
    pub gamma_axis: Vec<f64>,
    pub lambda_max: f64,
    pub labels: Vec<Vec<Stability>>,
}

fn check_axis(values: &[f64], axis: &'static str, min_allowed: f64) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidAxis {
            axis,
            reason: "must be non-empty",
        });
    }
    if values.iter().any(|v| !v.is_finite() || *v < min_allowed) {
        return Err(Error::InvalidAxis {
            axis,
            reason: "all values must be finite and within the valid range",
        });
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidAxis {
            axis,
            reason: "values must be strictly increasing",
        });
    }
    Ok(())
}

/// Evaluates [`classify_stability`] over the cartesian grid of the axes.
///
/// `n_axis` values must be >= 2 and strictly increasing; `gamma_axis`
/// values >= 0 and strictly increasing.
pub fn phase_grid(n_axis: &[f64], gamma_axis: &[f64], lambda_max: f64) -> Result<PhaseGrid> {
    check_axis(n_axis, "N", 2.0)?;
    check_axis(gamma_axis, "gamma", 0.0)?;
    let mut labels = Vec::with_capacity(gamma_axis.len());
    for &gamma in gamma_axis {
        let mut row = Vec::with_capacity(n_axis.len());
        for &n in n_axis {
            let scale = SystemScale::new(n, lambda_max)?;
            row.push(classify_stability(gamma, &scale)?);
        }
        labels.push(row);
    }
    Ok(PhaseGrid {
        n_axis: n_axis.to_vec(),
        gamma_axis: gamma_axis.to_vec(),
        lambda_max,
        labels,
    })
}

impl PhaseGrid {
    /// CSV rendering with header `gamma,N,label`, one row per cell, gamma
    /// varying slowest. Numeric fields use round-trip precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gamma,N,label\n");
        for (i, &gamma) in self.gamma_axis.iter().enumerate() {
            for (j, &n) in self.n_axis.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", gamma, n, self.labels[i][j]));
            }
        }
        out
    }
}

/// `count` logarithmically spaced values from `min` to `max` inclusive.
pub fn log_spaced(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(Error::InvalidCount {
            field: "count",
            value: count,
            requirement: "must be >= 2",
        });
    }
    if !(min.is_finite() && max.is_finite()) || min <= 0.0 || min >= max {
        return Err(Error::InvalidParameter {
            field: "min",
            value: min,
            requirement: "need 0 < min < max, both finite",
        });
    }
    let (ln_min, ln_max) = (min.ln(), max.ln());
    let step = (ln_max - ln_min) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| match i {
            0 => min,
            i if i == count - 1 => max,
            i => (ln_min + step * i as f64).exp(),
        })
        .collect())
}

/// `count` linearly spaced values from `min` to `max` inclusive.
pub fn lin_spaced(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(Error::InvalidCount {
            field: "count",
            value: count,
            requirement: "must be >= 2",
        });
    }
    if !(min.is_finite() && max.is_finite()) || min >= max {
        return Err(Error::InvalidParameter {
            field: "min",
            value: min,
            requirement: "need min < max, both finite",
        });
    }
    let step = (max - min) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i == count - 1 { max } else { min + step * i as f64 })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_crit_frozen_values() {
        let cases = [
            (7e9, 1.2, 13.6015),
            (13e9, 2.5, 29.1103),
            (50e9, 3.0, 36.9529),
        ];
        for (n, lam, expected) in cases {
            let g = gamma_crit(&SystemScale::new(n, lam).unwrap());
            assert!((g - expected).abs() < 5e-4, "n={n}: got {g}");
        }
    }

    #[test]
    fn classification_sides_and_tie() {
        let scale = SystemScale::new(7e9, 1.2).unwrap();
        let crit = gamma_crit(&scale);
        assert_eq!(
            classify_stability(crit - 1e-9, &scale).unwrap(),
            Stability::Drift
        );
        assert_eq!(
            classify_stability(crit + 1e-9, &scale).unwrap(),
            Stability::Stable
        );
        // The boundary itself is stable.
        assert_eq!(classify_stability(crit, &scale).unwrap(), Stability::Stable);
        assert_eq!(
            classify_stability(20.4, &scale).unwrap(),
            Stability::Stable
        );
        assert_eq!(classify_stability(13.0, &scale).unwrap(), Stability::Drift);
    }

    #[test]
    fn classification_rejects_bad_gamma() {
        let scale = SystemScale::new(7e9, 1.2).unwrap();
        assert!(classify_stability(-0.1, &scale).is_err());
        assert!(classify_stability(f64::NAN, &scale).is_err());
    }

    #[test]
    fn scale_validates() {
        assert!(SystemScale::new(1.0, 1.2).is_err());
        assert!(SystemScale::new(7e9, 0.0).is_err());
        assert!(SystemScale::new(f64::INFINITY, 1.0).is_err());
        assert!(SystemScale::new(2.0, 1.0).is_ok());
    }

    #[test]
    fn grid_matches_per_cell_oracle() {
        let n_axis = log_spaced(1e6, 1e12, 10).unwrap();
        let gamma_axis = lin_spaced(0.0, 40.0, 10).unwrap();
        let grid = phase_grid(&n_axis, &gamma_axis, 1.2).unwrap();
        for (i, &gamma) in gamma_axis.iter().enumerate() {
            for (j, &n) in n_axis.iter().enumerate() {
                let expect = if gamma >= 0.5 * 1.2 * n.ln() {
                    Stability::Stable
                } else {
                    Stability::Drift
                };
                assert_eq!(grid.labels[i][j], expect, "cell ({i},{j})");
            }
        }
    }

    #[test]
    fn grid_rejects_bad_axes() {
        assert!(phase_grid(&[], &[0.0, 1.0], 1.2).is_err());
        assert!(phase_grid(&[1e6, 1e6], &[0.0, 1.0], 1.2).is_err());
        assert!(phase_grid(&[1e6, 1e9], &[1.0, 0.5], 1.2).is_err());
        assert!(phase_grid(&[1.5, 1e9], &[0.0, 1.0], 1.2).is_err());
        assert!(phase_grid(&[1e6, 1e9], &[-1.0, 1.0], 1.2).is_err());
        assert!(phase_grid(&[1e6, 1e9], &[0.0, 1.0], 0.0).is_err());
    }

    #[test]
    fn csv_shape_and_header() {
        let grid = phase_grid(&[1e6, 1e9], &[0.0, 20.0], 1.2).unwrap();
        let csv = grid.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "gamma,N,label");
        assert_eq!(lines.len(), 1 + 4);
        assert_eq!(lines[1], "0,1000000,drift");
        assert_eq!(lines[4], "20,1000000000,stable");
    }

    #[test]
    fn spacing_helpers() {
        let xs = log_spaced(1e6, 1e12, 7).unwrap();
        assert_eq!(xs.len(), 7);
        assert_eq!(xs[0], 1e6);
        assert_eq!(xs[6], 1e12);
        assert!((xs[1] / xs[0] - 10.0).abs() < 1e-9);
        let ys = lin_spaced(0.0, 40.0, 5).unwrap();
        assert_eq!(ys, vec![0.0, 10.0, 20.0, 30.0, 40.0]);
        assert!(log_spaced(0.0, 1.0, 3).is_err());
        assert!(lin_spaced(1.0, 1.0, 3).is_err());
        assert!(lin_spaced(0.0, 1.0, 1).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn stability_monotone_in_gamma_and_n(
                lam in 0.1..5.0f64,
                exps in proptest::collection::vec(1.0..12.0f64, 2..8),
                gammas in proptest::collection::vec(0.0..50.0f64, 2..8),
            ) {
                let mut n_axis: Vec<f64> = exps.iter().map(|e| 10f64.powf(*e)).collect();
                n_axis.sort_by(|a, b| a.partial_cmp(b).unwrap());
                n_axis.dedup();
                let mut gamma_axis = gammas.clone();
                gamma_axis.sort_by(|a, b| a.partial_cmp(b).unwrap());
                gamma_axis.dedup();
                prop_assume!(n_axis.len() >= 2 && gamma_axis.len() >= 2);

                let grid = phase_grid(&n_axis, &gamma_axis, lam).unwrap();
                // Fixed N: once stable, larger gamma stays stable.
                for j in 0..n_axis.len() {
                    let mut seen_stable = false;
                    for row in &grid.labels {
                        if seen_stable {
                            prop_assert_eq!(row[j], Stability::Stable);
                        }
                        seen_stable |= row[j] == Stability::Stable;
                    }
                }
                // Fixed gamma: once drifting, larger N stays drifting.
                for row in &grid.labels {
                    let mut seen_drift = false;
                    for &cell in row {
                        if seen_drift {
                            prop_assert_eq!(cell, Stability::Drift);
                        }
                        seen_drift |= cell == Stability::Drift;
                    }
                }
            }
        }
    }
}
