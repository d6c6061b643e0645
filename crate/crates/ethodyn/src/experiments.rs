//! Canned experiment drivers.
//!
//! Each driver runs one reproducible study end to end and returns an
//! [`ExperimentReport`]: the fully resolved inputs, named scalar outputs,
//! and the rendered artifacts (CSV tables, SVG charts). [`emit`] writes the
//! artifacts plus an `inputs.json` snapshot into a directory; feeding that
//! snapshot back through the matching `run_*_from` function reproduces
//! every artifact byte for byte, regardless of thread count.
//!
//! The drift experiment (`figure2`), the critical-threshold table
//! (`table1`), the phase diagram (`figure3`), the three-arm production
//! ablation, and the parameter sensitivity sweep live here, along with
//! report-producing wrappers for single ensemble and micro-agent runs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::defaults;
use crate::dynamics::{run_ensemble, EnsembleSummary, MacroConfig};
use crate::entropy::GoalDistribution;
use crate::error::Result;
use crate::micro::{run_micro, second_law_check, MicroConfig};
use crate::production::{sigma_gaming, sigma_noise, ProductionParams};
use crate::stats::pooled_t_test;
use crate::svg::Chart;
use crate::threshold::{
    classify_stability, gamma_crit, lin_spaced, log_spaced, phase_grid, Stability, SystemScale,
};

/// A regularized arm counts as stable when its final ensemble mean stays
/// below this pin (nats).
pub const STABILITY_PIN: f64 = 0.05;

/// One rendered output file.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    /// File name within the report's output directory.
    pub name: String,
    pub content: String,
}

/// A completed experiment: resolved inputs, named outputs, artifacts.
///
/// `inputs` fully determines `outputs` and `artifacts`; replaying a report
/// from its serialized inputs reproduces both exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    /// The resolved input document, as written to `inputs.json`.
    pub inputs: Value,
    /// Named scalar and series results.
    pub outputs: BTreeMap<String, Value>,
    pub artifacts: Vec<Artifact>,
}

impl ExperimentReport {
    /// Looks up a scalar output as f64.
    pub fn output_f64(&self, key: &str) -> Option<f64> {
        self.outputs.get(key).and_then(Value::as_f64)
    }

    /// Finds an artifact by file name.
    pub fn artifact(&self, name: &str) -> Option<&Artifact> {
        self.artifacts.iter().find(|a| a.name == name)
    }

    /// Single JSON object with the whole report (artifact names only).
    pub fn summary_json(&self) -> Value {
        json!({
            "name": self.name,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "artifacts": self.artifacts.iter().map(|a| a.name.clone()).collect::<Vec<_>>(),
        })
    }
}

/// Writes every artifact plus `inputs.json` into `out_dir` (created if
/// absent) and returns the written paths.
pub fn emit(report: &ExperimentReport, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::with_capacity(report.artifacts.len() + 1);
    for artifact in &report.artifacts {
        let path = out_dir.join(&artifact.name);
        fs::write(&path, &artifact.content)?;
        written.push(path);
    }
    let path = out_dir.join("inputs.json");
    let mut doc = serde_json::to_string_pretty(&report.inputs)?;
    doc.push('\n');
    fs::write(&path, doc)?;
    written.push(path);
    Ok(written)
}

fn num(v: f64) -> Value {
    json!(v)
}

/// Keeps at most ~`target` points per series so charts stay small; the
/// CSV artifacts always carry the full-resolution data.
fn thin(values: &[f64], target: usize) -> Vec<f64> {
    let step = (values.len() / target).max(1);
    let mut out: Vec<f64> = values.iter().copied().step_by(step).collect();
    if !values.is_empty() && !(values.len() - 1).is_multiple_of(step) {
        out.push(*values.last().expect("non-empty"));
    }
    out
}

struct ChartArm<'a> {
    summary: &'a EnsembleSummary,
    color: &'a str,
    label: String,
}

fn ensemble_chart(title: &str, arms: &[ChartArm<'_>]) -> String {
    let horizon = arms
        .iter()
        .map(|a| *a.summary.times.last().expect("non-empty summary"))
        .fold(0.0, f64::max);
    let mut y_max: f64 = 0.5;
    for arm in arms {
        for (m, s) in arm.summary.mean_path.iter().zip(&arm.summary.std_path) {
            y_max = y_max.max(m + s);
        }
    }
    y_max *= 1.08;

    let mut chart = Chart::new(title, "time", "entropy (nats)", (0.0, horizon), (0.0, y_max));
    for arm in arms {
        let times = thin(&arm.summary.times, 500);
        let mean = thin(&arm.summary.mean_path, 500);
        let std = thin(&arm.summary.std_path, 500);
        let lo: Vec<f64> = mean.iter().zip(&std).map(|(m, s)| (m - s).max(0.0)).collect();
        let hi: Vec<f64> = mean.iter().zip(&std).map(|(m, s)| m + s).collect();
        chart.band(&times, &lo, &hi, arm.color, 0.15);
        chart.polyline(&times, &mean, arm.color, 2.0);
        let at = times.len() * 3 / 5;
        chart.label(times[at], mean[at] + 0.04 * y_max, &arm.label, arm.color);
    }
    chart.render()
}

/// Resolved inputs of the controlled drift experiment: two arms that share
/// every parameter except the alignment-work rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Figure2Inputs {
    pub baseline: MacroConfig,
    pub regularized: MacroConfig,
}

impl Figure2Inputs {
    /// Derives both arms from one base config: the base itself is the
    /// baseline arm; the regularized arm differs only in gamma.
    pub fn from_base(base: MacroConfig) -> Self {
        let regularized = MacroConfig {
            gamma: defaults::GAMMA_REGULARIZED,
            ..base.clone()
        };
        Self {
            baseline: base,
            regularized,
        }
    }

    /// Calibrated default arms sharing `seed`.
    pub fn from_seed(seed: u64) -> Self {
        Self::from_base(MacroConfig {
            master_seed: seed,
            ..MacroConfig::default()
        })
    }
}

/// Controlled drift experiment with the calibrated defaults: a baseline
/// ensemble (no alignment work) against a regularized one, differing only
/// in gamma, plus a pooled t-test on the final values.
pub fn run_figure2(seed: u64) -> Result<ExperimentReport> {
    run_figure2_from(&Figure2Inputs::from_seed(seed))
}

/// [`run_figure2`] from explicit (for example replayed) inputs.
pub fn run_figure2_from(inputs: &Figure2Inputs) -> Result<ExperimentReport> {
    let baseline = run_ensemble(&inputs.baseline)?;
    let regularized = run_ensemble(&inputs.regularized)?;
    let ttest = pooled_t_test(
        &regularized.summary.final_values,
        &baseline.summary.final_values,
    )?;

    let mut outputs = BTreeMap::new();
    outputs.insert("baseline_final_mean".into(), num(baseline.summary.final_mean));
    outputs.insert("baseline_final_std".into(), num(baseline.summary.final_std));
    outputs.insert(
        "regularized_final_mean".into(),
        num(regularized.summary.final_mean),
    );
    outputs.insert(
        "regularized_final_std".into(),
        num(regularized.summary.final_std),
    );
    outputs.insert("t_stat".into(), num(ttest.t_stat));
    outputs.insert("df".into(), json!(ttest.df));
    outputs.insert("p_two_sided".into(), num(ttest.p_two_sided));
    outputs.insert("degenerate".into(), json!(ttest.degenerate));

    let svg = ensemble_chart(
        "Ethical entropy drift: baseline vs regularized",
        &[
            ChartArm {
                summary: &baseline.summary,
                color: "#c0392b",
                label: format!("baseline (gamma = {})", inputs.baseline.gamma),
            },
            ChartArm {
                summary: &regularized.summary,
                color: "#2980b9",
                label: format!("regularized (gamma = {})", inputs.regularized.gamma),
            },
        ],
    );

    Ok(ExperimentReport {
        name: "figure2".into(),
        inputs: serde_json::to_value(inputs)?,
        outputs,
        artifacts: vec![
            Artifact {
                name: "figure2_baseline.csv".into(),
                content: baseline.summary.to_csv(),
            },
            Artifact {
                name: "figure2_regularized.csv".into(),
                content: regularized.summary.to_csv(),
            },
            Artifact {
                name: "figure2.svg".into(),
                content: svg,
            },
        ],
    })
}

/// One row of the critical-threshold comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceSystem {
    /// Display name of the system.
    pub system: String,
    pub n_params: f64,
    pub lambda_max: f64,
    /// Published critical work rate this row is compared against.
    pub gamma_crit_paper: f64,
}

/// The three published reference systems.
pub fn reference_systems() -> Vec<ReferenceSystem> {
    vec![
        ReferenceSystem {
            system: "LLM-7B (GPT-style)".into(),
            n_params: 7e9,
            lambda_max: 1.2,
            gamma_crit_paper: 13.64,
        },
        ReferenceSystem {
            system: "RLHF Agent (Fine-tuned)".into(),
            n_params: 13e9,
            lambda_max: 2.5,
            gamma_crit_paper: 29.58,
        },
        ReferenceSystem {
            system: "Multimodal Policy Net".into(),
            n_params: 50e9,
            lambda_max: 3.0,
            gamma_crit_paper: 37.78,
        },
    ]
}

/// Resolved inputs of the threshold table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Table1Inputs {
    pub systems: Vec<ReferenceSystem>,
}

fn slug(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for c in name.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('_') && !out.is_empty() {
            out.push('_');
        }
    }
    out.trim_end_matches('_').to_string()
}

/// Critical-threshold table: formula value vs published value per system.
pub fn run_table1() -> Result<ExperimentReport> {
    run_table1_from(&Table1Inputs {
        systems: reference_systems(),
    })
}

/// [`run_table1`] from explicit (for example replayed) inputs.
pub fn run_table1_from(inputs: &Table1Inputs) -> Result<ExperimentReport> {
    let mut csv = String::from("system,N,lambda_max,gamma_crit_formula,gamma_crit_paper,delta_pct\n");
    let mut outputs = BTreeMap::new();
    let mut max_abs_delta: f64 = 0.0;
    for row in &inputs.systems {
        let scale = SystemScale::new(row.n_params, row.lambda_max)?;
        let formula = gamma_crit(&scale);
        let delta_pct = (row.gamma_crit_paper - formula) / formula * 100.0;
        max_abs_delta = max_abs_delta.max(delta_pct.abs());
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.system, row.n_params, row.lambda_max, formula, row.gamma_crit_paper, delta_pct
        ));
        let key = slug(&row.system);
        outputs.insert(format!("gamma_crit_formula_{key}"), num(formula));
        outputs.insert(format!("delta_pct_{key}"), num(delta_pct));
    }
    outputs.insert("max_abs_delta_pct".into(), num(max_abs_delta));

    Ok(ExperimentReport {
        name: "table1".into(),
        inputs: serde_json::to_value(inputs)?,
        outputs,
        artifacts: vec![Artifact {
            name: "table1.csv".into(),
            content: csv,
        }],
    })
}

/// Resolved inputs of the phase diagram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseGridSpec {
    /// Parameter-count axis bounds (log-spaced grid).
    pub n_min: f64,
    pub n_max: f64,
    pub n_points: usize,
    /// Work-rate axis bounds (linearly spaced grid).
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub gamma_points: usize,
    pub lambda_max: f64,
    /// Marked (N, gamma) operating point.
    pub operating_point: (f64, f64),
}

impl Default for PhaseGridSpec {
    fn default() -> Self {
        Self {
            n_min: 1e6,
            n_max: 1e12,
            n_points: 10,
            gamma_min: 0.0,
            gamma_max: 40.0,
            gamma_points: 10,
            lambda_max: defaults::REF_LAMBDA_MAX,
            operating_point: (defaults::REF_N_PARAMS, defaults::GAMMA_REGULARIZED),
        }
    }
}

/// Phase diagram over (N, gamma): stability grid CSV plus an SVG showing
/// the critical boundary and the operating point.
pub fn run_figure3(spec: &PhaseGridSpec) -> Result<ExperimentReport> {
    let n_axis = log_spaced(spec.n_min, spec.n_max, spec.n_points)?;
    let gamma_axis = lin_spaced(spec.gamma_min, spec.gamma_max, spec.gamma_points)?;
    let grid = phase_grid(&n_axis, &gamma_axis, spec.lambda_max)?;

    let (op_n, op_gamma) = spec.operating_point;
    let op_scale = SystemScale::new(op_n, spec.lambda_max)?;
    let op_label = classify_stability(op_gamma, &op_scale)?;
    let stable_cells: usize = grid
        .labels
        .iter()
        .flatten()
        .filter(|&&l| l == Stability::Stable)
        .count();
    let total_cells = spec.n_points * spec.gamma_points;

    // Boundary curve sampled directly from the threshold formula.
    let boundary_n = log_spaced(spec.n_min, spec.n_max, 200)?;
    let boundary_gamma: Vec<f64> = boundary_n
        .iter()
        .map(|&n| gamma_crit(&SystemScale::new(n, spec.lambda_max).expect("axis checked")))
        .collect();

    let mut chart = Chart::new(
        "Stability phase diagram",
        "log10(N)",
        "gamma (nats per unit time)",
        (spec.n_min.log10(), spec.n_max.log10()),
        (spec.gamma_min, spec.gamma_max),
    );
    let visible: Vec<(f64, f64)> = boundary_n
        .iter()
        .zip(&boundary_gamma)
        .filter(|&(_, &g)| g >= spec.gamma_min && g <= spec.gamma_max)
        .map(|(&n, &g)| (n.log10(), g))
        .collect();
    let xs: Vec<f64> = visible.iter().map(|&(x, _)| x).collect();
    let ys: Vec<f64> = visible.iter().map(|&(_, y)| y).collect();
    chart.polyline(&xs, &ys, "#2c3e50", 2.0);
    if let (Some(&mid_x), Some(&mid_y)) = (xs.get(xs.len() / 2), ys.get(ys.len() / 2)) {
        chart.label(mid_x, (mid_y + spec.gamma_max) / 2.0, "stable", "#2980b9");
        chart.label(mid_x, (mid_y + spec.gamma_min) / 2.0, "drift", "#c0392b");
    }
    chart.point(op_n.log10(), op_gamma, 5.0, "black");
    chart.label(
        op_n.log10(),
        op_gamma + 0.04 * (spec.gamma_max - spec.gamma_min),
        &format!("operating point ({op_label})"),
        "black",
    );

    let mut outputs = BTreeMap::new();
    outputs.insert("operating_point_n".into(), num(op_n));
    outputs.insert("operating_point_gamma".into(), num(op_gamma));
    outputs.insert("operating_point_label".into(), json!(op_label));
    outputs.insert(
        "gamma_crit_at_operating_n".into(),
        num(gamma_crit(&op_scale)),
    );
    outputs.insert("stable_cell_count".into(), json!(stable_cells));
    outputs.insert("drift_cell_count".into(), json!(total_cells - stable_cells));
    outputs.insert("boundary_n".into(), json!(boundary_n));
    outputs.insert("boundary_gamma".into(), json!(boundary_gamma));

    Ok(ExperimentReport {
        name: "figure3".into(),
        inputs: serde_json::to_value(spec)?,
        outputs,
        artifacts: vec![
            Artifact {
                name: "figure3_grid.csv".into(),
                content: grid.to_csv(),
            },
            Artifact {
                name: "figure3.svg".into(),
                content: chart.render(),
            },
        ],
    })
}

/// Resolved inputs of the production ablation: three arms sharing the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AblationInputs {
    pub noise_only: MacroConfig,
    pub gaming_only: MacroConfig,
    pub combined: MacroConfig,
}

impl AblationInputs {
    /// Component arms zero the other channel and use the independently
    /// calibrated per-arm diffusion; the combined arm is the base itself.
    pub fn from_base(base: MacroConfig) -> Self {
        let noise_only = MacroConfig {
            sigma_gaming_rate: 0.0,
            xi: defaults::XI_NOISE_ARM,
            ..base.clone()
        };
        let gaming_only = MacroConfig {
            sigma_noise_rate: 0.0,
            xi: defaults::XI_GAMING_ARM,
            ..base.clone()
        };
        Self {
            noise_only,
            gaming_only,
            combined: base,
        }
    }

    /// Calibrated default arms sharing `seed`.
    pub fn from_seed(seed: u64) -> Self {
        Self::from_base(MacroConfig {
            master_seed: seed,
            ..MacroConfig::default()
        })
    }
}

/// Three-arm production ablation: noise-only, gaming-only, combined.
///
/// Reports the realized final mean and std per arm, the additivity
/// residual of the configured production rates (combined minus the sum of
/// the components), and the noiseless projections s0 + rate * horizon that
/// the rates were calibrated to.
pub fn run_ablation(seed: u64) -> Result<ExperimentReport> {
    run_ablation_from(&AblationInputs::from_seed(seed))
}

/// [`run_ablation`] from explicit (for example replayed) inputs.
pub fn run_ablation_from(inputs: &AblationInputs) -> Result<ExperimentReport> {
    let noise = run_ensemble(&inputs.noise_only)?;
    let gaming = run_ensemble(&inputs.gaming_only)?;
    let combined = run_ensemble(&inputs.combined)?;

    let combined_rate = inputs.combined.sigma_total();
    let component_sum = inputs.noise_only.sigma_total() + inputs.gaming_only.sigma_total();
    let residual_rate = combined_rate - component_sum;
    let residual_pct = if component_sum > 0.0 {
        residual_rate / component_sum * 100.0
    } else {
        0.0
    };
    let project = |config: &MacroConfig| {
        config.s0 + (config.sigma_total() - config.gamma) * config.horizon()
    };

    let mut outputs = BTreeMap::new();
    for (arm, result) in [
        ("noise_only", &noise),
        ("gaming_only", &gaming),
        ("combined", &combined),
    ] {
        outputs.insert(format!("{arm}_final_mean"), num(result.summary.final_mean));
        outputs.insert(format!("{arm}_final_std"), num(result.summary.final_std));
    }
    outputs.insert("combined_production_rate".into(), num(combined_rate));
    outputs.insert("component_production_sum".into(), num(component_sum));
    outputs.insert("additivity_residual_rate".into(), num(residual_rate));
    outputs.insert("additivity_residual_pct".into(), num(residual_pct));
    outputs.insert(
        "projected_noise_only_final".into(),
        num(project(&inputs.noise_only)),
    );
    outputs.insert(
        "projected_gaming_only_final".into(),
        num(project(&inputs.gaming_only)),
    );
    outputs.insert(
        "projected_combined_final".into(),
        num(project(&inputs.combined)),
    );

    let svg = ensemble_chart(
        "Production ablation: per-channel drift",
        &[
            ChartArm {
                summary: &noise.summary,
                color: "#e67e22",
                label: "noise only".into(),
            },
            ChartArm {
                summary: &gaming.summary,
                color: "#16a085",
                label: "gaming only".into(),
            },
            ChartArm {
                summary: &combined.summary,
                color: "#2c3e50",
                label: "combined".into(),
            },
        ],
    );

    Ok(ExperimentReport {
        name: "ablation".into(),
        inputs: serde_json::to_value(inputs)?,
        outputs,
        artifacts: vec![
            Artifact {
                name: "ablation_noise_only.csv".into(),
                content: noise.summary.to_csv(),
            },
            Artifact {
                name: "ablation_gaming_only.csv".into(),
                content: gaming.summary.to_csv(),
            },
            Artifact {
                name: "ablation_combined.csv".into(),
                content: combined.summary.to_csv(),
            },
            Artifact {
                name: "ablation.svg".into(),
                content: svg,
            },
        ],
    })
}

/// Parameter swept by the sensitivity analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    Eta,
    SigmaEpsSq,
    LambdaMax,
}

impl SweepParam {
    pub const ALL: [SweepParam; 3] = [
        SweepParam::Eta,
        SweepParam::SigmaEpsSq,
        SweepParam::LambdaMax,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SweepParam::Eta => "eta",
            SweepParam::SigmaEpsSq => "sigma_eps_sq",
            SweepParam::LambdaMax => "lambda_max",
        }
    }

    /// Published percent variation this sweep is compared against (a
    /// recorded reference target, not an assertion).
    pub fn reference_variation_pct(self) -> f64 {
        match self {
            SweepParam::Eta => 12.3,
            SweepParam::SigmaEpsSq => 9.8,
            SweepParam::LambdaMax => 14.1,
        }
    }
}

/// Multiplicative factors applied to each swept parameter.
pub const SWEEP_FACTORS: [f64; 5] = [0.5, 0.75, 1.0, 1.25, 1.5];

/// Per-channel rate scaling induced by perturbing one production input.
///
/// The perturbation enters through the production constructors against a
/// fixed reference parameter set, so the path from (eta, sigma_eps^2,
/// lambda_max) into the drift is the model's own: the noise channel scales
/// as eta^2 * lambda_max * tr(Sigma), the gaming channel linearly in eta
/// with the divergence factor held fixed.
pub fn rate_scales(param: SweepParam, factor: f64) -> Result<(f64, f64)> {
    let reference = ProductionParams::new(
        defaults::REF_ETA,
        defaults::REF_LAMBDA_MAX,
        defaults::REF_SIGMA_EPS_SQ,
        0.0,
        0.0,
    )?;
    let (eta, lambda, trace) = match param {
        SweepParam::Eta => (
            defaults::REF_ETA * factor,
            defaults::REF_LAMBDA_MAX,
            defaults::REF_SIGMA_EPS_SQ,
        ),
        SweepParam::SigmaEpsSq => (
            defaults::REF_ETA,
            defaults::REF_LAMBDA_MAX,
            defaults::REF_SIGMA_EPS_SQ * factor,
        ),
        SweepParam::LambdaMax => (
            defaults::REF_ETA,
            defaults::REF_LAMBDA_MAX * factor,
            defaults::REF_SIGMA_EPS_SQ,
        ),
    };
    let perturbed = ProductionParams::new(eta, lambda, trace, 0.0, 0.0)?;
    let noise_scale = sigma_noise(&perturbed) / sigma_noise(&reference);

    // Fixed witness pair: any distribution pair with positive divergence
    // gives the same ratio since the gaming rate is linear in eta.
    let proxy = GoalDistribution::new(vec![0.6, 0.4])?;
    let truth = GoalDistribution::uniform(2)?;
    let gaming_scale = sigma_gaming(perturbed.eta(), &proxy, &truth)?
        / sigma_gaming(reference.eta(), &proxy, &truth)?;
    Ok((noise_scale, gaming_scale))
}

/// One sweep point: a perturbed baseline and its regularized counterpart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensitivityArm {
    pub param: SweepParam,
    pub factor: f64,
    pub baseline: MacroConfig,
    pub regularized: MacroConfig,
}

/// Resolved inputs of the sensitivity sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensitivityInputs {
    pub arms: Vec<SensitivityArm>,
}

impl SensitivityInputs {
    /// Builds the 3 x 5 sweep from a base config. The base's production
    /// rates are rescaled per point through [`rate_scales`]; every arm
    /// shares the base seed (common random numbers across the sweep).
    pub fn from_base(base: MacroConfig) -> Result<Self> {
        let mut arms = Vec::with_capacity(SweepParam::ALL.len() * SWEEP_FACTORS.len());
        for param in SweepParam::ALL {
            for factor in SWEEP_FACTORS {
                let (noise_scale, gaming_scale) = rate_scales(param, factor)?;
                let baseline = MacroConfig {
                    sigma_noise_rate: base.sigma_noise_rate * noise_scale,
                    sigma_gaming_rate: base.sigma_gaming_rate * gaming_scale,
                    ..base.clone()
                };
                let regularized = MacroConfig {
                    gamma: defaults::GAMMA_REGULARIZED,
                    ..baseline.clone()
                };
                arms.push(SensitivityArm {
                    param,
                    factor,
                    baseline,
                    regularized,
                });
            }
        }
        Ok(Self { arms })
    }

    /// Calibrated default sweep (10 trials per arm) from `seed`.
    pub fn from_seed(seed: u64) -> Result<Self> {
        Self::from_base(MacroConfig {
            trials: defaults::SENSITIVITY_TRIALS,
            master_seed: seed,
            ..MacroConfig::default()
        })
    }
}

/// Sensitivity sweep: eta, sigma_eps^2, lambda_max each swept over
/// +-50%, coupled into the drift through the production formulas.
///
/// Reports the percent variation of the baseline final mean per parameter,
/// (max - min) / baseline * 100, and whether any regularized arm leaves
/// the stable pin.
pub fn run_sensitivity(seed: u64) -> Result<ExperimentReport> {
    run_sensitivity_from(&SensitivityInputs::from_seed(seed)?)
}

/// [`run_sensitivity`] from explicit (for example replayed) inputs.
pub fn run_sensitivity_from(inputs: &SensitivityInputs) -> Result<ExperimentReport> {
    let mut csv = String::from(
        "param,factor,baseline_final_mean,baseline_final_std,regularized_final_mean,regularized_stable\n",
    );
    let mut per_param: BTreeMap<&'static str, Vec<(f64, f64)>> = BTreeMap::new();
    let mut flips = 0usize;

    for arm in &inputs.arms {
        let baseline = run_ensemble(&arm.baseline)?;
        let regularized = run_ensemble(&arm.regularized)?;
        let stable = regularized.summary.final_mean < STABILITY_PIN;
        if !stable {
            flips += 1;
        }
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            arm.param.label(),
            arm.factor,
            baseline.summary.final_mean,
            baseline.summary.final_std,
            regularized.summary.final_mean,
            stable
        ));
        per_param
            .entry(arm.param.label())
            .or_default()
            .push((arm.factor, baseline.summary.final_mean));
    }

    let mut outputs = BTreeMap::new();
    for (label, points) in &per_param {
        let reference_mean = points
            .iter()
            .find(|(f, _)| *f == 1.0)
            .map(|&(_, m)| m)
            .unwrap_or(f64::NAN);
        let max = points.iter().map(|&(_, m)| m).fold(f64::MIN, f64::max);
        let min = points.iter().map(|&(_, m)| m).fold(f64::MAX, f64::min);
        let variation = (max - min) / reference_mean * 100.0;
        outputs.insert(format!("variation_pct_{label}"), num(variation));
        outputs.insert(format!("baseline_mean_{label}"), num(reference_mean));
    }
    for param in SweepParam::ALL {
        outputs.insert(
            format!("reference_variation_pct_{}", param.label()),
            num(param.reference_variation_pct()),
        );
    }
    outputs.insert("regularized_flips".into(), json!(flips));
    outputs.insert("any_flip".into(), json!(flips > 0));

    Ok(ExperimentReport {
        name: "sensitivity".into(),
        inputs: serde_json::to_value(inputs)?,
        outputs,
        artifacts: vec![Artifact {
            name: "sensitivity_sweep.csv".into(),
            content: csv,
        }],
    })
}

/// Resolved inputs of a plain ensemble run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateInputs {
    pub config: MacroConfig,
    /// When set, the single trajectory of this trial index is also emitted.
    pub trial: Option<u64>,
}

/// Single macro ensemble: summary CSV plus an optional per-trial trace.
pub fn run_simulate(inputs: &SimulateInputs) -> Result<ExperimentReport> {
    let result = run_ensemble(&inputs.config)?;
    let mut artifacts = vec![Artifact {
        name: "simulate_ensemble.csv".into(),
        content: result.summary.to_csv(),
    }];
    if let Some(trial) = inputs.trial {
        let index = (trial as usize).min(inputs.config.trials - 1);
        artifacts.push(Artifact {
            name: format!("simulate_trial_{index}.csv"),
            content: result.trajectories[index].to_csv(),
        });
    }

    let mut outputs = BTreeMap::new();
    outputs.insert("final_mean".into(), num(result.summary.final_mean));
    outputs.insert("final_std".into(), num(result.summary.final_std));
    outputs.insert("horizon".into(), num(inputs.config.horizon()));
    outputs.insert("trials".into(), json!(inputs.config.trials));

    Ok(ExperimentReport {
        name: "simulate".into(),
        inputs: serde_json::to_value(inputs)?,
        outputs,
        artifacts,
    })
}

/// Resolved inputs of a micro-agent run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MicroRunInputs {
    pub config: MicroConfig,
    /// When set, a second-law check over this many seeds is included.
    pub second_law_seeds: Option<usize>,
}

/// Micro-agent run: entropy trace CSV, optional multi-seed second-law
/// check.
pub fn run_micro_experiment(inputs: &MicroRunInputs) -> Result<ExperimentReport> {
    let trace = run_micro(&inputs.config)?;
    let mut outputs = BTreeMap::new();
    outputs.insert("s0".into(), num(trace.s0()));
    outputs.insert("s_final".into(), num(trace.s_final()));
    outputs.insert(
        "final_dist".into(),
        json!(trace.final_dist.probs().to_vec()),
    );
    if let Some(n_seeds) = inputs.second_law_seeds {
        let report = second_law_check(&inputs.config, n_seeds)?;
        outputs.insert("n_seeds".into(), json!(report.n_seeds));
        outputs.insert(
            "fraction_increased".into(),
            num(report.fraction_increased),
        );
        outputs.insert("mean_delta_s".into(), num(report.mean_delta_s));
        outputs.insert("sign_test_p".into(), num(report.sign_test_p));
        outputs.insert("degenerate".into(), json!(report.degenerate));
    }

    Ok(ExperimentReport {
        name: "micro".into(),
        inputs: serde_json::to_value(inputs)?,
        outputs,
        artifacts: vec![Artifact {
            name: "micro_trace.csv".into(),
            content: trace.to_csv(),
        }],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Small, fast base config for structure tests.
    fn fast_base() -> MacroConfig {
        MacroConfig {
            steps: 200,
            trials: 4,
            master_seed: 7,
            ..MacroConfig::default()
        }
    }

    #[test]
    fn figure2_arms_differ_only_in_gamma() {
        let inputs = Figure2Inputs::from_seed(42);
        let mut base = serde_json::to_value(&inputs.baseline).unwrap();
        let mut reg = serde_json::to_value(&inputs.regularized).unwrap();
        assert_ne!(base["gamma"], reg["gamma"]);
        base["gamma"] = json!(null);
        reg["gamma"] = json!(null);
        assert_eq!(base, reg);
        assert_eq!(inputs.baseline.master_seed, 42);
    }

    #[test]
    fn figure2_report_contract() {
        let report = run_figure2_from(&Figure2Inputs::from_base(fast_base())).unwrap();
        assert_eq!(report.name, "figure2");
        for name in ["figure2_baseline.csv", "figure2_regularized.csv", "figure2.svg"] {
            assert!(report.artifact(name).is_some(), "missing {name}");
        }
        let csv = &report.artifact("figure2_baseline.csv").unwrap().content;
        assert!(csv.starts_with("step,time,mean,std\n"));
        assert_eq!(csv.lines().count(), 202);
        assert!(report.artifact("figure2.svg").unwrap().content.contains("<polyline"));
        for key in [
            "baseline_final_mean",
            "regularized_final_mean",
            "t_stat",
            "p_two_sided",
        ] {
            assert!(report.output_f64(key).is_some(), "missing output {key}");
        }
        assert_eq!(report.outputs["df"], json!(6));
    }

    #[test]
    fn figure2_replay_is_byte_identical() {
        let inputs = Figure2Inputs::from_base(fast_base());
        let first = run_figure2_from(&inputs).unwrap();
        let json = serde_json::to_string(&first.inputs).unwrap();
        let replayed: Figure2Inputs = serde_json::from_str(&json).unwrap();
        let second = run_figure2_from(&replayed).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn emit_writes_all_artifacts_and_inputs() {
        let report = run_table1().unwrap();
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("nested").join("run");
        let written = emit(&report, &out).unwrap();
        assert_eq!(written.len(), 2);
        assert!(out.join("table1.csv").exists());
        let inputs: Table1Inputs =
            serde_json::from_str(&std::fs::read_to_string(out.join("inputs.json")).unwrap())
                .unwrap();
        assert_eq!(inputs.systems.len(), 3);
    }

    #[test]
    fn table1_formula_and_deltas() {
        let report = run_table1().unwrap();
        let csv = &report.artifact("table1.csv").unwrap().content;
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "system,N,lambda_max,gamma_crit_formula,gamma_crit_paper,delta_pct"
        );
        assert_eq!(lines.len(), 4);
        let formula: Vec<f64> = lines[1..]
            .iter()
            .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
            .collect();
        assert!((formula[0] - 13.6015).abs() < 1e-3, "{}", formula[0]);
        assert!((formula[1] - 29.1103).abs() < 1e-3);
        assert!((formula[2] - 36.9529).abs() < 1e-3);
        assert!(report.output_f64("max_abs_delta_pct").unwrap() <= 2.5);
        assert!(report.output_f64("delta_pct_llm_7b_gpt_style").unwrap() < 0.3);
    }

    #[test]
    fn figure3_operating_point_and_boundary() {
        let report = run_figure3(&PhaseGridSpec::default()).unwrap();
        assert_eq!(report.outputs["operating_point_label"], json!("stable"));
        let crit = report.output_f64("gamma_crit_at_operating_n").unwrap();
        assert!((crit - 13.6015).abs() < 1e-3);

        // Every sampled boundary point sits exactly on the formula.
        let n = report.outputs["boundary_n"].as_array().unwrap();
        let g = report.outputs["boundary_gamma"].as_array().unwrap();
        assert_eq!(n.len(), 200);
        for (nv, gv) in n.iter().zip(g) {
            let n = nv.as_f64().unwrap();
            let g = gv.as_f64().unwrap();
            assert!((g - 0.6 * n.ln()).abs() < 1e-12);
        }

        let csv = &report.artifact("figure3_grid.csv").unwrap().content;
        let gamma0_rows: Vec<&str> = csv
            .lines()
            .skip(1)
            .filter(|l| l.starts_with("0,"))
            .collect();
        assert_eq!(gamma0_rows.len(), 10);
        assert!(gamma0_rows.iter().all(|l| l.ends_with(",drift")));
        let svg = &report.artifact("figure3.svg").unwrap().content;
        assert!(svg.contains("operating point (stable)"));
    }

    #[test]
    fn ablation_rates_are_exactly_additive() {
        let report = run_ablation_from(&AblationInputs::from_base(fast_base())).unwrap();
        assert_eq!(report.output_f64("additivity_residual_rate").unwrap(), 0.0);
        assert_eq!(report.output_f64("additivity_residual_pct").unwrap(), 0.0);
        let projected = report.output_f64("projected_combined_final").unwrap();
        let noise = report.output_f64("projected_noise_only_final").unwrap();
        let gaming = report.output_f64("projected_gaming_only_final").unwrap();
        let s0 = fast_base().s0;
        assert!((projected - (noise + gaming - s0)).abs() < 1e-12);
        for name in [
            "ablation_noise_only.csv",
            "ablation_gaming_only.csv",
            "ablation_combined.csv",
            "ablation.svg",
        ] {
            assert!(report.artifact(name).is_some(), "missing {name}");
        }
    }

    #[test]
    fn ablation_default_projections_hit_calibration() {
        let inputs = AblationInputs::from_seed(defaults::MASTER_SEED);
        assert_eq!(inputs.noise_only.xi, defaults::XI_NOISE_ARM);
        assert_eq!(inputs.gaming_only.xi, defaults::XI_GAMING_ARM);
        assert_eq!(inputs.combined.xi, defaults::XI);
        let project = |c: &MacroConfig| c.s0 + c.sigma_total() * c.horizon();
        assert!((project(&inputs.noise_only) - 1.12).abs() < 1e-12);
        assert!((project(&inputs.gaming_only) - 0.89).abs() < 1e-12);
        assert!((project(&inputs.combined) - 1.69).abs() < 1e-12);
    }

    #[test]
    fn rate_scales_follow_production_formulas() {
        // Noise: quadratic in eta, linear in the other two. Gaming:
        // linear in eta, flat in the others.
        let (n, g) = rate_scales(SweepParam::Eta, 1.5).unwrap();
        assert!((n - 2.25).abs() < 1e-12);
        assert!((g - 1.5).abs() < 1e-12);
        let (n, g) = rate_scales(SweepParam::SigmaEpsSq, 0.5).unwrap();
        assert!((n - 0.5).abs() < 1e-12);
        assert!((g - 1.0).abs() < 1e-12);
        let (n, g) = rate_scales(SweepParam::LambdaMax, 1.25).unwrap();
        assert!((n - 1.25).abs() < 1e-12);
        assert!((g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sensitivity_structure_and_flips() {
        let inputs = SensitivityInputs::from_base(fast_base()).unwrap();
        assert_eq!(inputs.arms.len(), 15);
        let unit = inputs
            .arms
            .iter()
            .find(|a| a.param == SweepParam::Eta && a.factor == 1.0)
            .unwrap();
        assert_eq!(unit.baseline, fast_base());
        assert_eq!(unit.regularized.gamma, defaults::GAMMA_REGULARIZED);

        let report = run_sensitivity_from(&inputs).unwrap();
        let csv = &report.artifact("sensitivity_sweep.csv").unwrap().content;
        assert_eq!(csv.lines().count(), 16);
        assert!(csv.starts_with(
            "param,factor,baseline_final_mean,baseline_final_std,regularized_final_mean,regularized_stable\n"
        ));
        assert_eq!(report.outputs["any_flip"], json!(false));
        for param in SweepParam::ALL {
            let v = report
                .output_f64(&format!("variation_pct_{}", param.label()))
                .unwrap();
            assert!(v.is_finite() && v >= 0.0, "{v}");
        }
        assert_eq!(
            report.output_f64("reference_variation_pct_eta").unwrap(),
            12.3
        );
    }

    #[test]
    fn simulate_report_optional_trial_trace() {
        let inputs = SimulateInputs {
            config: fast_base(),
            trial: Some(2),
        };
        let report = run_simulate(&inputs).unwrap();
        assert!(report.artifact("simulate_ensemble.csv").is_some());
        let trace = report.artifact("simulate_trial_2.csv").unwrap();
        assert!(trace.content.starts_with("step,time,s\n"));
        assert!(report.output_f64("final_mean").is_some());

        let bare = run_simulate(&SimulateInputs {
            config: fast_base(),
            trial: None,
        })
        .unwrap();
        assert_eq!(bare.artifacts.len(), 1);
    }

    #[test]
    fn micro_report_with_second_law_block() {
        let config = MicroConfig {
            steps: 300,
            ..MicroConfig::default()
        };
        let report = run_micro_experiment(&MicroRunInputs {
            config: config.clone(),
            second_law_seeds: Some(8),
        })
        .unwrap();
        assert!(report.artifact("micro_trace.csv").is_some());
        assert!(report.output_f64("fraction_increased").is_some());
        assert_eq!(report.outputs["n_seeds"], json!(8));

        let bare = run_micro_experiment(&MicroRunInputs {
            config,
            second_law_seeds: None,
        })
        .unwrap();
        assert!(bare.output_f64("fraction_increased").is_none());
        assert!(bare.output_f64("s_final").is_some());
    }

    #[test]
    fn slug_flattens_display_names() {
        assert_eq!(slug("LLM-7B (GPT-style)"), "llm_7b_gpt_style");
        assert_eq!(slug("RLHF Agent (Fine-tuned)"), "rlhf_agent_fine_tuned");
    }
}
