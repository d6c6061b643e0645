//! Command-line interface.
//!
//! One thin binary dispatching to the library: scalar queries print a bare
//! number, experiment subcommands write their artifacts into `--out` and
//! print one `name=value` summary line per output (or, with `--format
//! json`, a single JSON object).
//!
//! Exit codes are a stable contract: 0 success, 2 usage error (from
//! argument parsing), 3 config or validation error, 4 I/O error.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{self, defaults};
use crate::dynamics::MacroConfig;
use crate::entropy::{shannon_entropy, GoalDistribution};
use crate::error::{Error, Result};
use crate::experiments::{
    emit, run_ablation_from, run_figure2_from, run_figure3, run_micro_experiment,
    run_sensitivity_from, run_simulate, run_table1, AblationInputs, ExperimentReport,
    Figure2Inputs, MicroRunInputs, PhaseGridSpec, SensitivityInputs, SimulateInputs,
};
use crate::micro::MicroConfig;
use crate::stats::pooled_t_test;
use crate::threshold::{gamma_crit, SystemScale};

/// Exit code for config parse and validation failures.
pub const EXIT_CONFIG: i32 = 3;
/// Exit code for I/O failures.
pub const EXIT_IO: i32 = 4;

/// Output format of the standard-output summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "ethodyn",
    version,
    about = "Entropy dynamics toolkit: drift ensembles, stability thresholds, experiments",
    arg_required_else_help = true
)]
pub struct Cli {
    /// JSON config file merged over the built-in defaults (strict keys).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Directory for emitted artifacts (created if absent).
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,

    /// Overrides the config's master seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Summary format on standard output.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Shannon entropy (nats) of a goal distribution.
    Entropy {
        /// Comma-separated probabilities, e.g. 0.9,0.1.
        #[arg(long, value_delimiter = ',', required = true)]
        probs: Vec<f64>,
    },
    /// Print the critical alignment-work rate (lambda_max / 2) ln N.
    GammaCrit {
        #[arg(long)]
        lambda_max: f64,
        /// Parameter count N (scientific notation accepted, e.g. 7e9).
        #[arg(long)]
        n: f64,
    },
    /// Phase diagram over (N, gamma): stability grid CSV plus SVG.
    Phase {
        #[arg(long, default_value_t = 1e6)]
        n_min: f64,
        #[arg(long, default_value_t = 1e12)]
        n_max: f64,
        #[arg(long, default_value_t = 10)]
        n_points: usize,
        #[arg(long, default_value_t = 0.0)]
        gamma_min: f64,
        #[arg(long, default_value_t = 40.0)]
        gamma_max: f64,
        #[arg(long, default_value_t = 10)]
        gamma_points: usize,
        #[arg(long, default_value_t = defaults::REF_LAMBDA_MAX)]
        lambda_max: f64,
    },
    /// Run one macro drift ensemble from the (default or given) config.
    Simulate {
        /// Also emit the trace of this trial index.
        #[arg(long)]
        trial: Option<u64>,
    },
    /// Run the micro SGD agent; optionally a multi-seed second-law check.
    Micro {
        /// Number of seeds for the second-law check.
        #[arg(long)]
        second_law_seeds: Option<usize>,
    },
    /// Three-arm production ablation (noise only, gaming only, combined).
    Ablate,
    /// Sensitivity sweep of eta, sigma_eps^2 and lambda_max over +-50%.
    Sensitivity,
    /// Pooled two-sample t-test on two comma-separated samples.
    Ttest {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<f64>,
    },
    /// Controlled drift experiment: baseline vs regularized ensembles.
    Figure2,
    /// Critical-threshold table for the three reference systems.
    Table1,
}

/// Parses argv and runs; returns the process exit code.
///
/// Argument errors exit through clap with code 2 before this returns.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => EXIT_IO,
                _ => EXIT_CONFIG,
            }
        }
    }
}

fn macro_config(cli: &Cli) -> Result<MacroConfig> {
    let mut config = match &cli.config {
        Some(path) => config::load_macro_config(path)?,
        None => MacroConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.master_seed = seed;
    }
    Ok(config)
}

fn micro_config(cli: &Cli) -> Result<MicroConfig> {
    let mut config = match &cli.config {
        Some(path) => config::load_micro_config(path)?,
        None => MicroConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn print_scalar(cli: &Cli, name: &str, value: f64) {
    match cli.format {
        Format::Csv => println!("{value}"),
        Format::Json => println!("{}", serde_json::json!({ name: value })),
    }
}

fn emit_report(cli: &Cli, report: &ExperimentReport) -> Result<()> {
    let written = emit(report, &cli.out)?;
    match cli.format {
        Format::Csv => {
            for (key, value) in &report.outputs {
                println!("{key}={value}");
            }
            for path in &written {
                println!("wrote {}", path.display());
            }
        }
        Format::Json => {
            let mut summary = report.summary_json();
            summary["written"] = serde_json::json!(written
                .iter()
                .map(|p| p.display().to_string())
                .collect::<Vec<_>>());
            println!("{summary}");
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Entropy { probs } => {
            let dist = GoalDistribution::new(probs.clone())?;
            print_scalar(cli, "entropy", shannon_entropy(&dist));
            Ok(())
        }
        Command::GammaCrit { lambda_max, n } => {
            let scale = SystemScale::new(*n, *lambda_max)?;
            print_scalar(cli, "gamma_crit", gamma_crit(&scale));
            Ok(())
        }
        Command::Phase {
            n_min,
            n_max,
            n_points,
            gamma_min,
            gamma_max,
            gamma_points,
            lambda_max,
        } => {
            let spec = PhaseGridSpec {
                n_min: *n_min,
                n_max: *n_max,
                n_points: *n_points,
                gamma_min: *gamma_min,
                gamma_max: *gamma_max,
                gamma_points: *gamma_points,
                lambda_max: *lambda_max,
                ..PhaseGridSpec::default()
            };
            emit_report(cli, &run_figure3(&spec)?)
        }
        Command::Simulate { trial } => {
            let inputs = SimulateInputs {
                config: macro_config(cli)?,
                trial: *trial,
            };
            emit_report(cli, &run_simulate(&inputs)?)
        }
        Command::Micro { second_law_seeds } => {
            let inputs = MicroRunInputs {
                config: micro_config(cli)?,
                second_law_seeds: *second_law_seeds,
            };
            emit_report(cli, &run_micro_experiment(&inputs)?)
        }
        Command::Ablate => {
            let inputs = AblationInputs::from_base(macro_config(cli)?);
            emit_report(cli, &run_ablation_from(&inputs)?)
        }
        Command::Sensitivity => {
            let mut base = macro_config(cli)?;
            if cli.config.is_none() {
                base.trials = defaults::SENSITIVITY_TRIALS;
            }
            let inputs = SensitivityInputs::from_base(base)?;
            emit_report(cli, &run_sensitivity_from(&inputs)?)
        }
        Command::Ttest { a, b } => {
            let result = pooled_t_test(a, b)?;
            match cli.format {
                Format::Csv => {
                    println!("t_stat={}", result.t_stat);
                    println!("df={}", result.df);
                    println!("p_two_sided={}", result.p_two_sided);
                    println!("degenerate={}", result.degenerate);
                }
                Format::Json => println!("{}", serde_json::to_string(&result)?),
            }
            Ok(())
        }
        Command::Figure2 => {
            let inputs = Figure2Inputs::from_base(macro_config(cli)?);
            emit_report(cli, &run_figure2_from(&inputs)?)
        }
        Command::Table1 => emit_report(cli, &run_table1()?),
    }
}
