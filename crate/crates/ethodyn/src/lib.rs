//! Entropy dynamics of goal distributions under noisy optimization.
//!
//! `ethodyn` models misalignment as entropy growth: a system's objectives
//! form a probability distribution over goal states, optimization pressure
//! through noisy and misspecified channels produces entropy in that
//! distribution, and corrective alignment work removes it. The crate
//! provides, layer by layer:
//!
//! - [`entropy`]: goal distributions, Shannon entropy, KL divergence, the
//!   chain-rule entropy rate, and alignment energy.
//! - [`production`]: entropy production rates of the gradient-noise and
//!   proxy-gaming channels.
//! - [`threshold`]: the critical work rate gamma_crit = (lambda_max/2) ln N
//!   and phase classification over the (N, gamma) plane.
//! - [`dynamics`]: the coarse-grained drift law dS/dt = sigma - gamma,
//!   integrated by RK4 with per-step diffusion, in reproducible ensembles.
//! - [`micro`]: a mechanistic gradient-descent testbed whose entropy traces
//!   exhibit the same second-law behavior.
//! - [`stats`]: pooled t-tests, the exact binomial sign test, and the
//!   special functions behind them, implemented from first principles.
//! - [`experiments`]: canned, replayable studies (drift ensembles, the
//!   critical-threshold table, the phase diagram, ablation, sensitivity)
//!   that emit CSV/SVG artifacts plus an `inputs.json` for replay.
//!
//! Every stochastic routine draws from splitmix64 substreams keyed by
//! `(master_seed, trial_index)` ([`rng`]), so identical inputs produce
//! bit-identical outputs regardless of thread count.
//!
//! Start with the runnable examples, one per capability:
//!
//! ```text
//! cargo run -p ethodyn --example entropy_basics
//! cargo run -p ethodyn --example critical_boundary
//! cargo run -p ethodyn --example phase_diagram
//! cargo run -p ethodyn --example drift_ensemble
//! cargo run -p ethodyn --example micro_second_law
//! cargo run -p ethodyn --example ablation_additivity
//! cargo run -p ethodyn --example sensitivity_sweep
//! cargo run -p ethodyn --example pooled_ttest
//! ```
//!
//! The same capabilities are scriptable through the thin `ethodyn` binary;
//! see the repository README for the subcommand reference.

pub mod cli;
pub mod config;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod experiments;
pub mod micro;
pub mod production;
pub mod rng;
pub mod stats;
pub mod svg;
pub mod threshold;

pub use error::{Error, Result};
