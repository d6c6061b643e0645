//! Goal distributions and their entropy bookkeeping.
//!
//! Builds a few distributions, measures entropy in nats, compares a proxy
//! objective against the true one with KL divergence, and checks the
//! chain-rule entropy rate against a finite difference.

use ethodyn::entropy::{
    alignment_energy, entropy_rate_chain_rule, kl_divergence, max_entropy, shannon_entropy,
    AlignmentEnergyParams, GoalDistribution,
};

fn main() -> ethodyn::Result<()> {
    let concentrated = GoalDistribution::new(vec![0.9, 0.1])?;
    println!(
        "S(0.9, 0.1)            = {:.6} nats",
        shannon_entropy(&concentrated)
    );

    let uniform = GoalDistribution::uniform(32)?;
    println!(
        "S(uniform over 32)     = {:.6} nats (ln 32 = {:.6})",
        shannon_entropy(&uniform),
        max_entropy(32)?
    );

    let one_hot = GoalDistribution::one_hot(32, 0)?;
    println!("S(one-hot)             = {:.6} nats", shannon_entropy(&one_hot));

    // A proxy objective that leaks mass onto unintended goals.
    let truth = GoalDistribution::new(vec![0.9, 0.05, 0.05])?;
    let proxy = GoalDistribution::new(vec![0.7, 0.2, 0.1])?;
    println!(
        "D_KL(proxy || true)    = {:.6} nats",
        kl_divergence(&proxy, &truth)?
    );

    // Chain rule: dS/dt = -sum (ln p_i + 1) dp_i/dt for a conserving flow.
    let p = GoalDistribution::new(vec![0.5, 0.3, 0.2])?;
    let dp = [-0.02, 0.015, 0.005];
    let rate = entropy_rate_chain_rule(&p, &dp)?;
    let eps = 1e-6;
    let shifted = GoalDistribution::new(
        p.probs().iter().zip(&dp).map(|(x, d)| x + eps * d).collect(),
    )?;
    let fd = (shannon_entropy(&shifted) - shannon_entropy(&p)) / eps;
    println!("chain-rule dS/dt       = {rate:.9}");
    println!("finite-difference      = {fd:.9}");

    // Alignment energy E = -k0 * T_e * S: more entropy, lower energy.
    let params = AlignmentEnergyParams::new(1.0, 1.0)?;
    println!(
        "E at S = 0.32          = {:.4}",
        alignment_energy(0.32, &params)
    );
    println!(
        "E at S = ln 32         = {:.4}",
        alignment_energy(max_entropy(32)?, &params)
    );
    Ok(())
}
