//! The statistics layer: t-tests and the sign test from first principles.
//!
//! The p-values come from the regularized incomplete beta function
//! (Lanczos log-gamma plus a Lentz continued fraction), not a stats
//! dependency. Prints a small p-value table, a pooled two-sample test on
//! synthetic arms, and the exact binomial sign test.

use ethodyn::stats::{pooled_t_test, sign_test, t_test_p_value};

fn main() -> ethodyn::Result<()> {
    println!("{:>6} {:>24}", "t", "p two-sided (df = 38)");
    for t in [0.0, 1.0, 2.5, 7.0, 14.2] {
        println!("{:>6} {:>24.6e}", t, t_test_p_value(t, 38)?);
    }

    // Two arms with separated means and modest spread.
    let a: Vec<f64> = (0..20).map(|i| 1.6 + 0.01 * i as f64).collect();
    let b: Vec<f64> = (0..20).map(|i| 0.02 * i as f64).collect();
    let result = pooled_t_test(&a, &b)?;
    println!(
        "\npooled test: t = {:.4}, df = {}, p = {:.6e}",
        result.t_stat, result.df, result.p_two_sided
    );

    // Sign test: 10 increases out of 10 paired observations.
    let deltas = vec![0.2; 10];
    println!(
        "sign test, 10/10 positive: p = {:.6e} (= 2 * 0.5^10)",
        sign_test(&deltas)?
    );

    // One tie discarded, 9/10 positive.
    let mut mixed = vec![0.2; 9];
    mixed.push(0.0);
    println!("sign test, 9 positive + 1 tie: p = {:.6e}", sign_test(&mixed)?);
    Ok(())
}
