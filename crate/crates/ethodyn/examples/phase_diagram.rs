//! Stability phase diagram over the (N, gamma) plane.
//!
//! Sweeps a log-spaced parameter-count axis against a linear work-rate
//! axis, labels each cell stable or drift, and writes the grid CSV plus an
//! SVG with the critical boundary and the reference operating point into
//! out/phase/.

use std::path::Path;

use ethodyn::experiments::{emit, run_figure3, PhaseGridSpec};

fn main() -> ethodyn::Result<()> {
    let spec = PhaseGridSpec {
        n_points: 25,
        gamma_points: 25,
        ..PhaseGridSpec::default()
    };
    let report = run_figure3(&spec)?;

    println!(
        "operating point: N = {:.1e}, gamma = {}",
        report.output_f64("operating_point_n").unwrap(),
        report.output_f64("operating_point_gamma").unwrap()
    );
    println!(
        "gamma_crit there: {:.4} -> {}",
        report.output_f64("gamma_crit_at_operating_n").unwrap(),
        report.outputs["operating_point_label"]
            .as_str()
            .unwrap_or("?")
    );
    println!(
        "grid cells: {} stable, {} drift",
        report.outputs["stable_cell_count"], report.outputs["drift_cell_count"]
    );

    for path in emit(&report, Path::new("out/phase"))? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
