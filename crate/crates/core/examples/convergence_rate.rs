//! Mean VESD distance over replicates for growing n and the fitted rate.
//!
//! `cargo run --release --example convergence_rate -- 100` (replicates)

use vesd::ensemble::{EnsembleSpec, UnitVectorSpec};
use vesd::harness::{aggregate_and_fit, run_experiment, ExperimentConfig};

fn main() -> vesd::Result<()> {
    let reps: usize = std::env::args().nth(1).map_or(Ok(50), |a| a.parse()).expect("replicates must be an integer");
    let cfg = ExperimentConfig::new(EnsembleSpec::goe(2), vec![50, 100, 200, 400], reps, 2024)
        .with_vectors(vec![UnitVectorSpec::Uniform01, UnitVectorSpec::Poisson1]);
    let summary = aggregate_and_fit(&run_experiment(&cfg)?)?;
    for (law, fit) in summary.laws.iter().map(|(k, v)| (k.as_str(), v)).chain([("esd", &summary.esd)]) {
        println!(
            "{law}: slope {:.3}, C in C/sqrt(n) = {:.3}, r^2 {:.4}",
            fit.slope, fit.fixed_exponent_coefficient, fit.r_squared
        );
        for (n, d) in &fit.mean_distance {
            println!("  n = {n:4}  mean distance {d:.5}");
        }
    }
    Ok(())
}
