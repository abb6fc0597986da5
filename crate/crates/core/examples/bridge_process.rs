//! The partial-sum process of eigenvector weights: one path and the spread
//! of its midpoint value across replicates.

use vesd::empirical::{bridge_path, bridge_relation_check};
use vesd::ensemble::{sample_unit_vector, sample_wigner, EnsembleSpec, UnitVectorSpec};
use vesd::harness::{bridge_study, ExperimentConfig};
use vesd::spectral::decompose;

fn main() -> vesd::Result<()> {
    let n = 200;
    let w = sample_wigner(&EnsembleSpec::goe(n), 5, 0)?;
    let sd = decompose(&w, &sample_unit_vector(&UnitVectorSpec::StdNormal, n, 5, 0)?)?;
    let path = bridge_path(&sd);
    for t in [0.0, 0.1, 0.25, 0.5, 0.75, 1.0] {
        println!("Q({t}) = {:+.4}", path.at(t));
    }
    println!("identity error {:.1e}", bridge_relation_check(&sd));

    let cfg = ExperimentConfig::new(EnsembleSpec::goe(2), vec![100, 400], 200, 5)
        .with_vectors(vec![UnitVectorSpec::StdNormal, UnitVectorSpec::Uniform01]);
    for s in bridge_study(&cfg)?.summaries {
        println!("n = {}, {}: Var Q(1/2) = {:.4} over {} replicates", s.n, s.vector_law, s.var_q_half, s.replicates);
    }
    Ok(())
}
