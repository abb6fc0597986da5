//! Averaged `x*(W − z)^{-1} x` against the semicircle transform along
//! `Im z = 2/√n`.

use vesd::ensemble::EnsembleSpec;
use vesd::harness::{bias_scan, BiasRoute, BiasScanConfig, ExperimentConfig};

fn main() -> vesd::Result<()> {
    vesd::harness::pin_mmap_threshold();
    let cfg = ExperimentConfig::new(EnsembleSpec::goe(2), vec![100, 200, 400], 100, 11);
    let scan = BiasScanConfig {
        route: BiasRoute::Eigen,
        ..BiasScanConfig::at(vec![-1.5, 0.0, 0.5, 1.5, 3.0], 2.0)
    };
    println!("n,u,v,abs_bias,std_error,ratio_to_1/(nv)");
    for r in bias_scan(&cfg, &scan)? {
        println!("{},{},{:.4},{:.5},{:.5},{:.3}", r.n, r.u, r.v, r.abs_bias, r.std_error, r.ratio);
    }
    Ok(())
}
