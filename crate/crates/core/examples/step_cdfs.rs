//! Writes VESD and ESD step functions of single GOE samples for plotting
//! against the semicircle CDF, one CSV per (n, label).
//!
//! `cargo run --release --example step_cdfs -- out_dir`

use std::fs::{self, File};
use std::path::PathBuf;

use vesd::ensemble::{EnsembleSpec, UnitVectorSpec};
use vesd::harness::{figure_cdfs, ExperimentConfig};
use vesd::metrics::kolmogorov_to_semicircle;

fn main() -> vesd::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "step_cdfs".into()));
    fs::create_dir_all(&dir)?;
    let cfg = ExperimentConfig::new(EnsembleSpec::goe(2), vec![50, 500, 2000], 1, 1)
        .with_vectors(vec![UnitVectorSpec::Uniform01]);
    for (n, label, cdf) in figure_cdfs(&cfg)? {
        let path = dir.join(format!("n{n}_{label}.csv"));
        cdf.write_csv(File::create(&path)?)?;
        println!("{} (distance {:.4})", path.display(), kolmogorov_to_semicircle(&cdf).distance);
    }
    Ok(())
}
