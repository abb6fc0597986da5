//! Samples from each ensemble and their off-diagonal second moments.
//!
//! `cargo run --release --example ensembles -- 400`

use vesd::ensemble::{sample_wigner, EnsembleSpec, EntryLaw, Symmetry, TruncationPolicy};

fn main() -> vesd::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(Ok(300), |a| a.parse()).expect("n must be an integer");
    let specs = [
        EnsembleSpec::goe(n),
        EnsembleSpec::gue(n),
        EnsembleSpec::wigner(n, EntryLaw::Rademacher, Symmetry::RealSymmetric),
        EnsembleSpec::wigner(n, EntryLaw::StandardizedExponential, Symmetry::ComplexHermitian),
        EnsembleSpec::wigner(n, EntryLaw::StandardizedExponential, Symmetry::RealSymmetric)
            .with_preprocessing(TruncationPolicy::enabled(0.05)),
    ];
    println!("ensemble,n,mean_sq_offdiag_times_n,max_abs_entry,hermitian");
    for spec in specs {
        let w = sample_wigner(&spec, 1, 0)?;
        let mut sum = 0.0;
        let mut max = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let e = w.matrix.entry(i, j);
                max = max.max(e.norm());
                if i != j {
                    sum += e.norm_sqr();
                }
            }
        }
        let second_moment = sum / (n * (n - 1)) as f64 * n as f64;
        println!("{},{n},{second_moment:.4},{max:.4},{}", spec.tag(), w.matrix.is_hermitian());
    }
    Ok(())
}
