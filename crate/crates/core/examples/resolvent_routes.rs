//! `x*(W − z)^{-1} x` from the eigendecomposition and from a direct solve.

use vesd::empirical::{build_vesd, empirical_stieltjes};
use vesd::ensemble::{sample_unit_vector, sample_wigner, EnsembleSpec, UnitVectorSpec};
use vesd::semicircle::semicircle_stieltjes;
use vesd::spectral::{decompose, resolvent_quadratic_forms};
use vesd::Complex64;

fn main() -> vesd::Result<()> {
    let n = 300;
    let w = sample_wigner(&EnsembleSpec::gue(n), 9, 0)?;
    let x = sample_unit_vector(&UnitVectorSpec::Uniform01, n, 9, 0)?;
    let vesd = build_vesd(&decompose(&w, &x)?)?;
    let zs: Vec<Complex64> = [-2.5, -1.0, 0.0, 1.0, 2.5].iter().map(|&u| Complex64::new(u, 0.1)).collect();
    let direct = resolvent_quadratic_forms(&w, &x, &zs)?;
    println!("z,eigen_sum,direct_solve,semicircle");
    for (z, d) in zs.iter().zip(direct) {
        let e = empirical_stieltjes(&vesd, *z)?;
        let s = semicircle_stieltjes(*z)?;
        println!("{z},{e:.6},{d:.6},{s:.6}");
    }
    Ok(())
}
