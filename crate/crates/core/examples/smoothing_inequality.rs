//! Both sides of the smoothing inequality for VESDs of GOE samples.

use vesd::berry_esseen::{smoothing_rhs, verify_inequality, SmoothingConstants};
use vesd::empirical::build_vesd;
use vesd::ensemble::{sample_unit_vector, sample_wigner, EnsembleSpec, UnitVectorSpec};
use vesd::spectral::decompose;

fn main() -> vesd::Result<()> {
    let k = SmoothingConstants::default();
    println!("A = {}, B = {}, tau = {}, gamma = {:.6}, kappa = {:.6}", k.a, k.b, k.tau, k.gamma, k.kappa);
    println!("n,vector,lhs,stieltjes_term,tail_term,modulus_term,rhs,holds");
    for n in [50, 200, 800] {
        let params = k.for_dimension(n, 2.0)?;
        let w = sample_wigner(&EnsembleSpec::goe(n), 3, 0)?;
        for law in [UnitVectorSpec::CanonicalBasis(1), UnitVectorSpec::Uniform01] {
            let x = sample_unit_vector(&law, n, 3, 0)?;
            let h = build_vesd(&decompose(&w, &x)?)?;
            let terms = smoothing_rhs(&h, &params)?;
            let check = verify_inequality(&h, &params)?;
            println!(
                "{n},{},{:.4},{:.4},{:.4},{:.4},{:.3},{}",
                law.name(),
                check.lhs,
                terms.stieltjes_term,
                terms.tail_term,
                terms.modulus_term,
                check.rhs,
                check.holds
            );
        }
    }
    Ok(())
}
