//! One GOE matrix, several unit vectors: Kolmogorov distance of each VESD
//! and of the ESD to the semicircle law.

use vesd::empirical::{build_esd, build_vesd};
use vesd::ensemble::{sample_unit_vector, sample_wigner, EnsembleSpec, UnitVectorSpec};
use vesd::metrics::kolmogorov_to_semicircle;
use vesd::spectral::Eigensystem;

fn main() -> vesd::Result<()> {
    let n = 500;
    let seed = 7;
    let eig = Eigensystem::compute(&sample_wigner(&EnsembleSpec::goe(n), seed, 0)?)?;
    let esd = kolmogorov_to_semicircle(&build_esd(&eig.esd())?);
    println!("distribution,distance,argmax");
    println!("esd,{:.5},{:.4}", esd.distance, esd.argmax_location);
    let laws = UnitVectorSpec::RANDOM_LAWS
        .into_iter()
        .chain([UnitVectorSpec::CanonicalBasis(1), UnitVectorSpec::Constant]);
    for law in laws {
        let x = sample_unit_vector(&law, n, seed, 0)?;
        let report = kolmogorov_to_semicircle(&build_vesd(&eig.project(&x)?)?);
        println!("vesd:{},{:.5},{:.4}", law.name(), report.distance, report.argmax_location);
    }
    Ok(())
}
