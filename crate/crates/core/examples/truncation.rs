//! Truncation constants and the effect of preprocessing on heavy-tailed entries.

use vesd::empirical::build_esd;
use vesd::ensemble::{
    sample_wigner, truncation_constants, CustomSampler, EnsembleSpec, EntryLaw, Symmetry, TruncationPolicy,
};
use vesd::metrics::kolmogorov_to_semicircle;
use vesd::spectral::Eigensystem;

fn main() -> vesd::Result<()> {
    let policy = TruncationPolicy::enabled(0.05);
    println!("law,n,threshold,sigma");
    for law in [EntryLaw::StdNormal, EntryLaw::Rademacher, EntryLaw::StandardizedExponential] {
        for n in [100, 10_000] {
            let c = truncation_constants(law, Symmetry::RealSymmetric, policy.threshold(n))?;
            println!("{},{n},{:.4},{:.6}", law.name(), c.threshold, c.sigma);
        }
    }
    let n = 400;
    let law = EntryLaw::Custom(CustomSampler::StudentT11);
    for spec in [
        EnsembleSpec::wigner(n, law, Symmetry::RealSymmetric),
        EnsembleSpec::wigner(n, law, Symmetry::RealSymmetric).with_preprocessing(policy),
    ] {
        let eig = Eigensystem::compute(&sample_wigner(&spec, 4, 0)?)?;
        let d = kolmogorov_to_semicircle(&build_esd(&eig.esd())?).distance;
        println!("{}: ESD distance {d:.4}", spec.tag());
    }
    Ok(())
}
