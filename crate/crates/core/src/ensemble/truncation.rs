//! Truncation, centralization and rescaling of Wigner entries.
//!
//! For each off-diagonal entry `X = √n W_ij`:
//!
//! ```text
//! X̂ = (X·1{|X| ≤ c} − m) / σ₁,   c = ε_n n^{1/4},
//! m  = E[X·1{|X| ≤ c}],   σ₁² = E|X·1{|X| ≤ c} − m|²
//! ```
//!
//! The diagonal is zeroed when the policy asks for it, and otherwise only
//! truncated.

use num_complex::Complex64;

use super::law::EntryLaw;
use super::stream::{mix, StreamKey, StreamRole};
use super::{HermitianMatrix, MatrixSample, Symmetry, TruncationPolicy};
use crate::{Error, Result};

const MONTE_CARLO_DRAWS: usize = 1_000_000;
const TRUNCATION_SEED: u64 = 0x005e_ed74_7275_6e63;
const SIGMA_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConstants {
    /// `c = ε_n n^{1/4}`.
    pub threshold: f64,
    /// `m`, the mean of the truncated entry.
    pub mean: Complex64,
    /// `σ₁`, the standard deviation of the truncated, centered entry.
    pub sigma: f64,
}

/// Population constants of the truncated entry law. Closed form for standard
/// normal and Rademacher entries, a fixed-seed Monte Carlo estimate with 10⁶
/// draws otherwise.
pub fn truncation_constants(
    law: EntryLaw,
    symmetry: Symmetry,
    threshold: f64,
) -> Result<TruncationConstants> {
    if !(threshold > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "truncation threshold must be positive, got {threshold}"
        )));
    }
    let c = threshold;
    let (mean, sigma) = match (law, symmetry) {
        (EntryLaw::StdNormal, Symmetry::RealSymmetric) => {
            // E[X² 1{|X| ≤ c}] = erf(c/√2) − 2cφ(c)
            let phi = (-0.5 * c * c).exp() / (2.0 * std::f64::consts::PI).sqrt();
            let var = libm::erf(c / std::f64::consts::SQRT_2) - 2.0 * c * phi;
            (Complex64::new(0.0, 0.0), var.max(0.0).sqrt())
        }
        (EntryLaw::StdNormal, Symmetry::ComplexHermitian) => {
            // |X|² ~ Exp(1)
            let var = 1.0 - (-c * c).exp() * (1.0 + c * c);
            (Complex64::new(0.0, 0.0), var.max(0.0).sqrt())
        }
        // |X| = 1 in both the real and the complex case.
        (EntryLaw::Rademacher, _) => {
            let sigma = if c >= 1.0 { 1.0 } else { 0.0 };
            (Complex64::new(0.0, 0.0), sigma)
        }
        _ => monte_carlo_constants(law, symmetry, c),
    };
    if sigma <= SIGMA_FLOOR {
        return Err(Error::DegenerateTruncation { sigma });
    }
    Ok(TruncationConstants {
        threshold: c,
        mean,
        sigma,
    })
}

fn monte_carlo_constants(law: EntryLaw, symmetry: Symmetry, c: f64) -> (Complex64, f64) {
    let salt = mix(&[
        symmetry as u64,
        c.to_bits(),
        mix(&law.name().bytes().map(u64::from).collect::<Vec<_>>()),
    ]);
    let mut rng = StreamKey::new(TRUNCATION_SEED, 0, StreamRole::Truncation, salt).rng();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_sq = 0.0;
    for _ in 0..MONTE_CARLO_DRAWS {
        let x = match symmetry {
            Symmetry::RealSymmetric => Complex64::new(law.sample(&mut rng), 0.0),
            Symmetry::ComplexHermitian => law.sample_complex(&mut rng),
        };
        if x.norm() <= c {
            sum += x;
            sum_sq += x.norm_sqr();
        }
    }
    let draws = MONTE_CARLO_DRAWS as f64;
    let mean = if law.is_symmetric() {
        Complex64::new(0.0, 0.0)
    } else {
        sum / draws
    };
    let var = sum_sq / draws - mean.norm_sqr();
    (mean, var.max(0.0).sqrt())
}

/// Applies the truncation policy to a sampled matrix.
pub fn preprocess_entries(raw: &MatrixSample, policy: &TruncationPolicy) -> Result<MatrixSample> {
    if !policy.enabled {
        return Err(Error::InvalidParameter(
            "preprocess_entries called with a disabled truncation policy".into(),
        ));
    }
    policy.validate()?;
    let law = raw.entry_law.ok_or_else(|| {
        Error::InvalidParameter("preprocessing needs the entry law of the sample".into())
    })?;
    let n = raw.n();
    let constants = truncation_constants(law, raw.matrix.symmetry(), policy.threshold(n))?;
    let root_n = (n as f64).sqrt();
    let c = constants.threshold;
    let transform = |w: Complex64| -> Complex64 {
        let x = w * root_n;
        let t = if x.norm() <= c { x } else { Complex64::new(0.0, 0.0) };
        (t - constants.mean) / constants.sigma / root_n
    };
    let truncate_only = |w: f64| -> f64 {
        if (w * root_n).abs() <= c {
            w
        } else {
            0.0
        }
    };

    let mut matrix = raw.matrix.clone();
    match &mut matrix {
        HermitianMatrix::Real(m) => {
            for i in 0..n {
                m[(i, i)] = if policy.remove_diagonal {
                    0.0
                } else {
                    truncate_only(m[(i, i)])
                };
                for j in i + 1..n {
                    let v = transform(Complex64::new(m[(i, j)], 0.0)).re;
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
        }
        HermitianMatrix::Complex(m) => {
            for i in 0..n {
                let d = if policy.remove_diagonal {
                    0.0
                } else {
                    truncate_only(m[(i, i)].re)
                };
                m[(i, i)] = Complex64::new(d, 0.0);
                for j in i + 1..n {
                    let v = transform(m[(i, j)]);
                    m[(i, j)] = v;
                    m[(j, i)] = v.conj();
                }
            }
        }
    }
    Ok(MatrixSample {
        matrix,
        entry_law: raw.entry_law,
        seed_record: raw.seed_record,
    })
}
