use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal, StudentT};

use crate::{Error, Result};

/// Entry distribution of the (unscaled) Wigner entries `X_ij`.
///
/// Every law is standardized to mean 0 and variance 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryLaw {
    StdNormal,
    Rademacher,
    /// Uniform on `(-√3, √3)`.
    StandardizedUniform,
    /// `Exp(1) - 1`.
    StandardizedExponential,
    Custom(CustomSampler),
}

/// Additional samplers addressable by id (`custom:<id>` in config files).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CustomSampler {
    /// Student t with 11 degrees of freedom, rescaled to unit variance.
    /// Moments exist up to order 10, which makes it a boundary case for the
    /// tenth-moment condition.
    StudentT11,
    /// Laplace with scale `1/√2`.
    Laplace,
}

impl CustomSampler {
    pub const ALL: [CustomSampler; 2] = [CustomSampler::StudentT11, CustomSampler::Laplace];

    pub fn id(self) -> &'static str {
        match self {
            CustomSampler::StudentT11 => "student_t11",
            CustomSampler::Laplace => "laplace",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.id() == id)
    }
}

impl EntryLaw {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            EntryLaw::StdNormal => StandardNormal.sample(rng),
            EntryLaw::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            EntryLaw::StandardizedUniform => {
                let s3 = 3f64.sqrt();
                rng.random_range(-s3..s3)
            }
            EntryLaw::StandardizedExponential => {
                let e: f64 = Exp1.sample(rng);
                e - 1.0
            }
            EntryLaw::Custom(CustomSampler::StudentT11) => {
                let t: f64 = StudentT::new(11.0).expect("valid dof").sample(rng);
                t * (9.0f64 / 11.0).sqrt()
            }
            EntryLaw::Custom(CustomSampler::Laplace) => {
                let e: f64 = Exp1.sample(rng);
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                sign * e * std::f64::consts::FRAC_1_SQRT_2
            }
        }
    }

    /// Complex entry with i.i.d. real and imaginary parts, each the law scaled
    /// by `1/√2`, so that `E|X|² = 1`.
    pub fn sample_complex<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        let re = self.sample(rng);
        let im = self.sample(rng);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Symmetric about zero, so truncation at `±c` keeps the mean at zero.
    pub fn is_symmetric(&self) -> bool {
        !matches!(self, EntryLaw::StandardizedExponential)
    }

    pub fn name(&self) -> String {
        match self {
            EntryLaw::StdNormal => "std_normal".into(),
            EntryLaw::Rademacher => "rademacher".into(),
            EntryLaw::StandardizedUniform => "standardized_uniform".into(),
            EntryLaw::StandardizedExponential => "standardized_exponential".into(),
            EntryLaw::Custom(c) => format!("custom:{}", c.id()),
        }
    }
}

impl fmt::Display for EntryLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for EntryLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(id) = s.strip_prefix("custom:") {
            return CustomSampler::from_id(id)
                .map(EntryLaw::Custom)
                .ok_or_else(|| Error::Config(format!("unknown custom sampler id `{id}`")));
        }
        match s {
            "std_normal" | "normal" => Ok(EntryLaw::StdNormal),
            "rademacher" => Ok(EntryLaw::Rademacher),
            "standardized_uniform" | "uniform" => Ok(EntryLaw::StandardizedUniform),
            "standardized_exponential" | "exponential" => Ok(EntryLaw::StandardizedExponential),
            other => Err(Error::Config(format!("unknown entry law `{other}`"))),
        }
    }
}
