use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Binomial, Distribution, Open01, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use super::stream::{mix, StreamKey, StreamRole};
use crate::{Error, Result};

const MAX_ZERO_DRAWS: usize = 100;

/// Law of the raw vector `z`; the unit vector is always `z / ‖z‖`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum UnitVectorSpec {
    Uniform01,
    StdNormal,
    Poisson1,
    Binomial10_06,
    /// `e_k`, 1-based.
    CanonicalBasis(usize),
    Constant,
}

impl UnitVectorSpec {
    /// Laws used for the rate comparison, in plotting order.
    pub const RANDOM_LAWS: [UnitVectorSpec; 4] = [
        UnitVectorSpec::Uniform01,
        UnitVectorSpec::StdNormal,
        UnitVectorSpec::Poisson1,
        UnitVectorSpec::Binomial10_06,
    ];

    pub fn name(&self) -> String {
        match self {
            UnitVectorSpec::Uniform01 => "uniform01".into(),
            UnitVectorSpec::StdNormal => "normal".into(),
            UnitVectorSpec::Poisson1 => "poisson1".into(),
            UnitVectorSpec::Binomial10_06 => "binomial10_06".into(),
            UnitVectorSpec::CanonicalBasis(k) => format!("basis{k}"),
            UnitVectorSpec::Constant => "constant".into(),
        }
    }

    pub fn is_random(&self) -> bool {
        !matches!(self, UnitVectorSpec::CanonicalBasis(_) | UnitVectorSpec::Constant)
    }

    fn salt(&self, n: usize) -> u64 {
        let code = match self {
            UnitVectorSpec::Uniform01 => 1,
            UnitVectorSpec::StdNormal => 2,
            UnitVectorSpec::Poisson1 => 3,
            UnitVectorSpec::Binomial10_06 => 4,
            UnitVectorSpec::CanonicalBasis(k) => 5 + ((*k as u64) << 8),
            UnitVectorSpec::Constant => 6,
        };
        mix(&[n as u64, code])
    }

    fn draw<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        match self {
            UnitVectorSpec::Uniform01 => (0..n).map(|_| Open01.sample(rng)).collect(),
            UnitVectorSpec::StdNormal => (0..n).map(|_| StandardNormal.sample(rng)).collect(),
            UnitVectorSpec::Poisson1 => {
                let law = Poisson::new(1.0).expect("valid rate");
                (0..n).map(|_| law.sample(rng)).collect()
            }
            UnitVectorSpec::Binomial10_06 => {
                let law = Binomial::new(10, 0.6).expect("valid binomial");
                (0..n).map(|_| law.sample(rng) as f64).collect()
            }
            UnitVectorSpec::CanonicalBasis(k) => {
                let mut z = vec![0.0; n];
                z[k - 1] = 1.0;
                z
            }
            UnitVectorSpec::Constant => vec![1.0; n],
        }
    }
}

/// Draws `x = z / ‖z‖`. All-zero draws of `z` (possible for the Poisson and
/// binomial laws) are redrawn from the same stream.
pub fn sample_unit_vector(
    spec: &UnitVectorSpec,
    n: usize,
    seed: u64,
    replicate: u64,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Dimension { n, min: 1 });
    }
    if let UnitVectorSpec::CanonicalBasis(k) = spec {
        if *k == 0 || *k > n {
            return Err(Error::InvalidParameter(format!(
                "canonical basis index {k} outside 1..={n}"
            )));
        }
    }
    let mut rng = StreamKey::new(seed, replicate, StreamRole::Vector, spec.salt(n)).rng();
    for _ in 0..MAX_ZERO_DRAWS {
        let mut z = spec.draw(n, &mut rng);
        let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            z.iter_mut().for_each(|v| *v /= norm);
            return Ok(z);
        }
    }
    Err(Error::ZeroVector {
        law: spec.name(),
        attempts: MAX_ZERO_DRAWS,
    })
}

impl fmt::Display for UnitVectorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for UnitVectorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("basis") {
            let k = k.trim_start_matches(':');
            return k
                .parse::<usize>()
                .map(UnitVectorSpec::CanonicalBasis)
                .map_err(|_| Error::Config(format!("bad canonical basis index in `{s}`")));
        }
        match s {
            "uniform01" | "uniform" => Ok(UnitVectorSpec::Uniform01),
            "normal" | "std_normal" => Ok(UnitVectorSpec::StdNormal),
            "poisson1" | "poisson" => Ok(UnitVectorSpec::Poisson1),
            "binomial10_06" | "binomial" => Ok(UnitVectorSpec::Binomial10_06),
            "constant" => Ok(UnitVectorSpec::Constant),
            other => Err(Error::Config(format!("unknown unit vector law `{other}`"))),
        }
    }
}

impl TryFrom<String> for UnitVectorSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<UnitVectorSpec> for String {
    fn from(v: UnitVectorSpec) -> String {
        v.name()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    #[test]
    fn canonical_and_constant() {
        let e3 = sample_unit_vector(&UnitVectorSpec::CanonicalBasis(3), 5, 0, 0).unwrap();
        assert_eq!(e3, vec![0.0, 0.0, 1.0, 0.0, 0.0]);
        let c = sample_unit_vector(&UnitVectorSpec::Constant, 4, 0, 0).unwrap();
        assert_eq!(c, vec![0.5; 4]);
    }

    #[test]
    fn uniform_coordinates_positive() {
        let x = sample_unit_vector(&UnitVectorSpec::Uniform01, 1000, 1, 2).unwrap();
        assert!(x.iter().all(|&v| v > 0.0));
        assert!((norm(&x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn every_law_gives_unit_norm_deterministically() {
        for law in UnitVectorSpec::RANDOM_LAWS {
            for n in [1, 2, 17, 300] {
                let a = sample_unit_vector(&law, n, 8, 3).unwrap();
                let b = sample_unit_vector(&law, n, 8, 3).unwrap();
                assert_eq!(a, b);
                assert!((norm(&a) - 1.0).abs() < 1e-12, "{law} n={n}");
            }
        }
    }

    #[test]
    fn small_poisson_vectors_resample_zero_draws() {
        // P(z = 0) = e^{-1} at n = 1, so some replicates need a redraw.
        for rep in 0..200 {
            let x = sample_unit_vector(&UnitVectorSpec::Poisson1, 1, 4, rep).unwrap();
            assert_eq!(x, vec![1.0]);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(sample_unit_vector(&UnitVectorSpec::Uniform01, 0, 0, 0).is_err());
        assert!(sample_unit_vector(&UnitVectorSpec::CanonicalBasis(0), 3, 0, 0).is_err());
        assert!(sample_unit_vector(&UnitVectorSpec::CanonicalBasis(4), 3, 0, 0).is_err());
    }

    #[test]
    fn names_parse() {
        for law in [
            UnitVectorSpec::Uniform01,
            UnitVectorSpec::StdNormal,
            UnitVectorSpec::Poisson1,
            UnitVectorSpec::Binomial10_06,
            UnitVectorSpec::CanonicalBasis(12),
            UnitVectorSpec::Constant,
        ] {
            assert_eq!(law.name().parse::<UnitVectorSpec>().unwrap(), law);
        }
        assert!("cauchy".parse::<UnitVectorSpec>().is_err());
    }
}
