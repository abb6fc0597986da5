//! Wigner ensembles: matrix sampling, unit vectors and entry preprocessing.

mod law;
pub mod stream;
mod truncation;
mod vector;

use std::fmt;
use std::str::FromStr;

use faer::Mat;
use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};
use stream::{mix, StreamKey, StreamRole};

pub use law::{CustomSampler, EntryLaw};
pub use truncation::{preprocess_entries, truncation_constants, TruncationConstants};
pub use vector::{sample_unit_vector, UnitVectorSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    RealSymmetric,
    ComplexHermitian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// `W = X/√n` with `X_ij = conj(X_ji)` drawn i.i.d. on and above the diagonal.
    DirectEntries,
    /// `W = (M + M*)/√(2n)` with i.i.d. standard (complex) normal `M`.
    GaussianSymmetrized,
}

/// Truncation, centralization and rescaling of the off-diagonal entries at the
/// threshold `ε_n n^{1/4}` with `ε_n = n^{-epsilon_exponent}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub enabled: bool,
    pub epsilon_exponent: f64,
    pub remove_diagonal: bool,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            enabled: false,
            epsilon_exponent: 0.05,
            remove_diagonal: false,
        }
    }
}

impl TruncationPolicy {
    pub fn enabled(epsilon_exponent: f64) -> Self {
        Self {
            enabled: true,
            epsilon_exponent,
            remove_diagonal: true,
        }
    }

    pub fn epsilon(&self, n: usize) -> f64 {
        (n as f64).powf(-self.epsilon_exponent)
    }

    /// `ε_n n^{1/4}`.
    pub fn threshold(&self, n: usize) -> f64 {
        self.epsilon(n) * (n as f64).powf(0.25)
    }

    pub fn validate(&self) -> Result<()> {
        let e = self.epsilon_exponent;
        if !(e > 0.0 && e < 0.25) {
            return Err(Error::InvalidParameter(format!(
                "epsilon_exponent must lie in (0, 1/4), got {e}"
            )));
        }
        Ok(())
    }
}

/// Recipe for sampling one Wigner matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EnsembleSpecRepr", into = "EnsembleSpecRepr")]
pub struct EnsembleSpec {
    pub n: usize,
    pub symmetry: Symmetry,
    pub entry_law: EntryLaw,
    pub preprocessing: TruncationPolicy,
    pub construction: Construction,
}

impl EnsembleSpec {
    /// Gaussian orthogonal ensemble built as `(M + Mᵀ)/√(2n)`.
    pub fn goe(n: usize) -> Self {
        Self {
            n,
            symmetry: Symmetry::RealSymmetric,
            entry_law: EntryLaw::StdNormal,
            preprocessing: TruncationPolicy::default(),
            construction: Construction::GaussianSymmetrized,
        }
    }

    /// Gaussian unitary ensemble built as `(M + M*)/√(2n)`.
    pub fn gue(n: usize) -> Self {
        Self {
            symmetry: Symmetry::ComplexHermitian,
            ..Self::goe(n)
        }
    }

    /// Direct-entry Wigner matrix with the given entry law.
    pub fn wigner(n: usize, entry_law: EntryLaw, symmetry: Symmetry) -> Self {
        Self {
            n,
            symmetry,
            entry_law,
            preprocessing: TruncationPolicy::default(),
            construction: Construction::DirectEntries,
        }
    }

    /// Named presets used by the command line: `goe`, `gue`, or an entry law
    /// name (direct real symmetric entries).
    pub fn preset(name: &str, n: usize) -> Result<Self> {
        match name {
            "goe" => Ok(Self::goe(n)),
            "gue" => Ok(Self::gue(n)),
            other => {
                let law: EntryLaw = other.parse().map_err(|_| {
                    Error::Config(format!(
                        "unknown ensemble `{other}` (expected goe, gue or an entry law name)"
                    ))
                })?;
                Ok(Self::wigner(n, law, Symmetry::RealSymmetric))
            }
        }
    }

    pub fn with_n(&self, n: usize) -> Self {
        Self { n, ..self.clone() }
    }

    pub fn with_preprocessing(self, preprocessing: TruncationPolicy) -> Self {
        Self {
            preprocessing,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Dimension { n: self.n, min: 2 });
        }
        if self.construction == Construction::GaussianSymmetrized
            && self.entry_law != EntryLaw::StdNormal
        {
            return Err(Error::ConstructionLaw(self.entry_law.name()));
        }
        self.preprocessing.validate()
    }

    /// Short label used in result tables, e.g. `goe`, `gue-trunc`,
    /// `wigner-rademacher-real`.
    pub fn tag(&self) -> String {
        let mut tag = match (self.construction, self.symmetry) {
            (Construction::GaussianSymmetrized, Symmetry::RealSymmetric) => "goe".to_string(),
            (Construction::GaussianSymmetrized, Symmetry::ComplexHermitian) => "gue".to_string(),
            (Construction::DirectEntries, sym) => format!(
                "wigner-{}-{}",
                self.entry_law.name().replace("custom:", ""),
                match sym {
                    Symmetry::RealSymmetric => "real",
                    Symmetry::ComplexHermitian => "complex",
                }
            ),
        };
        if self.preprocessing.enabled {
            tag.push_str("-trunc");
        } else if self.preprocessing.remove_diagonal {
            tag.push_str("-nodiag");
        }
        tag
    }

    /// Plain-text `key = value` form.
    pub fn to_config_string(&self) -> String {
        toml::to_string(self).expect("ensemble spec always serializes")
    }

    pub fn from_config_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    fn stream_salt(&self) -> u64 {
        let law = self.entry_law.name();
        let law_code = mix(&law.bytes().map(u64::from).collect::<Vec<_>>());
        mix(&[
            self.n as u64,
            self.symmetry as u64,
            self.construction as u64,
            law_code,
        ])
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnsembleSpecRepr {
    n: usize,
    symmetry: Symmetry,
    entry_law: String,
    construction: Construction,
    #[serde(default)]
    truncate: bool,
    #[serde(default = "default_epsilon_exponent")]
    epsilon_exponent: f64,
    #[serde(default)]
    remove_diagonal: bool,
}

fn default_epsilon_exponent() -> f64 {
    TruncationPolicy::default().epsilon_exponent
}

impl TryFrom<EnsembleSpecRepr> for EnsembleSpec {
    type Error = Error;

    fn try_from(r: EnsembleSpecRepr) -> Result<Self> {
        let spec = EnsembleSpec {
            n: r.n,
            symmetry: r.symmetry,
            entry_law: EntryLaw::from_str(&r.entry_law)?,
            preprocessing: TruncationPolicy {
                enabled: r.truncate,
                epsilon_exponent: r.epsilon_exponent,
                remove_diagonal: r.remove_diagonal,
            },
            construction: r.construction,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<EnsembleSpec> for EnsembleSpecRepr {
    fn from(s: EnsembleSpec) -> Self {
        EnsembleSpecRepr {
            n: s.n,
            symmetry: s.symmetry,
            entry_law: s.entry_law.name(),
            construction: s.construction,
            truncate: s.preprocessing.enabled,
            epsilon_exponent: s.preprocessing.epsilon_exponent,
            remove_diagonal: s.preprocessing.remove_diagonal,
        }
    }
}

/// Dense Hermitian matrix, stored in full.
#[derive(Debug, Clone)]
pub enum HermitianMatrix {
    Real(Mat<f64>),
    Complex(Mat<Complex64>),
}

impl HermitianMatrix {
    pub fn zeros(n: usize, symmetry: Symmetry) -> Self {
        match symmetry {
            Symmetry::RealSymmetric => HermitianMatrix::Real(Mat::zeros(n, n)),
            Symmetry::ComplexHermitian => HermitianMatrix::Complex(Mat::zeros(n, n)),
        }
    }

    /// Real symmetric matrix from row slices. Fails if not square or not symmetric.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix rows must form a square".into()));
        }
        let m = HermitianMatrix::Real(Mat::from_fn(n, n, |i, j| rows[i][j]));
        if !m.is_hermitian() {
            return Err(Error::InvalidParameter("matrix is not symmetric".into()));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        match self {
            HermitianMatrix::Real(m) => m.nrows(),
            HermitianMatrix::Complex(m) => m.nrows(),
        }
    }

    pub fn symmetry(&self) -> Symmetry {
        match self {
            HermitianMatrix::Real(_) => Symmetry::RealSymmetric,
            HermitianMatrix::Complex(_) => Symmetry::ComplexHermitian,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        match self {
            HermitianMatrix::Real(m) => Complex64::new(m[(i, j)], 0.0),
            HermitianMatrix::Complex(m) => m[(i, j)],
        }
    }

    /// Exact check of `W_ij = conj(W_ji)`.
    pub fn is_hermitian(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i..n).all(|j| self.entry(i, j) == self.entry(j, i).conj()))
    }

    pub fn to_complex(&self) -> Mat<Complex64> {
        match self {
            HermitianMatrix::Real(m) => {
                Mat::from_fn(m.nrows(), m.ncols(), |i, j| Complex64::new(m[(i, j)], 0.0))
            }
            HermitianMatrix::Complex(m) => m.clone(),
        }
    }

    pub(crate) fn zero_diagonal(&mut self) {
        match self {
            HermitianMatrix::Real(m) => {
                for i in 0..m.nrows() {
                    m[(i, i)] = 0.0;
                }
            }
            HermitianMatrix::Complex(m) => {
                for i in 0..m.nrows() {
                    m[(i, i)] = Complex64::new(0.0, 0.0);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SeedRecord {
    pub master_seed: u64,
    pub replicate: u64,
}

#[derive(Debug, Clone)]
pub struct MatrixSample {
    pub matrix: HermitianMatrix,
    /// Law of the `√n`-scaled off-diagonal entries, when known.
    pub entry_law: Option<EntryLaw>,
    pub seed_record: SeedRecord,
}

impl MatrixSample {
    /// Wraps an explicit matrix (no sampling provenance).
    pub fn from_matrix(matrix: HermitianMatrix) -> Self {
        Self {
            matrix,
            entry_law: None,
            seed_record: SeedRecord::default(),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.dim()
    }
}

/// Samples one Wigner matrix. Deterministic in `(spec, seed, replicate)`.
pub fn sample_wigner(spec: &EnsembleSpec, seed: u64, replicate: u64) -> Result<MatrixSample> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = StreamKey::new(seed, replicate, StreamRole::Matrix, spec.stream_salt()).rng();

    let matrix = match (spec.construction, spec.symmetry) {
        (Construction::GaussianSymmetrized, Symmetry::RealSymmetric) => {
            let scale = 1.0 / (2.0 * n as f64).sqrt();
            let mut w = Mat::<f64>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    w[(i, j)] = StandardNormal.sample(&mut rng);
                }
            }
            // Symmetrize in place: w_ij = w_ji = (g_ij + g_ji) * scale.
            for i in 0..n {
                for j in i..n {
                    let s = (w[(i, j)] + w[(j, i)]) * scale;
                    w[(i, j)] = s;
                    w[(j, i)] = s;
                }
            }
            HermitianMatrix::Real(w)
        }
        (Construction::GaussianSymmetrized, Symmetry::ComplexHermitian) => {
            let scale = 1.0 / (2.0 * n as f64).sqrt();
            let mut w = Mat::<Complex64>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    w[(i, j)] = EntryLaw::StdNormal.sample_complex(&mut rng);
                }
            }
            for i in 0..n {
                for j in i..n {
                    let s = (w[(i, j)] + w[(j, i)].conj()) * scale;
                    w[(i, j)] = s;
                    w[(j, i)] = s.conj();
                }
            }
            HermitianMatrix::Complex(w)
        }
        (Construction::DirectEntries, Symmetry::RealSymmetric) => {
            let scale = 1.0 / (n as f64).sqrt();
            let mut w = Mat::<f64>::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let x = spec.entry_law.sample(&mut rng) * scale;
                    w[(i, j)] = x;
                    w[(j, i)] = x;
                }
            }
            HermitianMatrix::Real(w)
        }
        (Construction::DirectEntries, Symmetry::ComplexHermitian) => {
            let scale = 1.0 / (n as f64).sqrt();
            let mut w = Mat::<Complex64>::zeros(n, n);
            for i in 0..n {
                w[(i, i)] = Complex64::new(spec.entry_law.sample(&mut rng) * scale, 0.0);
                for j in i + 1..n {
                    let x = spec.entry_law.sample_complex(&mut rng) * scale;
                    w[(i, j)] = x;
                    w[(j, i)] = x.conj();
                }
            }
            HermitianMatrix::Complex(w)
        }
    };

    let raw = MatrixSample {
        matrix,
        entry_law: Some(spec.entry_law),
        seed_record: SeedRecord {
            master_seed: seed,
            replicate,
        },
    };
    if spec.preprocessing.enabled {
        preprocess_entries(&raw, &spec.preprocessing)
    } else if spec.preprocessing.remove_diagonal {
        let mut out = raw;
        out.matrix.zero_diagonal();
        Ok(out)
    } else {
        Ok(raw)
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n = {})", self.tag(), self.n)
    }
}
