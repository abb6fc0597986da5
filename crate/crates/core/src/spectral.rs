//! Eigendecomposition of sampled matrices and the weights `|u_i* x|²`.
//!
//! The eigensolver and the dense LU solver are faer's. Eigenvalues are stored
//! in ascending order together with the weight of their eigenvector.

use faer::linalg::solvers::Solve;
use faer::{Col, Mat, Side};
use num_complex::Complex64;

use crate::ensemble::{HermitianMatrix, MatrixSample, UnitVectorSpec};
use crate::{Error, Result};

const WEIGHT_SUM_TOL: f64 = 1e-10;
const NEGATIVE_WEIGHT_TOL: f64 = 1e-12;
const UNIT_NORM_TOL: f64 = 1e-10;

/// Ascending eigenvalues paired with nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    eigenvalues: Vec<f64>,
    weights: Vec<f64>,
    vector_id: Option<UnitVectorSpec>,
}

impl SpectralData {
    pub fn new(eigenvalues: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() || eigenvalues.len() != weights.len() {
            return Err(Error::Weights(format!(
                "need equally many eigenvalues and weights, got {} and {}",
                eigenvalues.len(),
                weights.len()
            )));
        }
        if eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite eigenvalue".into()));
        }
        if eigenvalues.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("eigenvalues must be ascending".into()));
        }
        let weights = validate_weights(weights)?;
        Ok(Self {
            eigenvalues,
            weights,
            vector_id: None,
        })
    }

    /// Weights `1/n` on every eigenvalue (the ESD).
    pub fn uniform(eigenvalues: Vec<f64>) -> Result<Self> {
        let n = eigenvalues.len();
        Self::new(eigenvalues, vec![1.0 / n as f64; n])
    }

    pub fn with_vector_id(mut self, id: UnitVectorSpec) -> Self {
        self.vector_id = Some(id);
        self
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn vector_id(&self) -> Option<UnitVectorSpec> {
        self.vector_id
    }
}

pub(crate) fn validate_weights(mut weights: Vec<f64>) -> Result<Vec<f64>> {
    for w in weights.iter_mut() {
        if !w.is_finite() || *w < -NEGATIVE_WEIGHT_TOL {
            return Err(Error::Weights(format!("weight {w} is negative or not finite")));
        }
        *w = w.clamp(0.0, 1.0);
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::Weights(format!("weights sum to {total}, not 1")));
    }
    Ok(weights)
}

enum Basis {
    Real(Mat<f64>),
    Complex(Mat<Complex64>),
}

/// Full eigendecomposition of one matrix. Used transiently to project one or
/// more unit vectors; only the resulting weights are kept downstream.
pub struct Eigensystem {
    eigenvalues: Vec<f64>,
    basis: Basis,
}

impl Eigensystem {
    pub fn compute(sample: &MatrixSample) -> Result<Self> {
        let fail = || Error::EigenSolver {
            seed: sample.seed_record.master_seed,
            replicate: sample.seed_record.replicate,
        };
        let (values, basis) = match &sample.matrix {
            HermitianMatrix::Real(m) => {
                let evd = m.self_adjoint_eigen(Side::Lower).map_err(|_| fail())?;
                let values: Vec<f64> = evd.S().column_vector().iter().copied().collect();
                (values, Basis::Real(evd.U().to_owned()))
            }
            HermitianMatrix::Complex(m) => {
                let evd = m.self_adjoint_eigen(Side::Lower).map_err(|_| fail())?;
                let values: Vec<f64> = evd.S().column_vector().iter().map(|v| v.re).collect();
                (values, Basis::Complex(evd.U().to_owned()))
            }
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(fail());
        }
        let mut system = Eigensystem {
            eigenvalues: values,
            basis,
        };
        system.sort_ascending();
        Ok(system)
    }

    fn sort_ascending(&mut self) {
        if self.eigenvalues.windows(2).all(|w| w[0] <= w[1]) {
            return;
        }
        let n = self.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.eigenvalues[a].total_cmp(&self.eigenvalues[b]));
        self.eigenvalues = order.iter().map(|&i| self.eigenvalues[i]).collect();
        self.basis = match &self.basis {
            Basis::Real(u) => Basis::Real(Mat::from_fn(n, n, |i, j| u[(i, order[j])])),
            Basis::Complex(u) => Basis::Complex(Mat::from_fn(n, n, |i, j| u[(i, order[j])])),
        };
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvector `u_i` (column `i`, matching the ascending eigenvalue order).
    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        match &self.basis {
            Basis::Real(u) => (0..self.n()).map(|r| Complex64::new(u[(r, i)], 0.0)).collect(),
            Basis::Complex(u) => (0..self.n()).map(|r| u[(r, i)]).collect(),
        }
    }

    /// Weights `|u_i* x|²` for a unit vector `x`.
    pub fn project(&self, x: &[f64]) -> Result<SpectralData> {
        check_unit_vector(x, self.n())?;
        let n = self.n();
        let weights: Vec<f64> = match &self.basis {
            Basis::Real(u) => {
                let xc = Col::<f64>::from_fn(n, |i| x[i]);
                let y = u.transpose() * &xc;
                y.iter().map(|v| v * v).collect()
            }
            Basis::Complex(u) => {
                let xc = Col::<Complex64>::from_fn(n, |i| Complex64::new(x[i], 0.0));
                let y = u.adjoint() * &xc;
                y.iter().map(|v| v.norm_sqr()).collect()
            }
        };
        SpectralData::new(self.eigenvalues.clone(), weights)
    }

    /// ESD data: weight `1/n` at every eigenvalue.
    pub fn esd(&self) -> SpectralData {
        SpectralData::uniform(self.eigenvalues.clone()).expect("uniform weights are valid")
    }

    /// `‖W u_i − λ_i u_i‖` for every eigenpair.
    pub fn residuals(&self, matrix: &HermitianMatrix) -> Vec<f64> {
        let n = self.n();
        let w = matrix.to_complex();
        let u = match &self.basis {
            Basis::Real(u) => Mat::from_fn(n, n, |i, j| Complex64::new(u[(i, j)], 0.0)),
            Basis::Complex(u) => u.clone(),
        };
        let wu = &w * &u;
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| (wu[(i, j)] - u[(i, j)] * self.eigenvalues[j]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }
}

fn check_unit_vector(x: &[f64], n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::InvalidParameter(format!(
            "vector has length {}, matrix has dimension {n}",
            x.len()
        )));
    }
    let norm_sq: f64 = x.iter().map(|v| v * v).sum();
    if (norm_sq.sqrt() - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::InvalidParameter(format!(
            "vector norm is {}, expected 1",
            norm_sq.sqrt()
        )));
    }
    Ok(())
}

/// Eigenvalues and the weights of `x` in the eigenbasis of `W`.
pub fn decompose(w: &MatrixSample, x: &[f64]) -> Result<SpectralData> {
    Eigensystem::compute(w)?.project(x)
}

/// `x*(W − zI)^{-1} x` by a dense LU solve, independent of any eigendata.
pub fn resolvent_quadratic_form(w: &MatrixSample, x: &[f64], z: Complex64) -> Result<Complex64> {
    Ok(resolvent_quadratic_forms(w, x, &[z])?[0])
}

/// [`resolvent_quadratic_form`] at several spectral parameters.
pub fn resolvent_quadratic_forms(
    w: &MatrixSample,
    x: &[f64],
    zs: &[Complex64],
) -> Result<Vec<Complex64>> {
    let n = w.n();
    check_unit_vector(x, n)?;
    if let Some(z) = zs.iter().find(|z| !(z.im > 0.0)) {
        return Err(Error::NotUpperHalfPlane(z.im));
    }
    let rhs = Mat::<Complex64>::from_fn(n, 1, |i, _| Complex64::new(x[i], 0.0));
    zs.iter()
        .map(|&z| {
            let a = Mat::<Complex64>::from_fn(n, n, |i, j| {
                let e = w.matrix.entry(i, j);
                if i == j {
                    e - z
                } else {
                    e
                }
            });
            let sol = a.partial_piv_lu().solve(&rhs);
            let value: Complex64 = (0..n).map(|i| sol[(i, 0)] * x[i]).sum();
            if value.re.is_finite() && value.im.is_finite() {
                Ok(value)
            } else {
                Err(Error::Solve(format!(
                    "non-finite quadratic form at z = {z} (master seed {}, replicate {})",
                    w.seed_record.master_seed, w.seed_record.replicate
                )))
            }
        })
        .collect()
}
