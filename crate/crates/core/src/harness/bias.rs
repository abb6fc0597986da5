use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ExperimentConfig;
use crate::empirical::{build_vesd, empirical_stieltjes};
use crate::ensemble::{sample_unit_vector, sample_wigner};
use crate::semicircle::{semicircle_stieltjes, EvaluationDomain};
use crate::spectral::{resolvent_quadratic_forms, Eigensystem};
use crate::{Error, Result};

/// How `s_n^H(z) = x*(W − z)^{-1} x` is computed in a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiasRoute {
    /// One LU solve per `z`; cheapest for a handful of points.
    Solve,
    /// One eigendecomposition per replicate; cheapest for long grids.
    Eigen,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BiasScanConfig {
    pub c0: f64,
    /// Explicit abscissae; when absent the grid `u_min..=u_max` by `u_step` is used.
    pub u_values: Option<Vec<f64>>,
    pub u_min: f64,
    pub u_max: f64,
    pub u_step: f64,
    pub route: BiasRoute,
}

impl Default for BiasScanConfig {
    fn default() -> Self {
        let d = EvaluationDomain::default();
        Self {
            c0: d.c0,
            u_values: None,
            u_min: d.u_min,
            u_max: d.u_max,
            u_step: d.u_step,
            route: BiasRoute::Solve,
        }
    }
}

impl BiasScanConfig {
    pub fn at(u_values: Vec<f64>, c0: f64) -> Self {
        Self {
            c0,
            u_values: Some(u_values),
            ..Self::default()
        }
    }

    pub fn domain(&self) -> EvaluationDomain {
        EvaluationDomain {
            u_min: self.u_min,
            u_max: self.u_max,
            c0: self.c0,
            u_step: self.u_step,
        }
    }

    pub fn u_values(&self) -> Vec<f64> {
        match &self.u_values {
            Some(us) => us.clone(),
            None => self.domain().u_grid(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.domain()
            .validate()
            .map_err(|e| Error::Config(format!("bias_scan: {e}")))?;
        if self.u_values().is_empty() {
            return Err(Error::Config("bias_scan: the z grid is empty".into()));
        }
        if let Some(u) = self.u_values().iter().find(|u| !u.is_finite()) {
            return Err(Error::Config(format!("bias_scan: non-finite u = {u}")));
        }
        Ok(())
    }
}

/// `|mean s_n^H(z) − s(z)|` at one `z`, against the scale `1/(nv)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasRow {
    pub n: usize,
    pub vector_law: String,
    pub u: f64,
    pub v: f64,
    pub mean_re: f64,
    pub mean_im: f64,
    pub limit_re: f64,
    pub limit_im: f64,
    pub abs_bias: f64,
    pub bound: f64,
    pub ratio: f64,
    /// Standard error of the complex mean, `sqrt((var re + var im) / reps)`.
    pub std_error: f64,
    pub replicates: usize,
    pub failed: usize,
}

impl BiasRow {
    pub fn from_values(n: usize, vector_law: String, z: Complex64, values: &[Complex64], failed: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "no successful replicates at n = {n}, z = {z}"
            )));
        }
        let k = values.len() as f64;
        let mean: Complex64 = values.iter().sum::<Complex64>() / k;
        let var = if values.len() > 1 {
            values.iter().map(|s| (s - mean).norm_sqr()).sum::<f64>() / (k - 1.0)
        } else {
            0.0
        };
        let limit = semicircle_stieltjes(z)?;
        let abs_bias = (mean - limit).norm();
        let bound = 1.0 / (n as f64 * z.im);
        Ok(Self {
            n,
            vector_law,
            u: z.re,
            v: z.im,
            mean_re: mean.re,
            mean_im: mean.im,
            limit_re: limit.re,
            limit_im: limit.im,
            abs_bias,
            bound,
            ratio: abs_bias / bound,
            std_error: (var / k).sqrt(),
            replicates: values.len(),
            failed,
        })
    }
}

/// For each `n`, vector law and `u`, averages `s_n^H(u + i c0/√n)` over the
/// replicates (the same matrices and vectors as [`super::run_experiment`]).
pub fn bias_scan(cfg: &ExperimentConfig, scan: &BiasScanConfig) -> Result<Vec<BiasRow>> {
    cfg.validate()?;
    scan.validate()?;
    let us = scan.u_values();
    let mut rows = Vec::new();
    for &n in &cfg.n_values {
        let spec = cfg.ensemble.with_n(n);
        let v = scan.c0 / (n as f64).sqrt();
        let zs: Vec<Complex64> = us.iter().map(|&u| Complex64::new(u, v)).collect();
        // [replicate] -> Ok([law][z]) or the replicate's error.
        let per_rep: Vec<Result<Vec<Vec<Complex64>>>> = (0..cfg.replicates as u64)
            .into_par_iter()
            .map(|rep| {
                let sample = sample_wigner(&spec, cfg.master_seed, rep)?;
                let eig = match scan.route {
                    BiasRoute::Eigen => Some(Eigensystem::compute(&sample)?),
                    BiasRoute::Solve => None,
                };
                cfg.vector_specs
                    .iter()
                    .map(|law| {
                        let x = sample_unit_vector(law, n, cfg.master_seed, rep)?;
                        match &eig {
                            Some(eig) => {
                                let h = build_vesd(&eig.project(&x)?)?;
                                zs.iter().map(|&z| empirical_stieltjes(&h, z)).collect()
                            }
                            None => resolvent_quadratic_forms(&sample, &x, &zs),
                        }
                    })
                    .collect()
            })
            .collect();
        let failed = per_rep.iter().filter(|r| r.is_err()).count();
        for (li, law) in cfg.vector_specs.iter().enumerate() {
            for (zi, &z) in zs.iter().enumerate() {
                let values: Vec<Complex64> = per_rep
                    .iter()
                    .filter_map(|r| r.as_ref().ok())
                    .map(|laws| laws[li][zi])
                    .collect();
                rows.push(BiasRow::from_values(n, law.name(), z, &values, failed)?);
            }
        }
    }
    Ok(rows)
}
