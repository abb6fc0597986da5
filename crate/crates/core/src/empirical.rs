//! Step distribution functions built from spectral data, their Stieltjes
//! transforms, and the partial-sum process `Q_n`.

use std::io::Write;

use num_complex::Complex64;

use crate::spectral::{validate_weights, SpectralData};
use crate::{Error, Result};

/// Right-continuous step CDF with distinct, strictly ascending jump points and
/// strictly positive jumps. `cum_weights[k]` is the value at and right of
/// `jump_points[k]`; the last value is exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedStepCDF {
    jump_points: Vec<f64>,
    cum_weights: Vec<f64>,
    n: usize,
}

impl WeightedStepCDF {
    /// Builds the CDF `Σ_i weights_i · 1{points_i ≤ x}`. Points need not be
    /// sorted; equal points are merged and zero-weight jumps dropped.
    pub fn from_weights(points: &[f64], weights: &[f64]) -> Result<Self> {
        if points.len() != weights.len() || points.is_empty() {
            return Err(Error::Weights(format!(
                "need equally many points and weights, got {} and {}",
                points.len(),
                weights.len()
            )));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidParameter("non-finite jump point".into()));
        }
        let weights = validate_weights(weights.to_vec())?;
        let mut pairs: Vec<(f64, f64)> = points.iter().copied().zip(weights).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

        let n = pairs.len();
        let mut jump_points = Vec::with_capacity(n);
        let mut cum_weights = Vec::with_capacity(n);
        let mut running = 0.0;
        let mut i = 0;
        while i < n {
            let x = pairs[i].0;
            let mut mass = 0.0;
            while i < n && pairs[i].0 == x {
                mass += pairs[i].1;
                i += 1;
            }
            if mass > 0.0 {
                running += mass;
                jump_points.push(x);
                cum_weights.push(running.min(1.0));
            }
        }
        if let Some(last) = cum_weights.last_mut() {
            *last = 1.0;
        }
        Ok(Self {
            jump_points,
            cum_weights,
            n,
        })
    }

    /// ESD-style CDF: mass `1/n` per point, cumulative values computed as
    /// exact counts over `n`.
    pub fn uniform(points: &[f64]) -> Result<Self> {
        if points.is_empty() || points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidParameter("need finite points".into()));
        }
        let mut sorted = points.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let mut jump_points = Vec::new();
        let mut cum_weights = Vec::new();
        let mut i = 0;
        while i < n {
            let x = sorted[i];
            while i < n && sorted[i] == x {
                i += 1;
            }
            jump_points.push(x);
            cum_weights.push(i as f64 / n as f64);
        }
        Ok(Self {
            jump_points,
            cum_weights,
            n,
        })
    }

    /// Pointwise average of several CDFs (e.g. an expected VESD).
    pub fn average(cdfs: &[WeightedStepCDF]) -> Result<Self> {
        if cdfs.is_empty() {
            return Err(Error::InvalidParameter("cannot average zero CDFs".into()));
        }
        let k = cdfs.len() as f64;
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for cdf in cdfs {
            for (x, w) in cdf.jumps() {
                points.push(x);
                weights.push(w / k);
            }
        }
        let mut out = Self::from_weights(&points, &weights)?;
        out.n = cdfs[0].n;
        Ok(out)
    }

    /// Number of atoms the CDF was built from (before merging).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn jump_points(&self) -> &[f64] {
        &self.jump_points
    }

    pub fn cum_weights(&self) -> &[f64] {
        &self.cum_weights
    }

    /// `(jump point, jump size)` pairs.
    pub fn jumps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.jump_points
            .iter()
            .zip(&self.cum_weights)
            .scan(0.0, |prev, (&x, &c)| {
                let w = c - *prev;
                *prev = c;
                Some((x, w))
            })
    }

    /// `H(x)`.
    pub fn value(&self, x: f64) -> f64 {
        let k = self.jump_points.partition_point(|&p| p <= x);
        if k == 0 {
            0.0
        } else {
            self.cum_weights[k - 1]
        }
    }

    /// `H(x⁻) = lim_{t↑x} H(t)`.
    pub fn left_limit(&self, x: f64) -> f64 {
        let k = self.jump_points.partition_point(|&p| p < x);
        if k == 0 {
            0.0
        } else {
            self.cum_weights[k - 1]
        }
    }

    /// Two-column CSV `jump_point,cum_weight`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["jump_point", "cum_weight"])?;
        for (x, c) in self.jump_points.iter().zip(&self.cum_weights) {
            w.write_record([x.to_string(), c.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `H(x) = Σ_i |y_i|² 1{λ_i ≤ x}`.
pub fn build_vesd(sd: &SpectralData) -> Result<WeightedStepCDF> {
    WeightedStepCDF::from_weights(sd.eigenvalues(), sd.weights())
}

/// `F(x) = (1/n) Σ_i 1{λ_i ≤ x}`.
pub fn build_esd(sd: &SpectralData) -> Result<WeightedStepCDF> {
    WeightedStepCDF::uniform(sd.eigenvalues())
}

/// `Σ_j w_j / (x_j − z)`.
pub fn empirical_stieltjes(cdf: &WeightedStepCDF, z: Complex64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::NotUpperHalfPlane(z.im));
    }
    Ok(stieltjes_sum(cdf, z))
}

pub(crate) fn stieltjes_sum(cdf: &WeightedStepCDF, z: Complex64) -> Complex64 {
    cdf.jumps().map(|(x, w)| w / (x - z)).sum()
}

/// Sample path of `Q_n(t) = √(n/2) Σ_{i ≤ nt} (|y_i|² − 1/n)` at `t = i/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgePath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl BridgePath {
    /// `Q_n(t)` for `t ∈ [0, 1]` (step interpolation, `[nt]` indexing).
    pub fn at(&self, t: f64) -> f64 {
        let n = self.values.len() - 1;
        let k = ((n as f64) * t.clamp(0.0, 1.0)).floor() as usize;
        self.values[k.min(n)]
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "q"])?;
        for (t, q) in self.times.iter().zip(&self.values) {
            w.write_record([t.to_string(), q.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Weights are taken in ascending eigenvalue order.
pub fn bridge_path(sd: &SpectralData) -> BridgePath {
    let n = sd.n();
    let scale = (n as f64 / 2.0).sqrt();
    let inv_n = 1.0 / n as f64;
    let mut values = Vec::with_capacity(n + 1);
    values.push(0.0);
    let mut partial = 0.0;
    for w in sd.weights() {
        partial += w - inv_n;
        values.push(scale * partial);
    }
    let times = (0..=n).map(|i| i as f64 / n as f64).collect();
    BridgePath { times, values }
}

/// Largest discrepancy between `Q_n(F(x))` and `√(n/2)(H(x) − F(x))` over all
/// eigenvalues `x`, where `F` is the ESD and `H` the VESD.
pub fn bridge_relation_check(sd: &SpectralData) -> f64 {
    let n = sd.n();
    let scale = (n as f64 / 2.0).sqrt();
    let path = bridge_path(sd);
    let lambdas = sd.eigenvalues();
    let weights = sd.weights();
    let mut worst = 0.0f64;
    let mut h = 0.0;
    let mut i = 0;
    while i < n {
        let x = lambdas[i];
        while i < n && lambdas[i] == x {
            h += weights[i];
            i += 1;
        }
        // F(x) = i/n exactly, so Q_n(F(x)) is the i-th path value.
        let f = i as f64 / n as f64;
        let lhs = path.values[i];
        let rhs = scale * (h - f);
        worst = worst.max((lhs - rhs).abs());
    }
    worst
}
