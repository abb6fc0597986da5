//! The semicircle law on `[-2, 2]`: density, CDF, Stieltjes transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

pub const SUPPORT: (f64, f64) = (-2.0, 2.0);

/// `√(4 − x²) / (2π)` on `[-2, 2]`, zero elsewhere.
pub fn semicircle_density(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    }
}

/// `F(x) = 1/2 + x√(4 − x²)/(4π) + arcsin(x/2)/π` on `[-2, 2]`.
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        let f = 0.5 + x * (4.0 - x * x).sqrt() / (4.0 * PI) + (x / 2.0).asin() / PI;
        f.clamp(0.0, 1.0)
    }
}

/// Stieltjes transform `s(z) = ∫ dF(x)/(x − z)`: the root of `s² + zs + 1 = 0`
/// with positive imaginary part.
pub fn semicircle_stieltjes(z: Complex64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::NotUpperHalfPlane(z.im));
    }
    let r = (z * z - 4.0).sqrt();
    // The two roots multiply to 1. Form the larger one without cancellation
    // and get the other by inversion.
    let big = if (z + r).norm() >= (z - r).norm() {
        (-z - r) / 2.0
    } else {
        (-z + r) / 2.0
    };
    let small = big.inv();
    Ok(if small.im >= big.im { small } else { big })
}

/// `|h|/π`, a uniform bound on `|F(x + h) − F(x)|` (the density never
/// exceeds `1/π`).
pub fn lipschitz_modulus(h: f64) -> f64 {
    h.abs() / PI
}

/// `sup_x |F(x + h) − F(x)|` over an evenly spaced grid of `points` abscissae
/// covering `[-2 - |h|, 2]`.
pub fn grid_modulus_sup(h: f64, points: usize) -> f64 {
    let lo = -2.0 - h.abs();
    let hi = 2.0;
    let step = (hi - lo) / (points.max(2) - 1) as f64;
    (0..points.max(2))
        .map(|i| {
            let x = lo + step * i as f64;
            (semicircle_cdf(x + h) - semicircle_cdf(x)).abs()
        })
        .fold(0.0, f64::max)
}

/// Region of the upper half-plane where transforms are compared:
/// `u ∈ [u_min, u_max]`, `v = c0 · n^{-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationDomain {
    pub u_min: f64,
    pub u_max: f64,
    pub c0: f64,
    pub u_step: f64,
}

impl Default for EvaluationDomain {
    fn default() -> Self {
        Self {
            u_min: -16.0,
            u_max: 16.0,
            c0: 2.0,
            u_step: 0.05,
        }
    }
}

impl EvaluationDomain {
    pub fn validate(&self) -> Result<()> {
        if !(self.u_min < self.u_max) {
            return Err(Error::InvalidParameter(format!(
                "u_min ({}) must be below u_max ({})",
                self.u_min, self.u_max
            )));
        }
        if !(self.c0 > 0.0) || !(self.u_step > 0.0) {
            return Err(Error::InvalidParameter(
                "c0 and u_step must be positive".into(),
            ));
        }
        Ok(())
    }

    /// `v(n) = c0 / √n`.
    pub fn v(&self, n: usize) -> f64 {
        self.c0 / (n as f64).sqrt()
    }

    /// Abscissae `u_min, u_min + u_step, …` up to `u_max` inclusive.
    pub fn u_grid(&self) -> Vec<f64> {
        let steps = ((self.u_max - self.u_min) / self.u_step + 1e-9).floor() as usize;
        (0..=steps)
            .map(|i| self.u_min + self.u_step * i as f64)
            .collect()
    }

    pub fn z_grid(&self, n: usize) -> Vec<Complex64> {
        let v = self.v(n);
        self.u_grid()
            .into_iter()
            .map(|u| Complex64::new(u, v))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_values() {
        assert_eq!(semicircle_cdf(0.0), 0.5);
        assert_eq!(semicircle_cdf(-2.0), 0.0);
        assert_eq!(semicircle_cdf(2.0), 1.0);
        assert_eq!(semicircle_cdf(-3.0), 0.0);
        assert_eq!(semicircle_cdf(3.0), 1.0);
        assert!((semicircle_cdf(1.0) - 0.804_498_890_0).abs() < 1e-9);
    }

    #[test]
    fn cdf_symmetry_and_monotonicity() {
        let mut prev = 0.0;
        for i in 0..=4000 {
            let x = -2.5 + 5.0 * i as f64 / 4000.0;
            let f = semicircle_cdf(x);
            assert!(f >= prev);
            prev = f;
            assert!((semicircle_cdf(-x) - (1.0 - f)).abs() < 1e-12);
        }
    }

    #[test]
    fn stieltjes_values() {
        let s = semicircle_stieltjes(Complex64::new(0.0, 1.0)).unwrap();
        assert!((s - Complex64::new(0.0, (5f64.sqrt() - 1.0) / 2.0)).norm() < 1e-15);
        let s = semicircle_stieltjes(Complex64::new(0.0, 10.0)).unwrap();
        assert!((s - Complex64::new(0.0, 0.099_019_513_592_784_8)).norm() < 1e-12);
        assert!(semicircle_stieltjes(Complex64::new(1.0, 0.0)).is_err());
        assert!(semicircle_stieltjes(Complex64::new(1.0, -0.1)).is_err());
    }

    #[test]
    fn stieltjes_residual_and_bounds_near_axis() {
        for &u in &[-3.0, -2.0, -1.999, -0.5, 0.0, 0.3, 1.999, 2.0, 2.5, 15.9] {
            for &v in &[1e-6, 0.01, 0.05, 1.0, 16.0] {
                let z = Complex64::new(u, v);
                let s = semicircle_stieltjes(z).unwrap();
                assert!((s * s + z * s + 1.0).norm() <= 1e-12, "z = {z}");
                assert!(s.im > 0.0, "z = {z}");
                assert!(s.norm() <= 1.0 + 1e-12, "z = {z}");
            }
        }
    }

    #[test]
    fn modulus() {
        assert_eq!(lipschitz_modulus(0.0), 0.0);
        assert!((lipschitz_modulus(PI) - 1.0).abs() < 1e-15);
        assert!((lipschitz_modulus(-PI) - 1.0).abs() < 1e-15);
        let sup = grid_modulus_sup(0.01, 10_000);
        assert!(sup <= 0.003_183_1, "sup {sup}");
        assert!(sup <= lipschitz_modulus(0.01));
        assert!(sup > 0.0031);
    }

    #[test]
    fn domain_grid() {
        let d = EvaluationDomain::default();
        let g = d.u_grid();
        assert_eq!(g.first(), Some(&-16.0));
        assert!((g.last().unwrap() - 16.0).abs() < 1e-9);
        assert!((d.v(100) - 0.2).abs() < 1e-15);
        assert!(EvaluationDomain { u_min: 1.0, u_max: 1.0, ..d }.validate().is_err());
    }
}
