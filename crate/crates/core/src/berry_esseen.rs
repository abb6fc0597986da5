//! Both sides of the Stieltjes-transform smoothing inequality
//!
//! ```text
//! ‖H − F‖ ≤ 1/(π(1−κ)(2γ−1)) · ( ∫_{-A}^{A} |s_H(u+iv) − s(u+iv)| du
//!                                 + (2π/v) ∫_{|x|>B} |H(x) − F(x)| dx
//!                                 + (1/v) sup_x ∫_{|h|≤2vτ} |F(x+h) − F(x)| dh )
//! ```
//!
//! with `γ = (2/π) arctan τ > 1/2` and `κ = 4B / (π(A−B)(2γ−1)) < 1`, checked
//! here with `F` the semicircle law and `H` a step CDF.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::empirical::{stieltjes_sum, WeightedStepCDF};
use crate::metrics::kolmogorov_to_semicircle;
use crate::semicircle::{lipschitz_modulus, semicircle_stieltjes, SUPPORT};
use crate::{Error, Result};

/// Relative slack allowed when comparing the two sides.
pub const HOLDS_TOLERANCE: f64 = 1e-6;

/// `A`, `B`, `τ` and the derived `γ`, `κ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothingConstants {
    pub a: f64,
    pub b: f64,
    pub tau: f64,
    pub gamma: f64,
    pub kappa: f64,
}

impl Default for SmoothingConstants {
    fn default() -> Self {
        derive_constants(16.0, 3.0, 2.0).expect("default constants are valid")
    }
}

impl SmoothingConstants {
    pub fn with_v(self, v: f64) -> Result<SmoothingInequalityParams> {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter(format!("v must be positive, got {v}")));
        }
        Ok(SmoothingInequalityParams { constants: self, v })
    }

    /// Parameters at `v = c0 / √n`.
    pub fn for_dimension(self, n: usize, c0: f64) -> Result<SmoothingInequalityParams> {
        self.with_v(c0 / (n as f64).sqrt())
    }

    /// `1 / (π(1−κ)(2γ−1))`.
    pub fn prefactor(&self) -> f64 {
        1.0 / (PI * (1.0 - self.kappa) * (2.0 * self.gamma - 1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothingInequalityParams {
    pub constants: SmoothingConstants,
    pub v: f64,
}

pub fn derive_constants(a: f64, b: f64, tau: f64) -> Result<SmoothingConstants> {
    if !(a > b && b > 0.0) {
        return Err(Error::InvalidParameter(format!("need A > B > 0, got A = {a}, B = {b}")));
    }
    if !(tau > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need tau > 1 so that gamma > 1/2, got tau = {tau}"
        )));
    }
    let gamma = 2.0 / PI * tau.atan();
    if !(gamma > 0.5) {
        return Err(Error::InvalidParameter(format!("gamma = {gamma} is not above 1/2")));
    }
    let kappa = 4.0 * b / (PI * (a - b) * (2.0 * gamma - 1.0));
    if !(kappa < 1.0) {
        return Err(Error::InvalidParameter(format!("kappa = {kappa} is not below 1")));
    }
    Ok(SmoothingConstants {
        a,
        b,
        tau,
        gamma,
        kappa,
    })
}

/// The three bracketed terms (already weighted) and the full right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothingRhs {
    /// `∫_{-A}^{A} |s_H − s| du`.
    pub stieltjes_term: f64,
    /// `(2π/v) ∫_{|x|>B} |H − F| dx`.
    pub tail_term: f64,
    /// `(1/v) ∫_{|h|≤2vτ} |h|/π dh`, the Lipschitz bound of the modulus term.
    pub modulus_term: f64,
    pub total: f64,
}

/// Composite trapezoid for `∫_{-A}^{A} |s_H(u+iv) − s(u+iv)| du` with the
/// given number of intervals.
pub fn stieltjes_difference_integral(h: &WeightedStepCDF, a: f64, v: f64, intervals: usize) -> f64 {
    let step = 2.0 * a / intervals as f64;
    let f = |u: f64| {
        let z = Complex64::new(u, v);
        let s = semicircle_stieltjes(z).expect("v > 0");
        (stieltjes_sum(h, z) - s).norm()
    };
    let interior: f64 = (1..intervals).map(|k| f(-a + step * k as f64)).sum();
    step * (interior + 0.5 * (f(-a) + f(a)))
}

/// Number of trapezoid intervals so that the step is at most `v/10`.
pub fn default_intervals(a: f64, v: f64) -> usize {
    (2.0 * a / (v / 10.0)).ceil() as usize
}

/// `∫_{x<-B} H dx + ∫_{x>B} (1 − H) dx`, exact for a step function. Equals
/// `∫_{|x|>B} |H − F| dx` when `B ≥ 2`, where `F` is 0 or 1.
pub fn tail_integral(h: &WeightedStepCDF, b: f64) -> f64 {
    h.jumps()
        .map(|(x, w)| {
            if x < -b {
                w * (-b - x)
            } else if x > b {
                w * (x - b)
            } else {
                0.0
            }
        })
        .sum()
}

pub fn smoothing_rhs(h: &WeightedStepCDF, params: &SmoothingInequalityParams) -> Result<SmoothingRhs> {
    let v = params.v;
    if !(v > 0.0) {
        return Err(Error::InvalidParameter(format!("v must be positive, got {v}")));
    }
    let k = &params.constants;
    if k.b < SUPPORT.1 {
        return Err(Error::InvalidParameter(format!(
            "B = {} lies inside the semicircle support; the exact tail integral needs B >= 2",
            k.b
        )));
    }
    let stieltjes_term = stieltjes_difference_integral(h, k.a, v, default_intervals(k.a, v));
    let tail_term = 2.0 * PI / v * tail_integral(h, k.b);
    // ∫_{|h|≤r} |h|/π dh = r²/π with r = 2vτ.
    let r = 2.0 * v * k.tau;
    let modulus_term = r * lipschitz_modulus(r) / v;
    let total = k.prefactor() * (stieltjes_term + tail_term + modulus_term);
    Ok(SmoothingRhs {
        stieltjes_term,
        tail_term,
        modulus_term,
        total,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn verify_inequality(h: &WeightedStepCDF, params: &SmoothingInequalityParams) -> Result<InequalityCheck> {
    let lhs = kolmogorov_to_semicircle(h).distance;
    let rhs = smoothing_rhs(h, params)?.total;
    Ok(InequalityCheck {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + HOLDS_TOLERANCE),
    })
}
