//! Exact Kolmogorov distances and convergence-rate fits.
//!
//! Between consecutive evaluation points a step CDF is constant while the
//! semicircle CDF is continuous and monotone, so `|H − F|` on each piece is
//! largest at one of its ends. Evaluating `H` and its left limit at every
//! jump, plus the support edges `±2`, therefore gives the exact supremum.

use serde::{Deserialize, Serialize};

use crate::empirical::WeightedStepCDF;
use crate::semicircle::{semicircle_cdf, SUPPORT};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupSide {
    AtJump,
    LeftLimit,
    SupportEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub distance: f64,
    pub argmax_location: f64,
    pub side: SupSide,
}

/// `sup_x |H(x) − F(x)|` with `F` the semicircle CDF.
pub fn kolmogorov_to_semicircle(h: &WeightedStepCDF) -> DistanceReport {
    let mut best = DistanceReport {
        distance: 0.0,
        argmax_location: 0.0,
        side: SupSide::SupportEdge,
    };
    let mut consider = |distance: f64, x: f64, side: SupSide| {
        if distance > best.distance {
            best = DistanceReport {
                distance,
                argmax_location: x,
                side,
            };
        }
    };
    for &x in h.jump_points() {
        let f = semicircle_cdf(x);
        consider((h.left_limit(x) - f).abs(), x, SupSide::LeftLimit);
        consider((h.value(x) - f).abs(), x, SupSide::AtJump);
    }
    for edge in [SUPPORT.0, SUPPORT.1] {
        let f = semicircle_cdf(edge);
        consider((h.left_limit(edge) - f).abs(), edge, SupSide::SupportEdge);
        consider((h.value(edge) - f).abs(), edge, SupSide::SupportEdge);
    }
    best.distance = best.distance.min(1.0);
    best
}

/// `sup_x |H1(x) − H2(x)|`, evaluated on both sides of every jump of either.
pub fn kolmogorov_between(h1: &WeightedStepCDF, h2: &WeightedStepCDF) -> f64 {
    h1.jump_points()
        .iter()
        .chain(h2.jump_points())
        .flat_map(|&x| {
            [
                (h1.value(x) - h2.value(x)).abs(),
                (h1.left_limit(x) - h2.left_limit(x)).abs(),
            ]
        })
        .fold(0.0, f64::max)
}

/// Least-squares fits of `distance ≈ C n^{slope}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    /// Slope of `log d` against `log n`.
    pub slope: f64,
    /// Intercept of the same regression.
    pub log_coefficient: f64,
    /// `C` minimizing `Σ (d_i − C n_i^{-1/2})²`.
    pub fixed_exponent_coefficient: f64,
    /// Coefficient of determination in log-log space.
    pub r_squared: f64,
}

pub fn fit_rate(ns: &[usize], distances: &[f64]) -> Result<RateFit> {
    if ns.len() != distances.len() {
        return Err(Error::Fit(format!(
            "{} dimensions but {} distances",
            ns.len(),
            distances.len()
        )));
    }
    if ns.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 points, got {}", ns.len())));
    }
    if let Some(d) = distances.iter().find(|d| !(**d > 0.0) || !d.is_finite()) {
        return Err(Error::Fit(format!("distances must be positive, got {d}")));
    }
    if ns.contains(&0) {
        return Err(Error::Fit("dimensions must be positive".into()));
    }
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = distances.iter().map(|d| d.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("need at least two distinct dimensions".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };

    let num: f64 = ns
        .iter()
        .zip(distances)
        .map(|(&n, d)| d / (n as f64).sqrt())
        .sum();
    let den: f64 = ns.iter().map(|&n| 1.0 / n as f64).sum();

    Ok(RateFit {
        slope,
        log_coefficient: intercept,
        fixed_exponent_coefficient: num / den,
        r_squared,
    })
}
