//! Reference computations that share no code with the library: adaptive
//! Gauss–Kronrod quadrature, brute-force grids and naive linear algebra.
#![allow(dead_code)]

use std::f64::consts::PI;

use vesd::Complex64;

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let pair = f(c - x) + f(c + x);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).norm())
}

/// Adaptive bisection until each panel's Gauss/Kronrod difference is below
/// its share of `tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    fn recurse<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Complex64 {
        let (value, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return value;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, tol / 2.0, depth - 1) + recurse(f, m, b, tol / 2.0, depth - 1)
    }
    recurse(&f, a, b, tol, 40)
}

pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    integrate(|x| Complex64::new(f(x), 0.0), a, b, tol).re
}

/// Semicircle CDF by quadrature in `x = 2 cos θ`, where the density becomes
/// `(2/π) sin²θ` and is smooth.
pub fn cdf_by_quadrature(x: f64) -> f64 {
    if x <= -2.0 {
        return 0.0;
    }
    if x >= 2.0 {
        return 1.0;
    }
    let theta = (x / 2.0).acos();
    integrate_real(|t| 2.0 / PI * t.sin().powi(2), theta, PI, 1e-15)
}

/// `∫ ρ(x)/(x − z) dx = (2/π) ∫_0^π sin²θ / (2cos θ − z) dθ`.
pub fn stieltjes_by_quadrature(z: Complex64) -> Complex64 {
    integrate(
        |t| Complex64::new(2.0 / PI * t.sin().powi(2), 0.0) / (2.0 * t.cos() - z),
        0.0,
        PI,
        1e-13,
    )
}

/// Step function given by sorted atoms and masses.
pub struct Steps {
    pub points: Vec<f64>,
    pub masses: Vec<f64>,
}

impl Steps {
    pub fn value(&self, x: f64) -> f64 {
        self.points
            .iter()
            .zip(&self.masses)
            .filter(|(p, _)| **p <= x)
            .map(|(_, m)| m)
            .sum()
    }
}

/// `max |H − F|` over an evenly spaced grid on `[lo, hi]`, with `H` evaluated
/// by a merge walk.
pub fn grid_sup<F: Fn(f64) -> f64>(points: &[f64], masses: &[f64], f: F, lo: f64, hi: f64, size: usize) -> f64 {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].total_cmp(&points[b]));
    let mut k = 0;
    let mut h = 0.0;
    let mut best = 0.0f64;
    for i in 0..size {
        let x = lo + (hi - lo) * i as f64 / (size - 1) as f64;
        while k < order.len() && points[order[k]] <= x {
            h += masses[order[k]];
            k += 1;
        }
        best = best.max((h - f(x)).abs());
    }
    best
}

/// `x*(W − zI)^{-1} x` by Gaussian elimination with partial pivoting on a
/// row-major dense copy.
pub fn naive_resolvent_form(w: &[Vec<Complex64>], x: &[f64], z: Complex64) -> Complex64 {
    let n = x.len();
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut row = w[i].clone();
            row[i] -= z;
            row.push(Complex64::new(x[i], 0.0));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&p, &q| a[p][col].norm().total_cmp(&a[q][col].norm()))
            .unwrap();
        a.swap(col, pivot);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            let (upper, lower) = a.split_at_mut(r);
            for (target, &source) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *target -= factor * source;
            }
        }
    }
    let mut sol = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut acc = a[r][n];
        for c in r + 1..n {
            acc -= a[r][c] * sol[c];
        }
        sol[r] = acc / a[r][r];
    }
    sol.iter().zip(x).map(|(s, xi)| s * xi).sum()
}

/// Dense row-major copy of a sampled matrix.
pub fn dense(m: &vesd::ensemble::HermitianMatrix) -> Vec<Vec<Complex64>> {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| m.entry(i, j)).collect()).collect()
}
