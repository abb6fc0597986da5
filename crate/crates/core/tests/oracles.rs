//! Library results against the independent references in `common`.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vesd::berry_esseen::{default_intervals, stieltjes_difference_integral, SmoothingConstants};
use vesd::empirical::{build_esd, build_vesd, empirical_stieltjes, WeightedStepCDF};
use vesd::ensemble::{sample_unit_vector, sample_wigner, EnsembleSpec, EntryLaw, Symmetry, UnitVectorSpec};
use vesd::metrics::{kolmogorov_between, kolmogorov_to_semicircle};
use vesd::semicircle::{semicircle_cdf, semicircle_stieltjes};
use vesd::spectral::{decompose, resolvent_quadratic_form, Eigensystem};
use vesd::Complex64;

#[test]
fn cdf_matches_quadrature() {
    for i in 0..=200 {
        let x = -2.5 + 5.0 * i as f64 / 200.0;
        let exact = common::cdf_by_quadrature(x);
        assert!((semicircle_cdf(x) - exact).abs() < 1e-12, "x = {x}");
    }
}

#[test]
fn stieltjes_matches_quadrature() {
    for &(u, v) in &[(0.0, 1.0), (0.5, 0.2), (-1.9, 0.3), (2.5, 0.1), (-7.0, 0.05), (1.0, 5.0), (15.0, 0.5)] {
        let z = Complex64::new(u, v);
        let s = semicircle_stieltjes(z).unwrap();
        let q = common::stieltjes_by_quadrature(z);
        assert!((s - q).norm() <= 1e-8 * q.norm(), "z = {z}: {s} vs {q}");
    }
}

#[test]
fn stieltjes_on_domain_grid() {
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let u = -16.0 + 32.0 * i as f64 / 999.0;
        let v = 2.0 / ((50 + 10 * i) as f64).sqrt();
        let z = Complex64::new(u, v);
        let s = semicircle_stieltjes(z).unwrap();
        worst = worst.max((s * s + z * s + 1.0).norm());
        assert!(s.norm() <= 1.0 + 1e-12 && s.im > 0.0, "z = {z}");
    }
    assert!(worst <= 1e-12, "{worst}");
}

#[test]
fn resolvent_routes_agree_with_naive_elimination() {
    let specs = [
        EnsembleSpec::goe(2),
        EnsembleSpec::gue(2),
        EnsembleSpec::wigner(2, EntryLaw::Rademacher, Symmetry::ComplexHermitian),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for trial in 0..30u64 {
        let n = rng.random_range(2..=24);
        let spec = specs[trial as usize % 3].with_n(n);
        let w = sample_wigner(&spec, 5, trial).unwrap();
        let x = sample_unit_vector(&UnitVectorSpec::StdNormal, n, 5, trial).unwrap();
        let z = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(0.01..2.0));
        let naive = common::naive_resolvent_form(&common::dense(&w.matrix), &x, z);
        let solve = resolvent_quadratic_form(&w, &x, z).unwrap();
        let eigen = empirical_stieltjes(&build_vesd(&decompose(&w, &x).unwrap()).unwrap(), z).unwrap();
        assert!((solve - naive).norm() <= 1e-10 * naive.norm(), "{trial}");
        assert!((eigen - naive).norm() <= 1e-10 * naive.norm(), "{trial}");
    }
}

#[test]
fn goe_esd_is_close_to_semicircle() {
    let spec = EnsembleSpec::goe(1000);
    for rep in 0..10 {
        let eig = Eigensystem::compute(&sample_wigner(&spec, 77, rep).unwrap()).unwrap();
        let d = kolmogorov_to_semicircle(&build_esd(&eig.esd()).unwrap()).distance;
        assert!(d < 0.05, "replicate {rep}: {d}");
    }
}

#[test]
fn trapezoid_is_converged_at_default_step() {
    let spec = EnsembleSpec::goe(200);
    let w = sample_wigner(&spec, 3, 0).unwrap();
    let x = sample_unit_vector(&UnitVectorSpec::Uniform01, 200, 3, 0).unwrap();
    let h = build_vesd(&decompose(&w, &x).unwrap()).unwrap();
    let k = SmoothingConstants::default();
    let v = 2.0 / 200f64.sqrt();
    let m = default_intervals(k.a, v);
    let coarse = stieltjes_difference_integral(&h, k.a, v, m);
    let fine = stieltjes_difference_integral(&h, k.a, v, 2 * m);
    assert!((coarse - fine).abs() < 1e-4 * fine, "{coarse} vs {fine}");
}

fn step_cdf() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    prop::collection::vec((-3.0f64..3.0, 0.0f64..1.0), 1..40).prop_filter_map("positive mass", |atoms| {
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        (total > 1e-3).then(|| {
            let points = atoms.iter().map(|a| a.0).collect();
            let masses = atoms.iter().map(|a| a.1 / total).collect();
            (points, masses)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_sup_dominates_grid((points, masses) in step_cdf()) {
        let h = WeightedStepCDF::from_weights(&points, &masses).unwrap();
        let exact = kolmogorov_to_semicircle(&h).distance;
        let size = 100_000;
        let step = 7.0 / (size - 1) as f64;
        let grid = common::grid_sup(&points, &masses, semicircle_cdf, -3.5, 3.5, size);
        prop_assert!(exact >= grid - 1e-12);
        // Between grid points F moves by at most step/π.
        prop_assert!(exact - grid <= step / std::f64::consts::PI + 1e-12);
    }

    #[test]
    fn zero_atoms_and_split_ties_do_not_change_the_cdf((points, masses) in step_cdf(), extra in -3.0f64..3.0) {
        let h = WeightedStepCDF::from_weights(&points, &masses).unwrap();
        let mut p2 = points.clone();
        let mut m2 = masses.clone();
        p2.push(extra);
        m2.push(0.0);
        let half = m2[0] / 2.0;
        m2[0] = half;
        p2.push(points[0]);
        m2.push(half);
        let h2 = WeightedStepCDF::from_weights(&p2, &m2).unwrap();
        prop_assert!(kolmogorov_between(&h, &h2) < 1e-12);
        prop_assert!((kolmogorov_to_semicircle(&h).distance - kolmogorov_to_semicircle(&h2).distance).abs() < 1e-12);
        for x in [extra, points[0], -2.0, 0.0, 2.0] {
            let direct = common::Steps { points: points.clone(), masses: masses.clone() }.value(x);
            prop_assert!((h.value(x) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn distances_satisfy_triangle_inequality(a in step_cdf(), b in step_cdf()) {
        let ha = WeightedStepCDF::from_weights(&a.0, &a.1).unwrap();
        let hb = WeightedStepCDF::from_weights(&b.0, &b.1).unwrap();
        let da = kolmogorov_to_semicircle(&ha).distance;
        let db = kolmogorov_to_semicircle(&hb).distance;
        let dab = kolmogorov_between(&ha, &hb);
        prop_assert!(dab <= da + db + 1e-12);
        prop_assert!(da <= dab + db + 1e-12);
        prop_assert!((0.0..=1.0).contains(&dab));
    }
}
