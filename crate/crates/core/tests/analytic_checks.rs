mod common;

use std::f64::consts::PI;

use common::rel;
use fprmt::analytic::*;
use fprmt::ensemble::{estimate_real_density_at, McConfig};
use fprmt::ModelSpec;
use proptest::prelude::*;

#[test]
fn exact_one_dimensional_law_matches_quadrature() {
    for sigma in [0.2, 0.5, 1.0, 2.0, 5.0, 20.0] {
        let want = common::abs_shift_mean(sigma);
        let got = mean_fixed_points_exact_1_1(sigma).unwrap();
        assert!(rel(got, want) < 1e-10, "σ = {sigma}: {got} vs {want}");
    }
    assert!((mean_fixed_points_exact_1_1(1.0).unwrap() - 1.166_63).abs() < 5e-6);
    assert!((mean_fixed_points_exact_1_1(5.0).unwrap() - 4.0689).abs() < 5e-5);
    // large-σ ratio to σ√(2/π) decreases towards 1
    let ratio = |s: f64| mean_fixed_points_exact_1_1(s).unwrap() / (s * (2.0 / PI).sqrt());
    assert!(ratio(5.0) > ratio(50.0) && ratio(50.0) > ratio(500.0) && ratio(500.0) - 1.0 < 1e-5);
}

#[test]
fn complexity_polar_quadrature_grid() {
    for s in [0.25, 0.5, 2.0, 4.0] {
        for d in 1..=3 {
            let closed = complexity(s, d).unwrap();
            let polar = complexity_via_integral(s, d, 256).unwrap();
            assert!((closed - polar).abs() < 1e-6, "σ̂ = {s}, D = {d}: {closed} vs {polar}");
        }
    }
    assert!((complexity(2.0, 1).unwrap() - 0.318_147).abs() < 1e-6);
    assert!((angular_log_mean(3.0).unwrap() - 3f64.ln()).abs() < 1e-10);
    assert!(angular_log_mean(0.4).unwrap().abs() < 1e-10);
}

#[test]
fn complexity_vanishes_below_threshold() {
    for d in 1..=4 {
        assert_eq!(complexity(0.5, d).unwrap(), 0.0);
        assert_eq!(complexity(1.0, d).unwrap(), 0.0);
        assert!(complexity(1.01, d).unwrap() > 0.0);
    }
}

#[test]
fn global_real_density_integrates_to_the_real_count_law() {
    for d in 1..=4usize {
        // λ = u^D removes the |λ|^{1/D − 1} singularity at the origin
        let f = |u: f64| {
            if u == 0.0 {
                return if d == 1 { global_density_real(0.0, 1).unwrap() } else { 0.0 };
            }
            let df = d as f64;
            global_density_real(u.powi(d as i32), d).unwrap() * df * u.powi(d as i32 - 1)
        };
        let total = 2.0 * common::integrate(f, 0.0, 1.0, 1e-14, 1);
        let want = (2.0 * d as f64 / PI).sqrt();
        assert!(rel(total, want) < 1e-8, "D = {d}: {total} vs {want}");
    }
    assert!(rel(global_density_real(0.25, 2).unwrap(), 2.0 / (4.0 * PI).sqrt()) < 1e-14);
    assert_eq!(global_density_real(1.5, 2).unwrap(), 0.0);
}

#[test]
fn global_complex_density_is_normalized() {
    for d in 1..=4usize {
        // r = u^D again
        let f = |u: f64| {
            if u == 0.0 {
                return if d == 1 { 0.0 } else { 0.0 };
            }
            let r = u.powi(d as i32);
            2.0 * PI * r * global_density_complex(r, d).unwrap() * d as f64 * u.powi(d as i32 - 1)
        };
        let total = common::integrate(f, 0.0, 1.0, 1e-14, 1);
        assert!(rel(total, 1.0) < 1e-10, "D = {d}: {total}");
    }
}

#[test]
fn ratio_matches_log_gamma_oracle() {
    assert!((z_ratio_log(1, 1, &[]).unwrap() - 2f64.ln()).abs() < 1e-14);
    assert!((z_ratio_log(1, 2, &[0]).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-14);
    // (D(N+1)/2) log 2 + log Γ((N+1)/2) + Σ log Γ((N+1+ν)/2) with quadrature Γ
    for (n, nus) in [(50usize, vec![]), (30, vec![1usize]), (20, vec![0, 3])] {
        let d = nus.len() + 1;
        let np1 = (n + 1) as f64;
        let want = 0.5 * d as f64 * np1 * 2f64.ln()
            + common::ln_gamma(0.5 * np1)
            + nus.iter().map(|&v| common::ln_gamma(0.5 * (np1 + v as f64))).sum::<f64>();
        let got = z_ratio_log(n, d, &nus).unwrap();
        assert!((got - want).abs() < 1e-10 * want.abs(), "N = {n}: {got} vs {want}");
    }
}

#[test]
fn stirling_remainder_is_order_one_over_n() {
    for (d, nus) in [(1usize, vec![]), (2, vec![0usize]), (2, vec![2]), (3, vec![1, 0])] {
        let err = |n: usize| {
            z_ratio_log(n, d, &nus).unwrap() - z_ratio_stirling_log(n, d, &nus).unwrap()
        };
        let (e1, e2, e3) = (err(50), err(100), err(400));
        assert!(e2.abs() < e1.abs() && e3.abs() < e2.abs(), "D = {d}: {e1} {e2} {e3}");
        // N·error settles
        let (s2, s3) = (100.0 * e2, 400.0 * e3);
        assert!((s2 - s3).abs() < 0.1 * s3.abs().max(1e-3), "D = {d}: {s2} vs {s3}");
    }
}

#[test]
fn two_layer_weight_against_bessel_oracle() {
    let w = weight_real_log(1.0, 2, &[0]).unwrap();
    assert!((w - (2.0 * common::bessel_k(0.0, 1.0)).ln()).abs() < 1e-9);
    let w = weight_real_log(2.0, 2, &[1]).unwrap();
    assert!((w - (2.0 * common::bessel_k(0.5, 2.0)).ln()).abs() < 1e-9);
    assert_eq!(weight_real_log(0.0, 1, &[]).unwrap(), 0.0);
    assert!(weight_real_log(1.0, 3, &[0, 0]).is_err());
}

#[test]
fn asymptotic_weight_matches_exact_weight() {
    for (n, s) in [(10usize, 0.7), (50, 1.5)] {
        let exact = weight_real_log((n as f64).sqrt() / s, 1, &[]).unwrap();
        let asym = weight_real_asymptotic_log(s, n, 1, &[]).unwrap();
        assert!(rel(asym, -(n as f64) / (2.0 * s * s)) < 1e-14);
        assert!(rel(asym, exact) < 1e-12);
    }
    let exact = weight_real_log(200.0, 2, &[0]).unwrap();
    let asym = weight_real_asymptotic_log(1.0, 200, 2, &[0]).unwrap();
    assert!(rel(asym, exact) < 0.01, "{asym} vs {exact}");
}

#[test]
fn finite_n_density_integrates_to_mean_real_count() {
    // 2×2 real Ginibre: E n = √2
    let f = |x: f64| finite_n_real_density_d1(1, x).unwrap();
    let total = 2.0 * common::integrate(f, 0.0, 40.0, 1e-13, 8);
    assert!(rel(total, 2f64.sqrt()) < 1e-9, "{total}");
}

#[test]
fn integral_density_for_two_layers_matches_monte_carlo() {
    // matrix size N + 1 = 5
    let spec = ModelSpec::new(5, vec![0], vec![1.0, 1.0]).unwrap();
    let mc = McConfig::new(400_000, 21, 4);
    let est = estimate_real_density_at(&spec, 1.0, 0.05, &mc).unwrap();
    let want = finite_n_real_density_integral(2, 4, 1.0, &[0]).unwrap();
    assert!((est.density - want).abs() < 3.0 * est.stderr + est.bias.abs(), "{est:?} vs {want}");
}

#[test]
fn edge_density_limits() {
    assert!(edge_density(12.0) < 1e-60);
    assert!(rel(edge_density(-12.0), 1.0 / (2.0 * PI).sqrt()) < 1e-12);
    assert!((edge_density(0.0) - 0.340_518).abs() < 1e-6);
}

#[test]
fn finite_n_density_approaches_the_edge_profile() {
    // pointwise error shrinks as N grows
    for zeta in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let err = |n: usize| {
            let v = finite_n_real_density_d1(n, (n as f64).sqrt() + zeta).unwrap();
            rel(v, edge_density(zeta))
        };
        assert!(err(1600) < err(100), "ζ = {zeta}");
    }
}

#[test]
fn low_density_form_matches_closed_form_density() {
    // one layer, N = 50, σ̂ = 0.5: log ρ_{N+1}(√N/σ̂)
    let spec = ModelSpec::from_sigma_hat(50, vec![], 0.5).unwrap();
    let approx = low_density_approx_log(&spec).unwrap();
    let exact = finite_n_real_density_d1(50, 50f64.sqrt() / 0.5).unwrap().ln();
    assert!(rel(approx, exact) < 0.05, "{approx} vs {exact}");
    let spec = ModelSpec::from_sigma_hat(10, vec![], 0.5).unwrap();
    let v = low_density_approx_log(&spec).unwrap();
    assert!((v - (-0.5 * (4.0 * PI).ln() - 10.0 * (0.5f64.ln() + 1.5))).abs() < 1e-12);
}

#[test]
fn lemma_rhs_for_a_scalar_map() {
    let spec = ModelSpec::single(1, 1.0).unwrap();
    let rho = finite_n_real_density_d1(1, 1.0).unwrap();
    let rhs = lemma_rhs_log(&spec, rho).unwrap();
    assert!((rhs - common::abs_shift_mean(1.0).ln()).abs() < 1e-12, "{rhs}");
}

#[test]
fn asymptotic_prediction_values() {
    let spec = ModelSpec::from_sigma_hat(50, vec![], 1.5).unwrap();
    let p = mean_fixed_points_asymptotic_log(&spec);
    assert!((p.log_value - (0.5 * 2f64.ln() + 50.0 * 0.127_687)).abs() < 5e-5);
    assert_eq!(p.regime, Regime::AboveThreshold);
    assert!(!p.near_critical);
}

proptest! {
    #[test]
    fn integral_density_is_even(lambda in 0.05f64..4.0, n in 1usize..6, nu in 0usize..3) {
        let a = finite_n_real_density_integral(2, n, lambda, &[nu]).unwrap();
        let b = finite_n_real_density_integral(2, n, -lambda, &[nu]).unwrap();
        prop_assert!(rel(a, b) < 1e-9);
    }

    #[test]
    fn complexity_is_nondecreasing(s in 0.1f64..6.0, ds in 0.0f64..1.0, d in 1usize..4) {
        prop_assert!(complexity(s + ds, d).unwrap() >= complexity(s, d).unwrap());
    }

    #[test]
    fn asymptotic_weight_decreases_with_n(s in 0.3f64..3.0, n in 2usize..200) {
        let a = weight_real_asymptotic_log(s, n, 2, &[1]).unwrap();
        let b = weight_real_asymptotic_log(s, n + 1, 2, &[1]).unwrap();
        prop_assert!(b < a);
    }
}
