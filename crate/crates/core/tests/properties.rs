use num_complex::Complex64;
use proptest::prelude::*;
use uncertainty_lab::counterexamples::{gc_uncertainty_ratio, sign_matrix};
use uncertainty_lab::grid::{fourier_transform, grid_weighted_norm, plancherel_defect_with, random_bump};
use uncertainty_lab::params::{cp_classify, cp_delta_window, cp_params, l2_params, lp_params, CpClass, CpExponents};
use uncertainty_lab::specialfn::{dimension_constants, log_gamma};

/// A homogeneous tuple with both margins positive.
fn feasible_tuple() -> impl Strategy<Value = (usize, f64, f64, f64, f64)> {
    (1usize..=12, 1.05f64..12.0, 1.05f64..12.0, 0.01f64..1.5).prop_filter_map("phi not feasible", |(d, p, q, m)| {
        let df = d as f64;
        let theta = df * ((0.5 - 1.0 / p).max(0.0) + m);
        let phi = df * (1.0 / p + theta / df - 1.0 / q);
        (phi > 0.0 && phi / df - (0.5 - 1.0 / q) > 1e-6).then_some((d, p, q, theta, phi))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_gamma_recurrence(x in 0.5f64..150.0) {
        let diff = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
        prop_assert!((diff - x.ln()).abs() <= 1e-12 * (1.0 + x.ln().abs()));
    }

    #[test]
    fn sphere_is_d_times_ball(d in 1usize..2000) {
        let c = dimension_constants(d).unwrap();
        let gap = c.log_sphere_area - (d as f64).ln() - c.log_ball_volume;
        prop_assert!(gap.abs() <= 1e-11 * (1.0 + c.log_sphere_area.abs()));
    }

    #[test]
    fn l2_exponents_are_conjugate(d in 1usize..5000) {
        let pr = l2_params(d).unwrap();
        prop_assert!((1.0 / pr.r + 1.0 / pr.s - 1.0).abs() <= 1e-14);
        prop_assert!((pr.a * pr.r - 2.0).abs() <= 1e-13);
        prop_assert!(pr.half_mass_defect().abs() <= 1e-12);
        prop_assert!(pr.log_bound.is_finite());
    }

    #[test]
    fn lp_exponents_are_conjugate(d in 1usize..400, t in 0.01f64..0.99) {
        // p strictly between 1 and the critical exponent (capped for d = 1)
        let crit = if d == 1 { 6.0 } else { 2.0 * d as f64 / (d as f64 - 1.0) };
        let p = 1.0 + t * (crit - 1.0);
        let pr = lp_params(d, p).unwrap();
        prop_assert!((1.0 / pr.r + 1.0 / pr.s - 1.0).abs() <= 1e-12);
        prop_assert!((pr.a * pr.r - p).abs() <= 1e-12 * p);
        prop_assert!(pr.a > 1.0 && pr.a < p);
        prop_assert!(pr.half_mass_defect().abs() <= 1e-12);
    }

    #[test]
    fn cp_delta_in_window_and_identities((d, p, q, theta, phi) in feasible_tuple()) {
        let ex = CpExponents::new(d, p, q, theta, phi).unwrap();
        prop_assert_eq!(cp_classify(&ex).unwrap(), CpClass::Feasible);
        let window = cp_delta_window(&ex).unwrap();
        prop_assert!(window.lower < window.upper);
        let cp = cp_params(d, p, q, theta, phi).unwrap();
        prop_assert!(window.contains(cp.delta));
        let df = d as f64;
        prop_assert!((cp.a - cp.a_tilde).abs() <= 1e-12 * cp.a);
        prop_assert!((cp.b * cp.s1 - (df + cp.epsilon)).abs() <= 1e-12 * (df + cp.epsilon));
        prop_assert!((1.0 / cp.r1 + 1.0 / cp.s1 - 1.0).abs() <= 1e-12);
        prop_assert!(cp.log_bound.is_finite());
    }

    #[test]
    fn homogeneity_is_enforced((d, p, q, theta, phi) in feasible_tuple(), bump in 0.01f64..1.0) {
        let ex = CpExponents::new(d, p, q, theta, phi + bump).unwrap();
        prop_assert!(cp_classify(&ex).is_err());
    }

    #[test]
    fn parallelogram_law(d in 1usize..=6, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let s = sign_matrix(d).unwrap();
        let a: Vec<Complex64> = (0..s.size()).map(|_| Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0))).collect();
        let lhs: f64 = s.apply(&a).iter().map(|v| v.norm_sqr()).sum();
        let rhs = s.size() as f64 * a.iter().map(|v| v.norm_sqr()).sum::<f64>();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn gc_ratio_symmetric_in_c(c in 1.0f64..20.0, d in 1usize..5, p in 1.2f64..6.0) {
        let a = gc_uncertainty_ratio(c, d, p).unwrap();
        let b = gc_uncertainty_ratio(1.0 / c, d, p).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn grid_transform_contracts(d in 1usize..=2, seed in any::<u64>(), a in 1.1f64..1.95) {
        let f = random_bump(d, seed).unwrap();
        let fhat = fourier_transform(&f).unwrap();
        prop_assert!(plancherel_defect_with(&f, &fhat).unwrap() <= 1e-10);
        let a_dual = a / (a - 1.0);
        // Hausdorff-Young
        prop_assert!(grid_weighted_norm(&fhat, a_dual, 0.0) <= (1.0 + 1e-6) * grid_weighted_norm(&f, a, 0.0));
        // applying the transform twice reflects
        let back = fourier_transform(&fhat).unwrap();
        let err = back.sup_distance(&f.reflect()).unwrap();
        prop_assert!(err <= 1e-10 * f.sup_norm());
    }
}
