//! Go/no-go checklist: thirteen independent checks, each pinning a headline
//! constant, convergence rate, or identity at desk scale. One pass/fail line
//! per item under `cargo test --test acceptance`. Tolerances are stated
//! inline; a failure message carries the computed value for triage.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

use fig8_core::asymptotics_verifier::{
    convergence_study, known_case_predict, saddle_check, Route,
};
use fig8_core::figure_eight_core::{
    action_s, colored_jones, longitude_eigenvalue, make_cusp, v_of, KAPPA,
};
use fig8_core::quantum_dilog::{
    jones_via_potential, t_n, PotentialContext, QuadratureSpec,
};
use fig8_core::region_atlas::{
    appendix_numeric_oracles, classify, curvature_lambda, gamma_zero_trace, DEFAULT_ZERO_TOL,
};
use fig8_core::special_functions::{l2, principal_sqrt};
use fig8_core::topology_invariants::{
    check_relation, cs_invariant, longitude_matrix, riley_rep, RepSign,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn wrapped_angle(d: f64) -> f64 {
    let m = d.rem_euclid(2.0 * PI);
    m.min(2.0 * PI - m)
}

/// Relative deviation of exact from predicted, both in log form.
fn rel_err(exact: fig8_core::figure_eight_core::LogComplex, pred: fig8_core::figure_eight_core::LogComplex) -> f64 {
    (Complex64::from_polar((exact.log_mag - pred.log_mag).exp(), exact.arg - pred.arg)
        - 1.0)
        .norm()
}

#[test]
fn criterion_01_growth_threshold_constant() {
    assert!(
        (KAPPA - 1.5f64.acosh()).abs() < 1e-15,
        "KAPPA = {KAPPA} vs arcosh(3/2) = {}",
        1.5f64.acosh()
    );
    assert!((KAPPA - 0.962424).abs() <= 1e-5, "KAPPA = {KAPPA}");
}

#[test]
fn criterion_02_diagnostic_triple_at_the_reference_point() {
    let (_, diag) = classify(c64(1.0, 0.5), DEFAULT_ZERO_TOL);
    assert!(
        (diag.tech_condition - 0.0661743).abs() <= 1e-5,
        "a tanh c - b tan d = {}",
        diag.tech_condition
    );
    assert!(
        (diag.cosh_a_minus_cos_b - 0.665498).abs() <= 1e-5,
        "cosh a - cos b = {}",
        diag.cosh_a_minus_cos_b
    );
    assert!(
        (diag.re_s_over_xi + 0.166996).abs() <= 1e-5,
        "Re(S/xi) = {}",
        diag.re_s_over_xi
    );
}

#[test]
fn criterion_03_decay_regime_converges_at_second_order() {
    let rep = convergence_study(&make_cusp(c64(1.0, 0.5)), &[100, 200, 400], Route::Direct)
        .unwrap();
    for w in rep.errors.windows(2) {
        let ratio = w[1] / w[0];
        assert!(w[1] < w[0], "errors not decreasing: {:?}", rep.errors);
        assert!(
            (0.18..=0.32).contains(&ratio),
            "doubling ratio {ratio} (errors {:?})",
            rep.errors
        );
    }
}

#[test]
fn criterion_04_growth_regime_converges_at_first_order() {
    let rep = convergence_study(&make_cusp(c64(1.5, 0.5)), &[100, 200, 400], Route::Direct)
        .unwrap();
    let ratio = rep.errors[2] / rep.errors[1];
    assert!(
        (0.35..=0.65).contains(&ratio),
        "doubling ratio {ratio} (errors {:?})",
        rep.errors
    );
    assert!(rep.errors[2] < 0.1, "relative error at N = 400: {}", rep.errors[2]);
    let dphi = wrapped_angle(rep.exact[2].arg - rep.predicted[2].arg);
    assert!(dphi < 0.05, "phase error {dphi} rad at N = 400");
}

#[test]
fn criterion_05_balanced_line_location_and_half_order_rate() {
    let a_star = gamma_zero_trace(0.5, (1.0, 1.2), 1e-13).unwrap();
    assert!((a_star - 1.0943).abs() <= 1e-3, "traced root a* = {a_star}");
    let rep = convergence_study(&make_cusp(c64(a_star, 0.5)), &[200, 400, 800], Route::Direct)
        .unwrap();
    let ratio = rep.errors[2] / rep.errors[0];
    assert!(
        (0.4..=0.6).contains(&ratio),
        "quadrupling ratio {ratio} (errors {:?})",
        rep.errors
    );
}

#[test]
fn criterion_06_shallow_regime_fitted_order_is_two() {
    let rep = convergence_study(&make_cusp(c64(0.3, 0.3)), &[50, 100, 200], Route::Direct)
        .unwrap();
    assert!(
        (-2.4..=-1.6).contains(&rep.fitted_order),
        "fitted order {} (errors {:?})",
        rep.fitted_order,
        rep.errors
    );
}

#[test]
fn criterion_07_discrete_dilog_identities_and_route_agreement() {
    let xi = c64(1.0, 0.5);
    let quad = QuadratureSpec::default();

    // exp(T_N((j-1/2)g/N) - T_N((j+1/2)g/N)) = 1 - e^{j xi/N} across colors
    let ctx = PotentialContext::new(make_cusp(xi), 15).unwrap();
    for j in 1..=29u32 {
        let jf = f64::from(j);
        let lo = t_n((jf - 0.5) * ctx.gamma / 15.0, &ctx, &quad).unwrap();
        let hi = t_n((jf + 0.5) * ctx.gamma / 15.0, &ctx, &quad).unwrap();
        let resid = ((lo - hi).exp() - (1.0 - (jf * xi / 15.0).exp())).norm();
        assert!(resid < 1e-7, "residual {resid:e} at j = {j}");
    }

    // first-order approach to the scaled periodic dilogarithm
    let z = c64(0.35, -0.05);
    let t_err = |n: u32| {
        let ctx = PotentialContext::new(make_cusp(xi), n).unwrap();
        (t_n(z, &ctx, &quad).unwrap() - (f64::from(n) / xi) * l2(z).unwrap()).norm()
    };
    let halving = t_err(100) / t_err(50);
    assert!((0.4..=0.6).contains(&halving), "halving ratio {halving}");

    // the contour-integral route reproduces the cyclotomic sum
    let samples = [
        c64(0.5, 0.3),
        c64(1.0, 0.5),
        c64(1.5, 0.5),
        c64(0.8, 1.0),
        c64(2.0, 0.4),
    ];
    for xi in samples {
        let cp = make_cusp(xi);
        for n in 1..=12u32 {
            let via_integral = jones_via_potential(n, &cp, &quad).unwrap();
            let err = rel_err(via_integral, colored_jones(n, xi));
            assert!(err < 1e-6, "route mismatch {err:e} at N = {n}, xi = {xi}");
        }
    }
}

#[test]
fn criterion_08_saddle_is_critical_with_the_stated_second_derivative() {
    let mut rng = StdRng::seed_from_u64(8);
    let mut checked = 0;
    while checked < 20 {
        let xi = c64(rng.gen_range(0.1..2.3), rng.gen_range(0.1..1.4));
        let cp = make_cusp(xi);
        if !cp.in_xi || cp.torsion_pole {
            continue;
        }
        checked += 1;
        let rep = saddle_check(&cp).unwrap();
        assert!(rep.grad_norm < 1e-10, "|F'(sigma)| = {:e} at {xi}", rep.grad_norm);
        assert!(
            rep.hessian_fd_error < 1e-6,
            "second-derivative mismatch {:e} at {xi}",
            rep.hessian_fd_error
        );
    }
}

#[test]
fn criterion_09_representation_and_peripheral_identities() {
    // group relation at random parameters, both radical branches
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..1000 {
        let xi = c64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        for sign in [RepSign::Plus, RepSign::Minus] {
            let resid = check_relation(&riley_rep(xi, sign));
            assert!(resid < 1e-10, "relation residual {resid:e} at {xi} {sign:?}");
        }
    }

    // longitude eigenvalue vs the derivative exponential
    let mut kept = 0;
    while kept < 1000 {
        let xi = c64(rng.gen_range(0.02..2.5), rng.gen_range(0.02..1.5));
        let cp = make_cusp(xi);
        if !cp.in_xi || cp.torsion_pole {
            continue;
        }
        kept += 1;
        let resid = (longitude_eigenvalue(xi) + (-v_of(&cp) / 2.0).exp()).norm();
        assert!(resid < 1e-10, "eigenvalue mismatch {resid:e} at {xi}");
    }

    // corner values
    let corner = make_cusp(c64(KAPPA, 0.0));
    let cs = cs_invariant(&corner).unwrap();
    assert!(
        (cs + KAPPA * PI / 2.0 * I).norm() <= 1e-12,
        "CS at the corner = {cs}"
    );
    assert!(
        (v_of(&corner) + 2.0 * PI * I).norm() <= 1e-12,
        "v at the corner = {}",
        v_of(&corner)
    );

    // longitude image: upper-triangular with the closed-form corner entry
    let xi = c64(1.0, 0.5);
    let two_ch = 2.0 * xi.cosh();
    let off = 2.0 * (xi / 2.0).cosh() * principal_sqrt((two_ch - 3.0) * (two_ch + 1.0));
    for (sign, expected) in [(RepSign::Plus, -off), (RepSign::Minus, off)] {
        let m = longitude_matrix(&riley_rep(xi, sign));
        assert!(m.m21.norm() < 1e-10, "lower-left {:e} for {sign:?}", m.m21.norm());
        assert!(
            (m.m12 - expected).norm() <= 1e-9,
            "top-right {} vs {expected} for {sign:?}",
            m.m12
        );
    }
}

#[test]
fn criterion_10_action_at_zero_is_minus_i_times_the_volume() {
    let s0 = action_s(&make_cusp(c64(0.0, 0.0)));
    assert!((s0.norm() - 2.029883).abs() <= 1e-5, "|S(0)| = {}", s0.norm());
    assert!(s0.re.abs() < 1e-12, "Re S(0) = {:e}", s0.re);
    assert!(s0.im < 0.0, "Im S(0) = {}", s0.im);
}

#[test]
fn criterion_11_tabulated_boundary_study_values() {
    let report = appendix_numeric_oracles();
    assert!(report.all_pass(), "tabulated-value mismatches:\n{report}");
}

#[test]
fn criterion_12_boundary_curvature_is_positive_away_from_its_single_zero() {
    let mut rng = StdRng::seed_from_u64(12);
    let mut kept = 0u32;
    while kept < 100_000 {
        let alpha: f64 = rng.gen_range(0.5..3.0);
        let beta: f64 = rng.gen_range(0.0..3.0);
        let s: f64 = rng.gen_range(0.0..2.0 * PI);
        if alpha <= 0.5 || beta <= 0.0 || (alpha - 1.0).powi(2) + beta * beta < 0.25 {
            continue;
        }
        let (aa, bb) = (alpha + s.cos() / 2.0, beta + s.sin() / 2.0);
        if ((aa - 1.0).powi(2) + bb * bb).sqrt() <= 1e-6 {
            continue;
        }
        kept += 1;
        let lam = curvature_lambda(alpha, beta, s);
        assert!(lam > 0.0, "lambda = {lam:e} at ({alpha}, {beta}, {s})");
    }
    let pinned = curvature_lambda(1.0, 0.5, -PI / 2.0);
    assert!(pinned.abs() < 1e-10, "lambda at the singular point = {pinned:e}");
}

#[test]
fn criterion_13_corner_growth_ratio_improves_with_color() {
    let kappa = c64(KAPPA, 0.0);
    let err = |n: u32| rel_err(colored_jones(n, kappa), known_case_predict(5, kappa, n).unwrap());
    let (e500, e2000) = (err(500), err(2000));
    assert!(
        e2000 < e500,
        "relative error did not shrink: err(500) = {e500:e}, err(2000) = {e2000:e}"
    );
}
