//! Cross-module invariant suite behind `fig8 selftest`. Each check is a
//! fast, deterministic condensation of a library invariant; failures print
//! the offending value rather than just a flag.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fig8_core::asymptotics_verifier::{predict, saddle_check, sum_vs_integral_check};
use fig8_core::figure_eight_core::{
    colored_jones, longitude_eigenvalue, make_cusp, saddle_hessian, torsion, v_of, KAPPA,
};
use fig8_core::quantum_dilog::{jones_via_potential, t_n, PotentialContext, QuadratureSpec};
use fig8_core::region_atlas::{chi_curve, classify, RegionLabel};
use fig8_core::special_functions::{dilog, principal_log, principal_sqrt};
use fig8_core::topology_invariants::{
    check_relation, cs_invariant, longitude_matrix, riley_rep, RepSign,
};

use crate::Failure;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn check(cond: bool, msg: String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg)
    }
}

fn principal_branch_roundtrips() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..2000 {
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        if z.norm() < 1e-6 {
            continue;
        }
        let r = principal_sqrt(z);
        check((r * r - z).norm() <= 1e-12 * z.norm(), format!("sqrt roundtrip at {z}"))?;
        let l = principal_log(z).map_err(|e| e.to_string())?;
        check((l.exp() - z).norm() <= 1e-12 * z.norm(), format!("log roundtrip at {z}"))?;
    }
    Ok(())
}

fn dilog_reference_values() -> Result<(), String> {
    let half = dilog(Complex64::new(0.5, 0.0));
    let expect = PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2);
    check((half.re - expect).abs() < 1e-14 && half.im.abs() < 1e-14, format!("Li2(1/2) = {half}"))?;
    let minus = dilog(Complex64::new(-1.0, 0.0));
    check((minus.re + PI * PI / 12.0).abs() < 1e-14, format!("Li2(-1) = {minus}"))?;
    let two = dilog(Complex64::new(2.0, 0.0));
    check(
        (two.re - PI * PI / 4.0).abs() < 1e-14 && (two.im + PI * 2f64.ln()).abs() < 1e-14,
        format!("Li2(2) = {two}"),
    )
}

fn cusp_cosh_identity() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(12);
    let mut hits = 0;
    while hits < 500 {
        let xi = Complex64::new(rng.gen_range(0.1..2.0), rng.gen_range(0.05..1.5));
        let cp = make_cusp(xi);
        if !cp.in_xi {
            continue;
        }
        hits += 1;
        let lhs = cp.phi.cosh();
        let rhs = xi.cosh() - 0.5;
        check((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()), format!("cosh phi at {xi}"))?;
    }
    Ok(())
}

fn jones_conjugation_symmetry() -> Result<(), String> {
    for xi in [Complex64::new(1.0, 0.5), Complex64::new(0.4, 1.1)] {
        for n in [5u32, 9, 13] {
            let plain = colored_jones(n, xi).to_complex();
            let conj = colored_jones(n, xi.conj()).to_complex();
            check(
                (conj - plain.conj()).norm() <= 1e-12 * (1.0 + plain.norm()),
                format!("conjugation symmetry at {xi}, N = {n}"),
            )?;
        }
    }
    Ok(())
}

fn longitude_exponential_identity() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(13);
    let mut hits = 0;
    while hits < 300 {
        let xi = Complex64::new(rng.gen_range(0.1..2.0), rng.gen_range(0.05..1.5));
        let cp = make_cusp(xi);
        if !cp.in_xi || cp.torsion_pole {
            continue;
        }
        hits += 1;
        let ell = longitude_eigenvalue(xi);
        let from_v = -(-0.5 * v_of(&cp)).exp();
        check(
            (ell - from_v).norm() < 1e-10 * (1.0 + ell.norm()),
            format!("longitude eigenvalue identity at {xi}"),
        )?;
    }
    Ok(())
}

fn degenerate_points_are_rejected() -> Result<(), String> {
    let kappa = Complex64::new(KAPPA, 0.0);
    check(torsion(kappa).is_err(), "torsion should reject kappa".into())?;
    check(
        saddle_hessian(&make_cusp(kappa)).is_err(),
        "saddle hessian should reject kappa".into(),
    )
}

fn quantum_dilog_functional_equation() -> Result<(), String> {
    let cp = make_cusp(Complex64::new(1.5, 0.5));
    let n = 15;
    let ctx = PotentialContext::new(cp, n).map_err(|e| e.to_string())?;
    let gamma = cp.xi / (2.0 * PI * I);
    let quad = QuadratureSpec::default();
    for z in [
        Complex64::new(0.3, 0.0),
        Complex64::new(0.45, 0.05),
        Complex64::new(0.6, -0.1),
    ] {
        let lhs = t_n(z, &ctx, &quad).map_err(|e| e.to_string())?.exp();
        let shifted = t_n(z + gamma / n as f64, &ctx, &quad)
            .map_err(|e| e.to_string())?
            .exp();
        let factor = Complex64::new(1.0, 0.0)
            - (2.0 * PI * I * (z + gamma / (2.0 * n as f64))).exp();
        let resid = (lhs - shifted * factor).norm() / lhs.norm();
        check(resid < 1e-8, format!("functional equation residual {resid} at z = {z}"))?;
    }
    Ok(())
}

fn evaluation_routes_agree() -> Result<(), String> {
    let quad = QuadratureSpec::default();
    for xi in [Complex64::new(1.0, 0.5), Complex64::new(1.5, 0.5)] {
        let n = 8;
        let direct = colored_jones(n, xi);
        let pot = jones_via_potential(n, &make_cusp(xi), &quad).map_err(|e| e.to_string())?;
        let rel = (Complex64::from_polar(
            (pot.log_mag - direct.log_mag).exp(),
            pot.arg - direct.arg,
        ) - 1.0)
            .norm();
        check(rel < 1e-6, format!("route disagreement {rel} at {xi}"))?;
    }
    Ok(())
}

fn regime_partition_is_consistent() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(14);
    for _ in 0..2000 {
        let xi = Complex64::new(rng.gen_range(-2.5..2.5), rng.gen_range(-3.5..3.5));
        let (label, d) = classify(xi, 1e-9);
        let in_xi_label = label != RegionLabel::OutsideXi;
        check(in_xi_label == d.in_xi, format!("in_xi mismatch at {xi}"))?;
        match label {
            RegionLabel::OmegaCapXi => {
                check(d.cosh_a_minus_cos_b < 0.5, format!("Omega gap at {xi}"))?
            }
            RegionLabel::GammaPlus | RegionLabel::GammaZero | RegionLabel::GammaMinus => {
                check(d.tech_condition >= 0.0, format!("Gamma tech sign at {xi}"))?
            }
            RegionLabel::GammaTildePlus
            | RegionLabel::GammaTildeZero
            | RegionLabel::GammaTildeMinus => {
                check(d.tech_condition < 0.0, format!("GammaTilde tech sign at {xi}"))?
            }
            _ => {}
        }
    }
    Ok(())
}

fn chi_curve_spans_xi_to_phi() -> Result<(), String> {
    let cp = make_cusp(Complex64::new(1.0, 0.5));
    let pts = chi_curve(&cp, 64).map_err(|e| e.to_string())?;
    let first = pts.first().copied().unwrap_or_default();
    let last = pts.last().copied().unwrap_or_default();
    check((first - cp.xi).norm() < 1e-9, format!("chi start {first}"))?;
    check((last - cp.phi).norm() < 1e-9, format!("chi end {last}"))
}

fn saddle_equation_holds() -> Result<(), String> {
    for xi in [Complex64::new(1.5, 0.5), Complex64::new(1.0, 0.5)] {
        let report = saddle_check(&make_cusp(xi)).map_err(|e| e.to_string())?;
        check(
            report.pass,
            format!(
                "saddle check at {xi}: grad {} fd {}",
                report.grad_norm, report.hessian_fd_error
            ),
        )?;
    }
    Ok(())
}

fn prediction_product_identity() -> Result<(), String> {
    let n = 200;
    let cp = make_cusp(Complex64::new(1.5, 0.5));
    let p = predict(&cp, n).map_err(|e| e.to_string())?;
    let coef = p.prefactor * p.torsion_factor;
    let log_mag = coef.norm().ln() + n as f64 * p.growth_rate.re;
    let arg_diff = (Complex64::from_polar(1.0, coef.arg() + n as f64 * p.growth_rate.im)
        * Complex64::from_polar(1.0, -p.leading.arg)
        - 1.0)
        .norm();
    check(
        (log_mag - p.leading.log_mag).abs() < 1e-9 && arg_diff < 1e-9,
        "prediction product identity".into(),
    )
}

fn decaying_regime_matches_limit() -> Result<(), String> {
    let xi = Complex64::new(1.0, 0.5);
    let exact = colored_jones(300, xi).to_complex();
    let pred = predict(&make_cusp(xi), 300)
        .map_err(|e| e.to_string())?
        .leading
        .to_complex();
    let err = (exact - pred).norm();
    check(err < 1e-3, format!("limit error {err}"))
}

fn poisson_residual_is_small() -> Result<(), String> {
    let cp = make_cusp(Complex64::new(1.5, 0.5));
    let quad = QuadratureSpec::default();
    let r = sum_vs_integral_check(&cp, 60, 0.01, &quad).map_err(|e| e.to_string())?;
    check(r < 1e-2, format!("sum-versus-integral residual {r}"))
}

fn representation_relation_holds() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(15);
    for _ in 0..200 {
        let xi = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-3.0..3.0));
        for sign in [RepSign::Plus, RepSign::Minus] {
            let r = check_relation(&riley_rep(xi, sign));
            check(r < 1e-10, format!("relation residual {r} at {xi}"))?;
        }
    }
    Ok(())
}

fn longitude_holonomy_is_diagonalized() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(16);
    for _ in 0..100 {
        let xi = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-2.0..2.0));
        for sign in [RepSign::Plus, RepSign::Minus] {
            let long = longitude_matrix(&riley_rep(xi, sign));
            let ell = longitude_eigenvalue(xi);
            check(long.m21.norm() < 1e-10, format!("lower-left {} at {xi}", long.m21))?;
            check(
                (long.m11 * long.m22 - Complex64::new(1.0, 0.0)).norm() < 1e-9,
                format!("diagonal product at {xi}"),
            )?;
            let matched = (long.m11 - ell).norm() < 1e-9 * (1.0 + ell.norm())
                || (long.m22 - ell).norm() < 1e-9 * (1.0 + ell.norm());
            check(matched, format!("diagonal misses eigenvalue at {xi}"))?;
        }
    }
    Ok(())
}

fn chern_simons_corner_value() -> Result<(), String> {
    let cs = cs_invariant(&make_cusp(Complex64::new(KAPPA, 0.0))).map_err(|e| e.to_string())?;
    let expected = Complex64::new(0.0, -KAPPA * PI / 2.0);
    check((cs - expected).norm() < 1e-12, format!("cs(kappa) = {cs}"))
}

pub(crate) fn run_all() -> Result<(), Failure> {
    let checks: &[(&str, fn() -> Result<(), String>)] = &[
        ("principal branch roundtrips", principal_branch_roundtrips),
        ("dilogarithm reference values", dilog_reference_values),
        ("cusp cosh identity", cusp_cosh_identity),
        ("jones conjugation symmetry", jones_conjugation_symmetry),
        ("longitude exponential identity", longitude_exponential_identity),
        ("degenerate points rejected", degenerate_points_are_rejected),
        ("quantum dilog functional equation", quantum_dilog_functional_equation),
        ("evaluation routes agree", evaluation_routes_agree),
        ("regime partition consistent", regime_partition_is_consistent),
        ("chi curve spans xi to phi", chi_curve_spans_xi_to_phi),
        ("saddle equation holds", saddle_equation_holds),
        ("prediction product identity", prediction_product_identity),
        ("decaying regime matches limit", decaying_regime_matches_limit),
        ("poisson residual small", poisson_residual_is_small),
        ("representation relation holds", representation_relation_holds),
        ("longitude holonomy diagonalized", longitude_holonomy_is_diagonalized),
        ("chern-simons corner value", chern_simons_corner_value),
    ];
    let mut failed = 0usize;
    for (name, f) in checks {
        match f() {
            Ok(()) => println!("ok      {name}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL    {name}: {msg}");
            }
        }
    }
    println!("{} checks, {} failed", checks.len(), failed);
    if failed > 0 {
        Err(Failure {
            code: 3,
            msg: format!("{failed} self-test check(s) failed"),
        })
    } else {
        Ok(())
    }
}
