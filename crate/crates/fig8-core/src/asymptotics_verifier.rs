//! Predicted leading asymptotics of J_N, the eight closed-form reference
//! cases, and quantitative checks: convergence-order fits against the exact
//! values, sum-versus-integral residuals, and saddle-point diagnostics.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::figure_eight_core::{
    action_s, action_s_minus, action_s_plus, colored_jones, make_cusp, saddle_hessian, torsion,
    CuspParameter, LogComplex, KAPPA,
};
use crate::quantum_dilog::{
    big_f_prime, f_n, gl_integrate, jones_via_potential, PotentialContext, QuadratureSpec,
};
use crate::region_atlas::{classify, RegionLabel, DEFAULT_ZERO_TOL};
use crate::special_functions::principal_sqrt;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Frozen high-precision reference for the Gamma-function checks.
pub const GAMMA_THIRD: f64 = 2.678938534707747633;

#[derive(Clone, Copy, Debug)]
pub struct AsymptoticPrediction {
    pub regime: RegionLabel,
    pub leading: LogComplex,
    /// S(xi)/xi, the per-color exponential rate.
    pub growth_rate: Complex64,
    /// T(xi)^{1/2}, principal branch.
    pub torsion_factor: Complex64,
    /// sqrt(pi)/(2 sinh(xi/2)) * (N/xi)^{1/2} with the saddle branch sign
    /// folded in, so that leading = prefactor * torsion_factor * e^{N rate}
    /// in the growing regimes.
    pub prefactor: Complex64,
    pub conjectural: bool,
}

fn regime_name(label: RegionLabel) -> &'static str {
    match label {
        RegionLabel::GammaPlus => "Gamma+",
        RegionLabel::GammaZero => "Gamma0",
        RegionLabel::GammaMinus => "Gamma-",
        RegionLabel::GammaTildePlus => "GammaTilde+",
        RegionLabel::GammaTildeZero => "GammaTilde0",
        RegionLabel::GammaTildeMinus => "GammaTilde-",
        RegionLabel::OmegaCapXi => "OmegaCapXi",
        RegionLabel::OmegaBoundary => "OmegaBoundary",
        RegionLabel::OutsideXi => "OutsideXi",
    }
}

/// 1/Delta(e^xi) = 1/(3 - 2 cosh xi), the limit value in the small regimes.
pub fn inverse_alexander(xi: Complex64) -> Complex64 {
    (Complex64::new(3.0, 0.0) - 2.0 * xi.cosh()).inv()
}

/// Leading-order prediction for J_N at a nondegenerate cusp parameter.
///
/// Growing regimes get sqrt(2 pi N) e^{N S/xi} / (2 sinh(xi/2) s) with
/// s = sqrt(2 xi sinh phi) taken in the half plane Re s > 0; that sign is
/// the saddle-method convention, confirmed by the phase of exact values.
/// Gamma0 adds the 1/Delta term of the two-term form; the decaying regimes
/// are the constant 1/Delta(e^xi).
pub fn predict(cp: &CuspParameter, n: u32) -> Result<AsymptoticPrediction> {
    if n == 0 {
        return Err(Error::InvalidParameter("predict: N must be positive".into()));
    }
    let xi = cp.xi;
    let (label, _) = classify(xi, DEFAULT_ZERO_TOL);
    match label {
        RegionLabel::OutsideXi | RegionLabel::OmegaBoundary => {
            return Err(Error::NoPrediction {
                label: regime_name(label),
            })
        }
        _ => {}
    }
    if cp.torsion_pole {
        return Err(Error::DegenerateSaddle { xi });
    }

    let growth = action_s(cp) / xi;
    let torsion_factor = principal_sqrt(torsion(xi)?);
    let mut s_root = principal_sqrt(2.0 * xi * cp.phi.sinh());
    if s_root.re < 0.0 {
        s_root = -s_root;
    }
    let nf = n as f64;
    let coef = (2.0 * PI * nf).sqrt() / (2.0 * (xi / 2.0).sinh() * s_root);
    let prefactor = coef / torsion_factor;
    let saddle_term = LogComplex::new(
        coef.norm().ln() + nf * growth.re,
        coef.arg() + nf * growth.im,
    );
    let limit_term = LogComplex::from_complex(inverse_alexander(xi));

    let leading = match label {
        RegionLabel::GammaPlus | RegionLabel::GammaTildePlus => saddle_term,
        RegionLabel::GammaZero | RegionLabel::GammaTildeZero => {
            LogComplex::sum(&[saddle_term, limit_term])
        }
        _ => limit_term,
    };
    Ok(AsymptoticPrediction {
        regime: label,
        leading,
        growth_rate: growth,
        torsion_factor,
        prefactor,
        conjectural: label.is_conjectural(),
    })
}

/// Gamma function via the Lanczos g=7 rational approximation, with the
/// reflection formula below 1/2. Good to ~1e-14 relative on the range the
/// reference cases need; pinned against GAMMA_THIRD and an integral oracle.
pub fn gamma_function(x: f64) -> f64 {
    const G_COEF: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_function(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = G_COEF[0];
    for (i, c) in G_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + 7.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

fn check_hypothesis(ok: bool, xi: Complex64, domain: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OutsideDomain {
            func: "known_case_predict",
            z: xi,
            domain,
        })
    }
}

fn coef_times_exp(coef: Complex64, exponent: Complex64) -> LogComplex {
    LogComplex::new(coef.norm().ln() + exponent.re, coef.arg() + exponent.im)
}

/// The eight closed-form reference asymptotics, dispatched by case id:
///   1: xi = 2 pi i + u, u real in (0, kappa)      5: xi = kappa
///   2: xi = 2 pi i + kappa                        6: xi real > kappa
///   3: xi = 2 pi i + u, u real > kappa            7: xi = 2 pi i
///   4: xi in Omega (limit 1/Delta)                8: xi = 2 pi i + u, small
///      complex u off the imaginary axis (bare exponential of the rate)
///
/// Cases 2 and 5 need Gamma(1/3); cases around 2 pi i are formula
/// evaluators only, since desk-scale N cannot resolve their oscillation.
pub fn known_case_predict(case_id: u8, xi: Complex64, n: u32) -> Result<LogComplex> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "known_case_predict: N must be positive".into(),
        ));
    }
    let nf = n as f64;
    let two_pi_i = 2.0 * PI * I;
    let sqrt = principal_sqrt;
    match case_id {
        1 | 3 => {
            let u = xi - two_pi_i;
            let ok = u.im.abs() < 1e-12
                && if case_id == 1 {
                    u.re > 0.0 && u.re < KAPPA - 1e-12
                } else {
                    u.re > KAPPA + 1e-12
                };
            check_hypothesis(
                ok,
                xi,
                if case_id == 1 {
                    "2 pi i + u with real 0 < u < kappa"
                } else {
                    "2 pi i + u with real u > kappa"
                },
            )?;
            let u = Complex64::new(u.re, 0.0);
            let cp_u = make_cusp(u);
            let action = if case_id == 1 {
                action_s_plus(&cp_u)
            } else {
                action_s_minus(&cp_u)
            };
            let root_pi = if case_id == 1 {
                sqrt(Complex64::new(-PI, 0.0))
            } else {
                Complex64::new(PI.sqrt(), 0.0)
            };
            let coef = root_pi / (2.0 * (u / 2.0).sinh())
                * sqrt(torsion(xi)?)
                * sqrt(nf / xi);
            Ok(coef_times_exp(coef, action * nf / xi))
        }
        2 => {
            check_hypothesis(
                (xi - (KAPPA + two_pi_i)).norm() < 1e-9,
                xi,
                "2 pi i + kappa",
            )?;
            let coef = GAMMA_THIRD * (I * PI / 6.0).exp() / 3.0f64.powf(1.0 / 6.0)
                * ((2.0 / 3.0) * (nf / xi).ln()).exp();
            // S+(kappa) = S-(kappa) = 2 kappa pi i
            Ok(coef_times_exp(coef, 2.0 * KAPPA * PI * I * nf / xi))
        }
        4 => {
            let gap = xi.re.cosh() - xi.im.cos();
            check_hypothesis(
                gap < 0.5 && xi.im.abs() < PI / 3.0,
                xi,
                "Omega: cosh(Re xi) - cos(Im xi) < 1/2 and |Im xi| < pi/3",
            )?;
            Ok(LogComplex::from_complex(inverse_alexander(xi)))
        }
        5 => {
            check_hypothesis((xi - Complex64::new(KAPPA, 0.0)).norm() < 1e-9, xi, "kappa")?;
            let mag = gamma_function(1.0 / 3.0) / 3.0f64.powf(2.0 / 3.0)
                * (nf / KAPPA).powf(2.0 / 3.0);
            Ok(LogComplex::new(mag.ln(), 0.0))
        }
        6 => {
            check_hypothesis(xi.im == 0.0 && xi.re > KAPPA + 1e-12, xi, "real xi > kappa")?;
            let cp = make_cusp(xi);
            let coef = PI.sqrt() / (2.0 * (xi / 2.0).sinh())
                * sqrt(torsion(xi)?)
                * sqrt(nf / xi);
            Ok(coef_times_exp(coef, action_s(&cp) * nf / xi))
        }
        7 => {
            check_hypothesis((xi - two_pi_i).norm() < 1e-12, xi, "exactly 2 pi i")?;
            let cp0 = make_cusp(Complex64::new(0.0, 0.0));
            let coef = -2.0 * PI.powf(1.5)
                * sqrt(torsion(xi)?)
                * ((1.5) * (nf / two_pi_i).ln()).exp();
            Ok(coef_times_exp(coef, action_s_plus(&cp0) * nf / two_pi_i))
        }
        8 => {
            let u = xi - two_pi_i;
            check_hypothesis(
                u.re.abs() > 1e-12 && u.norm() <= 0.5,
                xi,
                "2 pi i + u with u off the imaginary axis, |u| <= 1/2",
            )?;
            // growth statement only: the bare exponential e^{N S+(u)/xi}
            let rate = action_s_plus(&make_cusp(u)) / xi;
            Ok(LogComplex::new(nf * rate.re, nf * rate.im))
        }
        _ => Err(Error::InvalidParameter(format!(
            "known_case_predict: case id {case_id} not in 1..=8"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Potential,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub n_values: Vec<u32>,
    pub exact: Vec<LogComplex>,
    pub predicted: Vec<LogComplex>,
    pub errors: Vec<f64>,
    pub fitted_order: f64,
    pub conjectural: bool,
}

fn fit_order(n_values: &[u32], errors: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = n_values
        .iter()
        .zip(errors)
        .map(|(&n, &e)| ((n as f64).ln(), e.max(1e-300).ln()))
        .collect();
    let m = pts.len() as f64;
    let xbar = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let ybar = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let num: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.0 - xbar)).sum();
    num / den
}

/// Exact-versus-predicted error study over ascending N. The error metric
/// follows the regime: relative against the saddle term where J_N grows,
/// absolute against the two-term or limit form elsewhere; fitted_order is
/// the log-log least-squares slope.
pub fn convergence_study(
    cp: &CuspParameter,
    n_values: &[u32],
    route: Route,
) -> Result<ConvergenceReport> {
    if n_values.len() < 3 {
        return Err(Error::InvalidParameter(
            "convergence_study: need at least 3 N values".into(),
        ));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) || n_values[0] == 0 {
        return Err(Error::InvalidParameter(
            "convergence_study: N values must be positive and ascending".into(),
        ));
    }
    let quad = QuadratureSpec::default();
    let cells: Vec<(LogComplex, AsymptoticPrediction)> = n_values
        .par_iter()
        .map(|&n| -> Result<_> {
            let exact = match route {
                Route::Direct => colored_jones(n, cp.xi),
                Route::Potential => jones_via_potential(n, cp, &quad)?,
            };
            Ok((exact, predict(cp, n)?))
        })
        .collect::<Result<_>>()?;

    let regime = cells[0].1.regime;
    let relative = matches!(
        regime,
        RegionLabel::GammaPlus | RegionLabel::GammaTildePlus
    );
    let mut exact = Vec::new();
    let mut predicted = Vec::new();
    let mut errors = Vec::new();
    for (j, pred) in cells {
        let err = if relative {
            // compare in log space; the values grow exponentially
            let ratio = Complex64::from_polar(
                (j.log_mag - pred.leading.log_mag).exp(),
                j.arg - pred.leading.arg,
            );
            (ratio - 1.0).norm()
        } else {
            (j.to_complex() - pred.leading.to_complex()).norm()
        };
        exact.push(j);
        predicted.push(pred.leading);
        errors.push(err);
    }
    let fitted_order = fit_order(n_values, &errors);
    Ok(ConvergenceReport {
        n_values: n_values.to_vec(),
        exact,
        predicted,
        errors,
        fitted_order,
        conjectural: regime.is_conjectural(),
    })
}

/// Residual between the midpoint color sum and the truncated line integral
/// of e^{N f_N}: |(1/N) sum_k e^{N f_N((2k+1)/2N)} - int_0^{1-delta1}|.
/// Where the saddle dominates (Gamma+) the residual is reported relative to
/// e^{N f_N(sigma)}. Decays faster than any power of N on the Gamma family.
pub fn sum_vs_integral_check(
    cp: &CuspParameter,
    n: u32,
    delta1: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let (label, _) = classify(cp.xi, DEFAULT_ZERO_TOL);
    if !matches!(
        label,
        RegionLabel::GammaPlus | RegionLabel::GammaZero | RegionLabel::GammaMinus
    ) {
        return Err(Error::OutsideDomain {
            func: "sum_vs_integral_check",
            z: cp.xi,
            domain: "the Gamma family",
        });
    }
    if n == 0 || n > 200 {
        return Err(Error::InvalidParameter(format!(
            "sum_vs_integral_check: N must be in 1..=200, got {n}"
        )));
    }
    if !(delta1 > 0.0 && delta1 < 0.1) {
        return Err(Error::InvalidParameter(format!(
            "sum_vs_integral_check: delta1 must lie in (0, 0.1), got {delta1}"
        )));
    }
    let ctx = PotentialContext::new(*cp, n)?;
    let nf = n as f64;

    let terms: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let z = Complex64::new((2.0 * k as f64 + 1.0) / (2.0 * nf), 0.0);
            f_n(z, &ctx, quad).map(|f| (nf * f).exp())
        })
        .collect::<Result<_>>()?;
    let sum_side: Complex64 = terms.iter().sum::<Complex64>() / nf;

    // e^{N f_N} is entire on a neighborhood of the segment, so panel-doubled
    // Gauss-Legendre converges geometrically; failures inside the integrand
    // surface as NaN and are rejected after the fact.
    let integrand = |x: f64| match f_n(Complex64::new(x, 0.0), &ctx, quad) {
        Ok(f) => (nf * f).exp(),
        Err(_) => Complex64::new(f64::NAN, f64::NAN),
    };
    let hi = 1.0 - delta1;
    let mut panels = (n as usize / 4).max(8);
    let mut last = gl_integrate(&integrand, 0.0, hi, panels);
    let mut integral = last;
    let mut converged = false;
    while panels <= quad.max_panels {
        panels *= 2;
        integral = gl_integrate(&integrand, 0.0, hi, panels);
        if !(integral.re.is_finite() && integral.im.is_finite()) {
            return Err(Error::QuadratureStall {
                target: quad.tol,
                achieved: f64::NAN,
            });
        }
        let diff = (integral - last).norm();
        let scale = integral.norm().max(sum_side.norm()).max(1e-300);
        if diff <= quad.tol * scale {
            converged = true;
            break;
        }
        last = integral;
    }
    if !converged {
        return Err(Error::QuadratureStall {
            target: quad.tol,
            achieved: (integral - last).norm(),
        });
    }

    let residual = (sum_side - integral).norm();
    if label == RegionLabel::GammaPlus {
        let f_sigma = f_n(cp.sigma, &ctx, quad)?;
        Ok(residual / (nf * f_sigma.re).exp())
    } else {
        Ok(residual)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SaddleReport {
    /// |F'(sigma)|; the saddle equation demands ~0.
    pub grad_norm: f64,
    /// |finite-difference F'' at sigma - closed-form hessian|.
    pub hessian_fd_error: f64,
    pub pass: bool,
}

/// Verifies the saddle equation F'(sigma) = 0 and the closed-form hessian
/// -2 xi sinh phi against a finite difference of F'.
pub fn saddle_check(cp: &CuspParameter) -> Result<SaddleReport> {
    // a degenerate saddle outranks the domain complaint (kappa sits on
    // the boundary of Xi and should read as degenerate)
    let hess = saddle_hessian(cp)?;
    if !cp.in_xi {
        return Err(Error::OutsideDomain {
            func: "saddle_check",
            z: cp.xi,
            domain: "Xi",
        });
    }
    let grad_norm = big_f_prime(cp.sigma, cp)?.norm();
    let h = 1e-6;
    let fd = (big_f_prime(cp.sigma + h, cp)? - big_f_prime(cp.sigma - h, cp)?) / (2.0 * h);
    let hessian_fd_error = (fd - hess).norm();
    Ok(SaddleReport {
        grad_norm,
        hessian_fd_error,
        pass: grad_norm < 1e-10 && hessian_fd_error < 1e-6,
    })
}
