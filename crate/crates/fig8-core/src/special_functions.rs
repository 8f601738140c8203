//! Complex elementary functions and the dilogarithm with fixed branch
//! conventions: log and sqrt cut along (-inf,0), dilog cut along (1,inf).
//! On the cuts the value is the limit from above, so for real x < 0
//! principal_log(x) = log|x| + pi*i, principal_sqrt(x) = i*sqrt|x|, and for
//! real x > 1 the dilog has imaginary part -pi*log(x).

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);
const PI2_6: f64 = PI * PI / 6.0;

/// A signed zero carries no branch information here: each cut's on-axis
/// value is fixed by the stated conventions, not by the sign of 0.0.
fn canonical_real(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

pub fn principal_log(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroArgument {
            func: "principal_log",
        });
    }
    Ok(canonical_real(z).ln())
}

pub fn principal_sqrt(z: Complex64) -> Complex64 {
    canonical_real(z).sqrt()
}

/// Power series sum_{n>=1} z^n / n^2, valid on |z| <= 1/2.
fn dilog_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    for n in 1..=250u32 {
        zn *= z;
        let term = zn / ((n as f64) * (n as f64));
        sum += term;
        if term.norm() < 1e-18 * (1.0 + sum.norm()) {
            break;
        }
    }
    sum
}

/// Bernoulli-number series in w = -log(1-z): Li2 = sum_j B_j w^{j+1}/(j+1)!.
/// Coefficients B_j/(j+1)! for j = 0, 1, 2, 4, ..., 60 (odd j >= 3 vanish).
const DEBYE_EVEN: [f64; 31] = [
    0.027777777777777777778,
    -0.00027777777777777777778,
    4.7241118669690098262e-6,
    -9.1857730746619635509e-8,
    1.8978869988970999072e-9,
    -4.0647616451442255268e-11,
    8.9216910204564525552e-13,
    -1.9939295860721075687e-14,
    4.5189800296199181917e-16,
    -1.0356517612181247014e-17,
    2.3952186210261867457e-19,
    -5.5817858743250093363e-21,
    1.3091507554183212858e-22,
    -3.0874198024267402932e-24,
    7.3159756527022034204e-26,
    -1.7408456572340007410e-27,
    4.1576356446138997196e-29,
    -9.9621484882846221032e-31,
    2.3940344248961653005e-32,
    -5.7683473553673900843e-34,
    1.3931794796470079778e-35,
    -3.3721219654850894705e-37,
    8.1782087775621026218e-39,
    -1.9870108311523859256e-40,
    4.8357785180405508963e-42,
    -1.1786937248718384327e-43,
    2.8770964081172571450e-45,
    -7.0320590981560280150e-47,
    1.7208603145033146291e-48,
    -4.2160723905604454917e-50,
    0.0,
];

/// Middle annulus 1/2 < |z| < 2 away from the point 1; |w| stays below 2*pi
/// there, so the series converges geometrically.
fn dilog_debye(z: Complex64) -> Complex64 {
    let w = -(Complex64::new(1.0, 0.0) - z).ln();
    let w2 = w * w;
    let mut sum = w - w2 / 4.0;
    let mut pow = w * w2;
    for c in DEBYE_EVEN {
        let term = pow * c;
        sum += term;
        if term.norm() < 1e-18 * (1.0 + sum.norm()) {
            break;
        }
        pow *= w2;
    }
    sum
}

pub fn dilog(z: Complex64) -> Complex64 {
    let z = canonical_real(z);
    if z.im == 0.0 && z.re > 1.0 {
        // On-cut value for x > 1: Im Li2(x) = -pi*log(x), the limit from
        // the lower half plane.
        let x = z.re;
        let lx = x.ln();
        let re = 2.0 * PI2_6 - 0.5 * lx * lx - dilog(Complex64::new(1.0 / x, 0.0)).re;
        return Complex64::new(re, -PI * lx);
    }
    if z.norm() <= 0.5 {
        return dilog_series(z);
    }
    let one_minus = Complex64::new(1.0, 0.0) - z;
    if one_minus.norm() <= 0.5 {
        if one_minus == Complex64::new(0.0, 0.0) {
            return Complex64::new(PI2_6, 0.0);
        }
        return Complex64::new(PI2_6, 0.0) - z.ln() * one_minus.ln() - dilog_series(one_minus);
    }
    if z.norm() >= 2.0 {
        let lnm = (-z).ln();
        return -dilog_series(z.inv()) - Complex64::new(PI2_6, 0.0) - 0.5 * lnm * lnm;
    }
    dilog_debye(z)
}

fn check_half_lines(func: &'static str, z: Complex64) -> Result<()> {
    if z.im == 0.0 && (z.re <= 0.0 || z.re >= 1.0) {
        return Err(Error::ExcludedHalfLine { func, z });
    }
    Ok(())
}

/// log(1 - e^{2 pi i z}) continued holomorphically across (0,1) on the real
/// axis; the lower-half-plane branch rewrites the argument so the exponential
/// stays bounded.
pub fn l1(z: Complex64) -> Result<Complex64> {
    check_half_lines("l1", z)?;
    if z.im >= 0.0 {
        Ok((Complex64::new(1.0, 0.0) - (2.0 * PI * I * z).exp()).ln())
    } else {
        Ok(2.0 * PI * I * z - PI * I
            + (Complex64::new(1.0, 0.0) - (-2.0 * PI * I * z).exp()).ln())
    }
}

/// Li2(e^{2 pi i z}) continued holomorphically across (0,1); satisfies
/// dL2/dz = -2 pi i L1.
pub fn l2(z: Complex64) -> Result<Complex64> {
    check_half_lines("l2", z)?;
    if z.im >= 0.0 {
        Ok(dilog((2.0 * PI * I * z).exp()))
    } else {
        let pi2 = PI * PI;
        Ok(2.0 * pi2 * z * z - 2.0 * pi2 * z + Complex64::new(pi2 / 3.0, 0.0)
            - dilog((-2.0 * PI * I * z).exp()))
    }
}

/// Central-difference residual of the identity dL2/dz = -2 pi i L1; O(h^2).
pub fn l2_derivative_check(z: Complex64, h: f64) -> Result<f64> {
    if !(1e-8..=1e-4).contains(&h) {
        return Err(Error::InvalidParameter(format!(
            "step {h:e} outside [1e-8, 1e-4]"
        )));
    }
    let hc = Complex64::new(h, 0.0);
    let fd = (l2(z + hc)? - l2(z - hc)?) / (2.0 * h);
    Ok((fd + 2.0 * PI * I * l1(z)?).norm())
}
