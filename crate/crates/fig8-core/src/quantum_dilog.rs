//! The quantum dilogarithm integral T_N, the summand potential f_N, the
//! limit potentials F and G, and the slow integral route to J_N. This module
//! exists to cross-check the Habiro route: the two share no code.
//!
//! T_N(z) = (1/4) Int_R e^{(2z-1)t} / (t sinh t sinh(gamma t / N)) dt,
//! where R runs along the real axis from -infinity to +infinity, detouring
//! over the unit semicircle in the upper half plane, and gamma = xi/(2 pi i).

use crate::error::{Error, Result};
use crate::figure_eight_core::{CuspParameter, LogComplex};
use crate::special_functions::l2;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    /// absolute tolerance on the integral
    pub tol: f64,
    /// cap on composite panels per pass
    pub max_panels: usize,
    /// headroom factor for the truncated tails
    pub tail_safety: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            tol: 1e-10,
            max_panels: 1 << 16,
            tail_safety: 10.0,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || self.max_panels < 8 || !(self.tail_safety >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "quadrature spec: tol {}, max_panels {}, tail_safety {}",
                self.tol, self.max_panels, self.tail_safety
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PotentialContext {
    pub cp: CuspParameter,
    /// xi / (2 pi i); Re gamma = b/(2 pi) > 0
    pub gamma: Complex64,
    pub n: u32,
}

impl PotentialContext {
    pub fn new(cp: CuspParameter, n: u32) -> Result<Self> {
        if cp.b <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Im xi = {} must be positive for the integral route",
                cp.b
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("order N must be >= 1".into()));
        }
        Ok(PotentialContext {
            cp,
            gamma: cp.xi / (2.0 * PI * I),
            n,
        })
    }
}

/// 16-point Gauss-Legendre nodes and weights on [-1, 1], generated once by
/// Newton iteration on P_16 (avoids transcribing literature tables).
fn gl16() -> &'static ([f64; 16], [f64; 16]) {
    static CELL: OnceLock<([f64; 16], [f64; 16])> = OnceLock::new();
    CELL.get_or_init(|| {
        fn legendre(n: usize, x: f64) -> (f64, f64) {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
            (p1, dp)
        }
        let mut xs = [0.0; 16];
        let mut ws = [0.0; 16];
        for i in 0..16 {
            let mut x = (PI * (i as f64 + 0.75) / 16.5).cos();
            for _ in 0..60 {
                let (p, dp) = legendre(16, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(16, x);
            xs[i] = x;
            ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (xs, ws)
    })
}

/// Composite 16-point Gauss-Legendre over [a, b] split into equal panels.
pub(crate) fn gl_integrate<F: Fn(f64) -> Complex64 + Sync>(
    f: &F,
    a: f64,
    b: f64,
    panels: usize,
) -> Complex64 {
    let (xs, ws) = gl16();
    let h = (b - a) / panels as f64;
    let acc: Complex64 = (0..panels)
        .map(|p| {
            let mid = a + (p as f64 + 0.5) * h;
            (0..16)
                .map(|i| ws[i] * f(mid + 0.5 * h * xs[i]))
                .sum::<Complex64>()
        })
        .sum();
    acc * 0.5 * h
}

/// Extended domain Sigma of T_N: a vertical strip minus two triangles,
/// tested with a 1e-9 conservative shrink.
fn in_sigma(z: Complex64, gamma: Complex64, n: u32) -> bool {
    let eps = 1e-9;
    let g2n = gamma.re / (2.0 * n as f64);
    if !(z.re > -1.0 + g2n + eps && z.re < 2.0 - g2n - eps) {
        return false;
    }
    let right = z.im >= -eps && z.re <= eps && (z / gamma).im <= eps;
    let left = z.im <= eps && z.re >= 1.0 - eps && ((z - ONE) / gamma).im >= -eps;
    !(right || left)
}

/// Direct contour integral, valid where both tail decay rates are positive.
fn t_n_strip(z: Complex64, ctx: &PotentialContext, quad: &QuadratureSpec) -> Result<Complex64> {
    let gn = ctx.gamma / ctx.n as f64;
    let two_z = 2.0 * z;
    let delta = (two_z + gn).re.min((2.0 - two_z - gn).re);
    if delta <= 0.0 {
        return Err(Error::OutsideDomain {
            func: "t_n",
            z,
            domain: "integral strip",
        });
    }
    let t_max = ((quad.tail_safety / (quad.tol * delta)).ln() / delta).max(2.0);

    // Tail integrands in exponent-combined form: the naive
    // e^{(2z-1)t}/(sinh t sinh(gn t)) overflows long before t_max.
    let right = move |t: f64| {
        4.0 * ((two_z - 2.0 - gn) * t).exp()
            / (t * (1.0 - (-2.0 * t).exp()) * (ONE - (-2.0 * gn * t).exp()))
    };
    let left = move |t: f64| {
        4.0 * ((two_z + gn) * t).exp()
            / (t * (1.0 - (2.0 * t).exp()) * (ONE - (2.0 * gn * t).exp()))
    };
    // Unit semicircle t = e^{is}; the path runs s: pi -> 0, hence the sign.
    let semi = move |s: f64| {
        let t = Complex64::from_polar(1.0, s);
        -I * t * ((two_z - ONE) * t).exp() / (t * t.sinh() * (gn * t).sinh())
    };

    // The tails collapse like e^{-delta t}, so panels of fixed width waste
    // most of their evaluations far out where nothing is left; widths grow
    // geometrically instead, capped at 16 so the e^{i Im(2z) t} oscillation
    // stays resolvable inside a single 16-node panel.
    let mut cuts = vec![1.0f64];
    let mut width = 1.0f64;
    while *cuts.last().expect("nonempty") < t_max {
        let s = *cuts.last().expect("nonempty");
        cuts.push((s + width).min(t_max));
        width = (width * 2.0).min(16.0);
    }

    let mut mult: usize = 1;
    let mut prev: Option<Complex64> = None;
    let mut last_diff = f64::INFINITY;
    loop {
        if (cuts.len() - 1) * mult > quad.max_panels {
            return Err(Error::QuadratureStall {
                target: quad.tol,
                achieved: last_diff,
            });
        }
        let mut total = gl_integrate(&semi, 0.0, PI, 4 * mult);
        for pair in cuts.windows(2) {
            total += gl_integrate(&right, pair[0], pair[1], mult)
                + gl_integrate(&left, -pair[1], -pair[0], mult);
        }
        total *= 0.25;
        if let Some(p) = prev {
            last_diff = (total - p).norm();
            if last_diff < quad.tol {
                return Ok(total);
            }
        }
        prev = Some(total);
        mult *= 2;
    }
}

/// T_N on the extended region Sigma. Outside the direct-convergence band the
/// value is continued by iterating
/// T_N(z) = T_N(z + gamma/N) + Log(1 - e^{2 pi i (z + gamma/2N)}).
///
/// Iterated principal logs may differ from the holomorphic continuation by
/// 2 pi i k on far-stepped paths; every consumer exponentiates N f_N or
/// ratios of exp(T_N), where such an offset cancels exactly.
pub fn t_n(z: Complex64, ctx: &PotentialContext, quad: &QuadratureSpec) -> Result<Complex64> {
    quad.validate()?;
    if !in_sigma(z, ctx.gamma, ctx.n) {
        return Err(Error::OutsideDomain {
            func: "t_n",
            z,
            domain: "Sigma region",
        });
    }
    let step = ctx.gamma / ctx.n as f64;
    let d_floor = f64::min(0.2, 0.9 * ctx.gamma.re);
    let mut zz = z;
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 0..(3 * ctx.n as usize + 16) {
        let dm = 2.0 * zz.re + step.re;
        let dp = 2.0 - 2.0 * zz.re - step.re;
        if dm < d_floor {
            acc += (ONE - (2.0 * PI * I * (zz + step / 2.0)).exp()).ln();
            zz += step;
        } else if dp < d_floor {
            acc -= (ONE - (2.0 * PI * I * (zz - step / 2.0)).exp()).ln();
            zz -= step;
        } else {
            return Ok(acc + t_n_strip(zz, ctx, quad)?);
        }
    }
    Err(Error::InvalidParameter(format!(
        "functional-equation stepping did not reach the integral band from {z}"
    )))
}

/// Domain Theta of f_N: a horizontal band in xi*z minus four triangles,
/// with a 1e-9 conservative shrink.
fn in_theta(z: Complex64, ctx: &PotentialContext) -> bool {
    let eps = 1e-9;
    let (a, b) = (ctx.cp.a, ctx.cp.b);
    let xi = ctx.cp.xi;
    let xz = xi * z;
    let band = 2.0 * PI + (1.0 - 1.0 / (2.0 * ctx.n as f64)) * b;
    if xz.im.abs() >= band - eps {
        return false;
    }
    // each triangle's Im(xi z) side coincides with the band edge, already cut
    let lift = 2.0 * PI * a / xi.norm_sqr();
    let up_right = xz.re >= a - eps && z.im >= -eps;
    let down_mid = xz.re <= a + eps && z.im <= -lift + eps;
    let down_left = xz.re <= -a + eps && z.im <= eps;
    let up_mid = xz.re >= -a - eps && z.im >= lift - eps;
    !(up_right || down_mid || down_left || up_mid)
}

/// f_N(z) = (1/N) T_N(gamma(1-z)) - (1/N) T_N(gamma(1+z)) - xi z + 2 pi i z.
pub fn f_n(z: Complex64, ctx: &PotentialContext, quad: &QuadratureSpec) -> Result<Complex64> {
    if !in_theta(z, ctx) {
        return Err(Error::OutsideDomain {
            func: "f_n",
            z,
            domain: "Theta region",
        });
    }
    let g = ctx.gamma;
    let nf = ctx.n as f64;
    let t1 = t_n(g * (ONE - z), ctx, quad)?;
    let t2 = t_n(g * (ONE + z), ctx, quad)?;
    Ok((t1 - t2) / nf - ctx.cp.xi * z + 2.0 * PI * I * z)
}

/// Limit potential F(z) = (1/xi)[L2(gamma(1-z)) - L2(gamma(1+z))] - xi z + 2 pi i z.
pub fn big_f(z: Complex64, cp: &CuspParameter) -> Result<Complex64> {
    let gamma = cp.xi / (2.0 * PI * I);
    let l2m = l2(gamma * (ONE - z))?;
    let l2p = l2(gamma * (ONE + z))?;
    Ok((l2m - l2p) / cp.xi - cp.xi * z + 2.0 * PI * I * z)
}

/// Closed-form F'(z): log(2 cosh xi - 2 cosh(xi z)) on |Re(xi z)| < a, and
/// log(1-e^{-xi-xi z}) + log(1-e^{xi-xi z}) + xi z + pi i on Re(xi z) >= a.
pub fn big_f_prime(z: Complex64, cp: &CuspParameter) -> Result<Complex64> {
    let xz = cp.xi * z;
    if xz.re.abs() < cp.a {
        let arg = 2.0 * cp.xi.cosh() - 2.0 * xz.cosh();
        if arg == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroArgument {
                func: "big_f_prime",
            });
        }
        Ok(arg.ln())
    } else if xz.re >= cp.a {
        Ok((ONE - (-cp.xi - xz).exp()).ln() + (ONE - (cp.xi - xz).exp()).ln()
            + xz
            + Complex64::new(0.0, PI))
    } else {
        Err(Error::OutsideDomain {
            func: "big_f_prime",
            z,
            domain: "half-region Re(xi z) > -a",
        })
    }
}

/// G(Z) = F(Z/xi): the potential in the Z = xi z coordinate.
pub fn big_g(z_cap: Complex64, cp: &CuspParameter) -> Result<Complex64> {
    big_f(z_cap / cp.xi, cp)
}

pub fn big_g_prime(z_cap: Complex64, cp: &CuspParameter) -> Result<Complex64> {
    if z_cap.re.abs() < cp.a {
        let arg = 2.0 * cp.xi.cosh() - 2.0 * z_cap.cosh();
        if arg == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroArgument {
                func: "big_g_prime",
            });
        }
        Ok(arg.ln())
    } else if z_cap.re >= cp.a {
        Ok((ONE - (-cp.xi - z_cap).exp()).ln() + (ONE - (cp.xi - z_cap).exp()).ln()
            + z_cap
            + Complex64::new(0.0, PI))
    } else {
        Err(Error::OutsideDomain {
            func: "big_g_prime",
            z: z_cap,
            domain: "half-region Re Z > -a",
        })
    }
}

/// J_N through the integral route:
/// (1/(2 sinh(xi/2))) sum_k exp(N f_N((2k+1)/(2N))).
/// O(N x quadrature); a validation path, not the production path.
pub fn jones_via_potential(
    n: u32,
    cp: &CuspParameter,
    quad: &QuadratureSpec,
) -> Result<LogComplex> {
    let ctx = PotentialContext::new(*cp, n)?;
    let nf = n as f64;
    let terms: Vec<LogComplex> = (0..n)
        .into_par_iter()
        .map(|k| {
            let z = Complex64::new((2 * k + 1) as f64 / (2.0 * nf), 0.0);
            f_n(z, &ctx, quad).map(|f| LogComplex::new(nf * f.re, nf * f.im))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = LogComplex::sum(&terms);
    Ok(s.mul_complex((2.0 * (cp.xi / 2.0).sinh()).inv()))
}
