//! Knot-specific scalars for the figure-eight knot: the Habiro form of the
//! colored Jones polynomial, the Alexander polynomial, the potential-action
//! S and its shifts, the torsion T, the log-holonomy v, the longitude
//! eigenvalue, and the saddle Hessian.
//!
//! Throughout, xi = a + b*i is the cusp shape parameter, q = exp(xi/N), and
//! phi = c + d*i solves cosh(phi) = cosh(xi) - 1/2 with the branch fixed by
//! the principal square root.

use crate::error::{Error, Result};
use crate::mp::{size_exp2, to_f64_shifted, MpCtx};
use crate::special_functions::{dilog, principal_sqrt};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// arcosh(3/2), the boundary growth rate: 2 cosh(kappa) - 3 = 0.
pub const KAPPA: f64 = 0.9624236501192069;

/// A complex number carried as (log magnitude, argument); the only safe
/// representation for quantities of size exp(const * N).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogComplex {
    pub log_mag: f64,
    pub arg: f64,
}

fn wrap_arg(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

impl LogComplex {
    pub fn new(log_mag: f64, arg: f64) -> Self {
        LogComplex {
            log_mag,
            arg: wrap_arg(arg),
        }
    }

    pub fn one() -> Self {
        LogComplex {
            log_mag: 0.0,
            arg: 0.0,
        }
    }

    pub fn zero() -> Self {
        LogComplex {
            log_mag: f64::NEG_INFINITY,
            arg: 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z == Complex64::new(0.0, 0.0) {
            return Self::zero();
        }
        LogComplex {
            log_mag: z.norm().ln(),
            arg: z.arg(),
        }
    }

    /// May overflow to infinity; intended for human-scale readout.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.log_mag.exp(), self.arg)
    }

    pub fn mul(&self, rhs: &LogComplex) -> Self {
        LogComplex::new(self.log_mag + rhs.log_mag, self.arg + rhs.arg)
    }

    pub fn mul_complex(&self, f: Complex64) -> Self {
        self.mul(&LogComplex::from_complex(f))
    }

    /// Max-log-factored sum: exact up to f64 roundoff on the residuals.
    pub fn sum(terms: &[LogComplex]) -> Self {
        let m = terms
            .iter()
            .map(|t| t.log_mag)
            .fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY {
            return Self::zero();
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for t in terms {
            acc += Complex64::from_polar((t.log_mag - m).exp(), t.arg);
        }
        if acc == Complex64::new(0.0, 0.0) {
            return Self::zero();
        }
        LogComplex::new(m + acc.norm().ln(), acc.arg())
    }
}

/// The cusp shape xi with every derived scalar the asymptotics needs,
/// cached at construction.
#[derive(Clone, Copy, Debug)]
pub struct CuspParameter {
    pub xi: Complex64,
    pub a: f64,
    pub b: f64,
    /// cosh a * cos b
    pub alpha: f64,
    /// sinh a * sin b
    pub beta: f64,
    /// c + d*i with cosh phi = cosh xi - 1/2
    pub phi: Complex64,
    /// phi / xi
    pub sigma: Complex64,
    /// a > 0, 0 < b < pi/2, alpha > 1/2
    pub in_xi: bool,
    /// cosh xi within 1e-12 of 3/2 or -1/2: torsion pole / branch point of phi
    pub torsion_pole: bool,
}

pub fn make_cusp(xi: Complex64) -> CuspParameter {
    let (a, b) = (xi.re, xi.im);
    let alpha = a.cosh() * b.cos();
    let beta = a.sinh() * b.sin();
    let ch = xi.cosh();
    let at_kappa = (2.0 * ch - Complex64::new(3.0, 0.0)).norm() < 1e-12;
    let at_affine = (2.0 * ch + Complex64::new(1.0, 0.0)).norm() < 1e-12;
    let phi = if at_kappa {
        // branch point: phi -> 0 continuously; snapping kills the sqrt(eps)
        // noise the closed form would otherwise amplify
        Complex64::new(0.0, 0.0)
    } else if at_affine {
        Complex64::new(0.0, PI)
    } else {
        let rad = principal_sqrt((2.0 * ch - 3.0) * (2.0 * ch + 1.0));
        (ch - 0.5 + 0.5 * rad).ln()
    };
    CuspParameter {
        xi,
        a,
        b,
        alpha,
        beta,
        phi,
        sigma: phi / xi,
        in_xi: a > 0.0 && b > 0.0 && b < PI / 2.0 && alpha > 0.5,
        torsion_pole: at_kappa || at_affine,
    }
}

/// Normalized Alexander polynomial -t + 3 - 1/t; Delta(e^xi) = 3 - 2 cosh xi.
pub fn alexander(t: Complex64) -> Result<Complex64> {
    if t == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroArgument { func: "alexander" });
    }
    Ok(-t + 3.0 - t.inv())
}

/// S = Li2(e^{-xi-phi}) - Li2(e^{-xi+phi}) + xi*phi.
pub fn action_s(cp: &CuspParameter) -> Complex64 {
    let (xi, phi) = (cp.xi, cp.phi);
    dilog((-xi - phi).exp()) - dilog((-xi + phi).exp()) + xi * phi
}

pub fn action_s_plus(cp: &CuspParameter) -> Complex64 {
    -action_s(cp) + 2.0 * PI * I * cp.xi
}

pub fn action_s_minus(cp: &CuspParameter) -> Complex64 {
    action_s(cp) + 2.0 * PI * I * cp.xi
}

/// T = 2 / sqrt((2 cosh xi + 1)(2 cosh xi - 3)), the torsion scalar.
pub fn torsion(xi: Complex64) -> Result<Complex64> {
    let ch = xi.cosh();
    if (2.0 * ch - Complex64::new(3.0, 0.0)).norm() < 1e-12
        || (2.0 * ch + Complex64::new(1.0, 0.0)).norm() < 1e-12
    {
        return Err(Error::BranchPoint {
            func: "torsion",
            xi,
        });
    }
    Ok(2.0 / principal_sqrt((2.0 * ch + 1.0) * (2.0 * ch - 3.0)))
}

/// v = 2 dS/dxi - 2 pi i, using the closed form dS/dxi = log(2cosh(xi+phi)-2).
pub fn v_of(cp: &CuspParameter) -> Complex64 {
    2.0 * (2.0 * (cp.xi + cp.phi).cosh() - 2.0).ln() - 2.0 * PI * I
}

pub fn v_plus(cp: &CuspParameter) -> Complex64 {
    -v_of(cp)
}

pub fn v_minus(cp: &CuspParameter) -> Complex64 {
    v_of(cp) + 4.0 * PI * I
}

/// Eigenvalue of the preferred longitude:
/// cosh 2xi - cosh xi - 1 - sinh xi * sqrt((2cosh xi - 3)(2cosh xi + 1)).
/// Satisfies l = -e^{-v/2} on Xi.
pub fn longitude_eigenvalue(xi: Complex64) -> Complex64 {
    let ch = xi.cosh();
    let rad = principal_sqrt((2.0 * ch - 3.0) * (2.0 * ch + 1.0));
    (2.0 * xi).cosh() - ch - 1.0 - xi.sinh() * rad
}

/// Second derivative of the potential at the saddle: -xi * w with
/// w^2 = (2cosh xi + 1)(2cosh xi - 3) and w = 2 sinh phi on Xi, where
/// sinh phi sits in the first quadrant.
pub fn saddle_hessian(cp: &CuspParameter) -> Result<Complex64> {
    let w = 2.0 * cp.phi.sinh();
    if w.norm() < 1e-10 {
        return Err(Error::DegenerateSaddle { xi: cp.xi });
    }
    let w = if (0.0..PI / 2.0).contains(&w.arg()) || !(0.0..PI / 2.0).contains(&(-w).arg()) {
        w
    } else {
        -w
    };
    Ok(-cp.xi * w)
}

const F64_EFOLD_LIMIT: f64 = 8.0;

/// Plain log-space pass. Returns the sum and the cancellation depth
/// (max term log minus result log) when that is measurable.
fn jones_f64(n: u32, xi: Complex64) -> (LogComplex, Option<f64>) {
    let nf = n as f64;
    let c2 = 2.0 * xi.cosh();
    let mut terms = Vec::with_capacity(n as usize);
    let mut t = LogComplex::one();
    terms.push(t);
    for k in 1..n {
        let f = c2 - 2.0 * (xi * (k as f64 / nf)).cosh();
        t = t.mul_complex(f);
        terms.push(t);
    }
    let m = terms
        .iter()
        .map(|t| t.log_mag)
        .fold(f64::NEG_INFINITY, f64::max);
    let s = LogComplex::sum(&terms);
    if s.is_zero() || !s.log_mag.is_finite() {
        (s, None)
    } else {
        (s, Some(m - s.log_mag))
    }
}

/// Arbitrary-precision pass at `bits` working precision. Returns the sum
/// and the observed cancellation depth in bits.
fn jones_mp(n: u32, xi: Complex64, bits: usize) -> (LogComplex, i64) {
    let mut ctx = MpCtx::new(bits);
    let xi_mp = ctx.from_c64(xi);
    let two = ctx.real(2.0);
    let ch = ctx.cosh(&xi_mp);
    let c2 = ctx.scale(&ch, &two);
    let one = ctx.from_c64(Complex64::new(1.0, 0.0));
    let mut term = one.clone();
    let mut sum = one;
    let mut max_e: i64 = 1;
    for k in 1..n {
        let r = ctx.ratio(k as u64, n as u64);
        let zk = ctx.scale(&xi_mp, &r);
        let ck = ctx.cosh(&zk);
        let ck2 = ctx.scale(&ck, &two);
        let f = ctx.sub(&c2, &ck2);
        term = ctx.mul(&term, &f);
        sum = ctx.add(&sum, &term);
        if let Some(e) = size_exp2(&term) {
            max_e = max_e.max(e);
        }
        if let Some(e) = size_exp2(&sum) {
            max_e = max_e.max(e);
        }
    }
    match size_exp2(&sum) {
        Some(res_e) => {
            let re = to_f64_shifted(&sum.re, res_e);
            let im = to_f64_shifted(&sum.im, res_e);
            let v = Complex64::new(re, im);
            let lc = LogComplex::new(res_e as f64 * std::f64::consts::LN_2 + v.norm().ln(), v.arg());
            (lc, max_e - res_e)
        }
        // sum is exactly zero at this precision: report total cancellation
        None => (LogComplex::zero(), max_e + bits as i64),
    }
}

/// J_N at q = exp(xi/N), via the Habiro sum
/// sum_{k=0}^{N-1} prod_{l=1}^{k} (2 cosh xi - 2 cosh(xi l/N)),
/// which equals sum_k q^{-kN} prod_l (1-q^{N-l})(1-q^{N+l}) term by term.
///
/// Starts in f64 log-space; when the measured cancellation exceeds what f64
/// can absorb, re-runs in arbitrary precision sized from the observed
/// cancellation depth, growing until the headroom suffices.
pub fn colored_jones(n: u32, xi: Complex64) -> LogComplex {
    if n <= 1 {
        return LogComplex::one();
    }
    let (lc, efolds) = jones_f64(n, xi);
    if let Some(e) = efolds {
        if e <= F64_EFOLD_LIMIT {
            return lc;
        }
    }
    let log2n = 64 - u64::from(n).leading_zeros() as i64;
    let mut bits: usize = 192;
    let mut best = lc;
    for _ in 0..6 {
        let (lc, cancel_bits) = jones_mp(n, xi, bits);
        best = lc;
        let need = cancel_bits + 96 + log2n;
        if bits as i64 >= need {
            return best;
        }
        bits = (need + 64) as usize;
    }
    best
}
