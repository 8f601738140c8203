//! Riley representations of the figure-eight knot group, the longitude
//! holonomy, and the Chern-Simons invariant of the negative-sign family.

use std::f64::consts::PI;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::figure_eight_core::{action_s, v_of, CuspParameter, KAPPA};
use crate::special_functions::principal_sqrt;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// 2x2 complex matrix. Representation images have det = 1, so inverses are
/// taken from the adjugate rather than by numerical inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2C {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl Matrix2C {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(&self) -> Complex64 {
        self.m11 + self.m22
    }

    /// Inverse of a det-1 matrix: swap the diagonal, negate the rest.
    pub fn adjugate_inverse(&self) -> Self {
        Self::new(self.m22, -self.m12, -self.m21, self.m11)
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.m11
            .norm()
            .max(self.m12.norm())
            .max(self.m21.norm())
            .max(self.m22.norm())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(
            self.m11 - rhs.m11,
            self.m12 - rhs.m12,
            self.m21 - rhs.m21,
            self.m22 - rhs.m22,
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            self.m11 + rhs.m11,
            self.m12 + rhs.m12,
            self.m21 + rhs.m21,
            self.m22 + rhs.m22,
        )
    }
}

impl Mul for Matrix2C {
    type Output = Matrix2C;

    fn mul(self, rhs: Matrix2C) -> Matrix2C {
        Matrix2C::new(
            self.m11 * rhs.m11 + self.m12 * rhs.m21,
            self.m11 * rhs.m12 + self.m12 * rhs.m22,
            self.m21 * rhs.m11 + self.m22 * rhs.m21,
            self.m21 * rhs.m12 + self.m22 * rhs.m22,
        )
    }
}

/// Which of the two conjugate radical branches enters d(xi).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepSign {
    Plus,
    Minus,
}

/// A parabolic representation of the knot group on generators x, y, pinned
/// down by the meridian eigenvalue e^{xi/2} and the branch choice in d(xi).
#[derive(Debug, Clone, Copy)]
pub struct RileyRep {
    pub xi: Complex64,
    pub sign: RepSign,
    pub rho_x: Matrix2C,
    pub rho_y: Matrix2C,
    pub d_val: Complex64,
}

/// d(xi) = (-2cosh xi + 3 +- sqrt((2cosh xi - 3)(2cosh xi + 1))) / 2; the two
/// branches are the roots of a monic quadratic with sum 3 - 2cosh xi.
pub fn riley_rep(xi: Complex64, sign: RepSign) -> RileyRep {
    let two_cosh = 2.0 * xi.cosh();
    let radical = principal_sqrt((two_cosh - 3.0) * (two_cosh + 1.0));
    let d_val = match sign {
        RepSign::Plus => (3.0 - two_cosh + radical) / 2.0,
        RepSign::Minus => (3.0 - two_cosh - radical) / 2.0,
    };
    let em = (xi / 2.0).exp();
    let ei = (-xi / 2.0).exp();
    RileyRep {
        xi,
        sign,
        rho_x: Matrix2C::new(em, ONE, ZERO, ei),
        rho_y: Matrix2C::new(em, ZERO, d_val, ei),
        d_val,
    }
}

/// Residual of the group relation x y^-1 x^-1 y x = y x y^-1 x^-1 y under the
/// representation, minimized over a global sign (the target group is PSL).
pub fn check_relation(rep: &RileyRep) -> f64 {
    let x = rep.rho_x;
    let y = rep.rho_y;
    let xi_inv = x.adjugate_inverse();
    let yi_inv = y.adjugate_inverse();
    let lhs = x * yi_inv * xi_inv * y * x;
    let rhs = y * x * yi_inv * xi_inv * y;
    lhs.sub(&rhs).max_norm().min(lhs.add(&rhs).max_norm())
}

/// Image of the preferred longitude x y^-1 x y x^-2 y x y^-1 x^-1, built
/// right to left from adjugate inverses.
pub fn longitude_matrix(rep: &RileyRep) -> Matrix2C {
    let x = rep.rho_x;
    let y = rep.rho_y;
    let xi_inv = x.adjugate_inverse();
    let yi_inv = y.adjugate_inverse();
    let word = [x, yi_inv, x, y, xi_inv, xi_inv, y, x, yi_inv, xi_inv];
    word.iter()
        .rev()
        .fold(Matrix2C::identity(), |acc, m| *m * acc)
}

/// Chern-Simons invariant of the negative-branch representation,
/// S(xi) - xi pi i - xi v(xi)/4, with the real part reduced to the symmetric
/// window of width pi^2 (the value is only defined modulo pi^2).
///
/// The domain is the cusp-shape region together with its corner at
/// xi = arcosh(3/2), where the formula stays finite (phi = 0, S = 0,
/// v = -2 pi i) and takes the affine-representation value -kappa pi i / 2.
pub fn cs_invariant(cp: &CuspParameter) -> Result<Complex64> {
    let at_corner = (cp.xi - KAPPA).norm() <= 1e-12;
    if !cp.in_xi && !at_corner {
        return Err(Error::OutsideDomain {
            func: "cs_invariant",
            z: cp.xi,
            domain: "the cusp-shape region and its corner",
        });
    }
    let s = action_s(cp);
    let v = v_of(cp);
    let raw = s - cp.xi * Complex64::new(0.0, PI) - 0.25 * cp.xi * v;
    Ok(reduce_re_mod_pi_squared(raw))
}

fn reduce_re_mod_pi_squared(z: Complex64) -> Complex64 {
    let p2 = PI * PI;
    Complex64::new(z.re - p2 * (z.re / p2).round(), z.im)
}
