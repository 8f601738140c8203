//! Minimal arbitrary-precision complex arithmetic on top of astro-float,
//! just enough for the cancellation-heavy Habiro sum. The working precision
//! is chosen by the caller; exponents are unbounded, so magnitudes like
//! e^{N log-scale} need no special handling.

use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex64;

pub(crate) struct MpCtx {
    pub p: usize,
    rm: RoundingMode,
    cc: Consts,
}

#[derive(Clone, Debug)]
pub(crate) struct MpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpCtx {
    pub fn new(p: usize) -> Self {
        MpCtx {
            p,
            rm: RoundingMode::ToEven,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn real(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    pub fn from_c64(&self, z: Complex64) -> MpComplex {
        MpComplex {
            re: self.real(z.re),
            im: self.real(z.im),
        }
    }

    pub fn ratio(&mut self, num: u64, den: u64) -> BigFloat {
        self.real(num as f64).div(&self.real(den as f64), self.p, self.rm)
    }

    pub fn scale(&mut self, z: &MpComplex, s: &BigFloat) -> MpComplex {
        MpComplex {
            re: z.re.mul(s, self.p, self.rm),
            im: z.im.mul(s, self.p, self.rm),
        }
    }

    pub fn add(&mut self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex {
            re: a.re.add(&b.re, self.p, self.rm),
            im: a.im.add(&b.im, self.p, self.rm),
        }
    }

    pub fn sub(&mut self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex {
            re: a.re.sub(&b.re, self.p, self.rm),
            im: a.im.sub(&b.im, self.p, self.rm),
        }
    }

    pub fn mul(&mut self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        let ac = a.re.mul(&b.re, self.p, self.rm);
        let bd = a.im.mul(&b.im, self.p, self.rm);
        let ad = a.re.mul(&b.im, self.p, self.rm);
        let bc = a.im.mul(&b.re, self.p, self.rm);
        MpComplex {
            re: ac.sub(&bd, self.p, self.rm),
            im: ad.add(&bc, self.p, self.rm),
        }
    }

    /// cosh(x+iy) = cosh x cos y + i sinh x sin y
    pub fn cosh(&mut self, z: &MpComplex) -> MpComplex {
        let (p, rm) = (self.p, self.rm);
        let chx = z.re.cosh(p, rm, &mut self.cc);
        let shx = z.re.sinh(p, rm, &mut self.cc);
        let cy = z.im.cos(p, rm, &mut self.cc);
        let sy = z.im.sin(p, rm, &mut self.cc);
        MpComplex {
            re: chx.mul(&cy, p, rm),
            im: shx.mul(&sy, p, rm),
        }
    }
}

/// Power-of-two exponent of |x|, or None for zero/NaN.
pub(crate) fn exp2_of(x: &BigFloat) -> Option<i64> {
    if x.is_zero() || x.is_nan() {
        None
    } else {
        x.exponent().map(|e| e as i64)
    }
}

/// Larger of the component exponents: a cheap log2-scale size proxy.
pub(crate) fn size_exp2(z: &MpComplex) -> Option<i64> {
    match (exp2_of(&z.re), exp2_of(&z.im)) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
        (None, None) => None,
    }
}

/// Extracts x / 2^shift as an f64 (0.0 on deep underflow).
pub(crate) fn to_f64_shifted(x: &BigFloat, shift: i64) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let e = match exp2_of(x) {
        Some(e) => e,
        None => return f64::NAN,
    };
    let new_e = e - shift;
    if new_e < -1000 {
        return 0.0;
    }
    let mut y = x.clone();
    y.set_exponent(new_e as astro_float::Exponent);
    format!("{}", y).parse::<f64>().unwrap_or(f64::NAN)
}
