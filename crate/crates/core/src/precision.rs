//! Configurable-precision scalars.
//!
//! Every quantity in the crate is a [`Real`] carrying the mantissa width of the
//! [`PrecisionContext`] it was created under. This module is the only place that
//! talks to the multiprecision backend directly; the rest of the crate goes
//! through [`Real`], [`Complex`] and the kernels below.

use std::cmp::Ordering;
use std::fmt;

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};

/// A correctly rounded binary floating-point number of context precision.
pub type Real = Float;

pub const MIN_MANTISSA_BITS: u32 = 53;
pub const DEFAULT_MANTISSA_BITS: u32 = 256;

/// Mantissa width governing all arithmetic of one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    mantissa_bits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            mantissa_bits: DEFAULT_MANTISSA_BITS,
        }
    }
}

impl PrecisionContext {
    pub fn new(mantissa_bits: u32) -> Result<Self> {
        if mantissa_bits < MIN_MANTISSA_BITS || mantissa_bits > rug::float::prec_max() {
            return Err(Error::InvalidPrecision(mantissa_bits));
        }
        Ok(Self { mantissa_bits })
    }

    /// 53-bit mode, bit-compatible with IEEE double for the basic operations.
    pub fn fast() -> Self {
        Self {
            mantissa_bits: MIN_MANTISSA_BITS,
        }
    }

    pub fn bits(&self) -> u32 {
        self.mantissa_bits
    }

    pub fn real(&self, v: f64) -> Real {
        Float::with_val(self.mantissa_bits, v)
    }

    pub fn int(&self, v: i64) -> Real {
        Float::with_val(self.mantissa_bits, v)
    }

    pub fn zero(&self) -> Real {
        self.int(0)
    }

    pub fn one(&self) -> Real {
        self.int(1)
    }

    pub fn pi(&self) -> Real {
        Float::with_val(self.mantissa_bits, Constant::Pi)
    }

    /// `2^e`, exact.
    pub fn pow2(&self, e: i32) -> Real {
        self.one() << e
    }

    /// Rounds `v` to this context's precision.
    pub fn convert(&self, v: &Real) -> Real {
        Float::with_val(self.mantissa_bits, v)
    }

    /// Parses a decimal string directly at this precision (no detour through f64).
    pub fn parse(&self, s: &str) -> Result<Real> {
        let parsed = Float::parse(s.trim()).map_err(|_| Error::Parse(s.to_string()))?;
        let v = Float::with_val(self.mantissa_bits, parsed);
        if !v.is_finite() {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(v)
    }

    /// Stop tolerance shared by every iterative solve: `2^(8 - bits)`.
    pub fn tol_fp(&self) -> Real {
        self.pow2(8 - self.mantissa_bits as i32)
    }
}

/// Rejects NaN and infinities, naming the operation that produced them.
pub fn ensure_finite(op: &'static str, x: Real) -> Result<Real> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite { op })
    }
}

/// Shortest decimal string that parses back to the same value at its precision.
pub fn to_decimal(x: &Real) -> String {
    x.to_string_radix(10, None)
}

/// Complex number with components at context precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    pub fn from_f64(ctx: &PrecisionContext, re: f64, im: f64) -> Self {
        Self::new(ctx.real(re), ctx.real(im))
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self::new(ctx.zero(), ctx.zero())
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::new(ctx.one(), ctx.zero())
    }

    pub fn from_real(re: Real) -> Self {
        let im = Float::with_val(re.prec(), 0);
        Self { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn modulus_sq(&self) -> Real {
        self.re.clone().square() + self.im.clone().square()
    }

    pub fn modulus(&self) -> Real {
        self.re.clone().hypot(&self.im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, o: &Complex) -> Self {
        Self::new(self.re.clone() + &o.re, self.im.clone() + &o.im)
    }

    pub fn sub(&self, o: &Complex) -> Self {
        Self::new(self.re.clone() - &o.re, self.im.clone() - &o.im)
    }

    pub fn mul(&self, o: &Complex) -> Self {
        let re = self.re.clone() * &o.re - self.im.clone() * &o.im;
        let im = self.re.clone() * &o.im + self.im.clone() * &o.re;
        Self::new(re, im)
    }

    pub fn scale(&self, s: &Real) -> Self {
        Self::new(self.re.clone() * s, self.im.clone() * s)
    }

    /// Division; the caller guarantees `o != 0`.
    pub fn div(&self, o: &Complex) -> Self {
        let d = o.modulus_sq();
        let num = self.mul(&o.conj());
        Self::new(num.re / &d, num.im / &d)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}i",
            to_decimal(&self.re),
            sign,
            to_decimal(&self.im.clone().abs())
        )
    }
}

/// `x^e` for a nonnegative integer exponent.
pub fn powu(x: &Real, e: u32) -> Real {
    use rug::ops::Pow;
    x.clone().pow(e)
}

/// Compares two reals, treating NaN as a programming error.
pub fn cmp_real(a: &Real, b: &Real) -> Ordering {
    a.partial_cmp(b).expect("NaN reached a comparison")
}

/// `tanh(n x / 2)` evaluated as `1 - 2e^{-nx}/(1+e^{-nx})`, which cannot overflow
/// (directly for `nx <= 1`).
pub fn tanh_half_n(x: &Real, n: usize, ctx: &PrecisionContext) -> Result<Real> {
    tanh_half_n_with_complement(x, n, ctx).map(|(t, _)| t)
}

/// Returns `(tanh(nx/2), 1 - tanh(nx/2))`, the complement without cancellation.
pub fn tanh_half_n_with_complement(
    x: &Real,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<(Real, Real)> {
    if n == 0 {
        return Err(Error::Domain {
            op: "tanh_half_n",
            detail: "n must be positive".into(),
        });
    }
    if !x.is_finite() || *x <= 0 {
        return Err(Error::Domain {
            op: "tanh_half_n",
            detail: format!("x = {} must be positive", x.to_f64()),
        });
    }
    let nx = ctx.convert(x) * ctx.int(n as i64);
    if nx <= 1 {
        // 1 - c cancels here; the direct form cannot overflow this close to 0.
        let t = (nx / 2u32).tanh();
        let complement = ctx.one() - &t;
        return Ok((ensure_finite("tanh_half_n", t)?, complement));
    }
    let e = (-nx).exp();
    let complement = e.clone() * 2u32 / (e + 1u32);
    let t = ctx.one() - &complement;
    Ok((ensure_finite("tanh_half_n", t)?, complement))
}

/// `artanh(t) = ln((1+t)/(1-t))/2` for `|t| < 1`.
pub fn arctanh_safe(t: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if !t.is_finite() || t.clone().abs() >= 1 {
        return Err(Error::Domain {
            op: "arctanh_safe",
            detail: format!("|t| = {} is not below 1", t.to_f64().abs()),
        });
    }
    ensure_finite("arctanh_safe", ctx.convert(t).atanh())
}

/// Inverse of [`tanh_half_n_with_complement`]: `artanh(t)` given `t` and `c = 1 - t`.
///
/// Near `t = 1` the value of `t` alone cannot resolve `artanh(t)`; there `ln((2-c)/c)/2`
/// keeps full relative accuracy.
pub fn arctanh_with_complement(t: &Real, complement: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if *t < 0.5 {
        return arctanh_safe(t, ctx);
    }
    if !complement.is_finite() || *complement <= 0 {
        return Err(Error::Domain {
            op: "arctanh_with_complement",
            detail: format!("complement {} is not positive", complement.to_f64()),
        });
    }
    let c = ctx.convert(complement);
    ensure_finite("arctanh_with_complement", ((ctx.int(2) - &c) / c).ln() / 2u32)
}

/// Unit in the last place of `x` at the context precision.
pub fn ulp(x: &Real, ctx: &PrecisionContext) -> Real {
    match x.get_exp() {
        Some(e) => ctx.pow2(e - ctx.bits() as i32),
        None => ctx.zero(),
    }
}
