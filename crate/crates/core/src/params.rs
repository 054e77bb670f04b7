//! The pair `(alpha, n)` and everything derived from it.

use std::fmt;

use crate::error::{Error, Result};
use crate::precision::{Complex, PrecisionContext, Real};

/// Below this distance of `|alpha|` from 1 the closed unimodular formulas are used.
pub const NEAR_UNIMODULAR_LOG2: i32 = -40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Zero,
    Weak,
    UnimodularGeneric,
    CirculantPlus,
    CirculantMinus,
    Strong,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Zero => "zero",
            Regime::Weak => "weak",
            Regime::UnimodularGeneric => "unimodular",
            Regime::CirculantPlus => "circulant_plus",
            Regime::CirculantMinus => "circulant_minus",
            Regime::Strong => "strong",
        }
    }

    pub fn is_circulant(&self) -> bool {
        matches!(self, Regime::CirculantPlus | Regime::CirculantMinus)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Corner perturbation `alpha`, order `n` and the constants that control every solver.
#[derive(Clone, Debug)]
pub struct PerturbationParams {
    pub alpha: Complex,
    pub n: usize,
    pub ctx: PrecisionContext,
    pub abs_alpha: Real,
    k_alpha: Option<Real>,
    l_alpha: Option<Real>,
    /// `4(|a|+1)/||a|-1|`; `None` for `|a| = 1`.
    pub n1_threshold: Option<Real>,
    /// `(20 ln(|a|+1) - 4 ln ln|a|)/ln|a|`; only for `|a| > 1`.
    pub n2_threshold: Option<Real>,
    /// `(|a|-1)^2/|a|`; only for `|a| > 1`.
    pub s_alpha: Option<Real>,
    pub regime: Regime,
    /// `|alpha|` is within `2^-40` of 1 without being exactly unimodular.
    pub near_unimodular: bool,
}

impl PerturbationParams {
    pub fn new(alpha: Complex, n: usize, ctx: PrecisionContext) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("n = {n} must be at least 3")));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidParams("alpha must be finite".into()));
        }
        let alpha = Complex::new(ctx.convert(&alpha.re), ctx.convert(&alpha.im));
        let abs_alpha = alpha.modulus();
        let abs_sq = alpha.modulus_sq();
        let one = ctx.one();

        let plus_one_sq = alpha.add(&Complex::one(&ctx)).modulus_sq();
        let minus_one_sq = alpha.sub(&Complex::one(&ctx)).modulus_sq();
        let (k_alpha, l_alpha) = if plus_one_sq.is_zero() {
            (None, None)
        } else {
            let k = (one.clone() - &abs_sq) / &plus_one_sq;
            let l = (minus_one_sq / &plus_one_sq).sqrt();
            (Some(k), Some(l))
        };

        let dist = (abs_alpha.clone() - 1u32).abs();
        let exactly_unimodular = dist.is_zero();
        let near = dist < ctx.pow2(NEAR_UNIMODULAR_LOG2);

        let regime = if alpha.is_zero() {
            Regime::Zero
        } else if alpha.im.is_zero() && alpha.re == 1 {
            Regime::CirculantPlus
        } else if alpha.im.is_zero() && alpha.re == -1 {
            Regime::CirculantMinus
        } else if near {
            Regime::UnimodularGeneric
        } else if abs_alpha < 1 {
            Regime::Weak
        } else {
            Regime::Strong
        };

        let n1_threshold = if exactly_unimodular {
            None
        } else {
            Some((abs_alpha.clone() + 1u32) * 4u32 / &dist)
        };
        let (n2_threshold, s_alpha) = if abs_alpha > 1 {
            let ln_a = abs_alpha.clone().ln();
            let n2 = ((abs_alpha.clone() + 1u32).ln() * 20u32 - ln_a.clone().ln() * 4u32) / &ln_a;
            let s = (abs_alpha.clone() - 1u32).square() / &abs_alpha;
            (Some(n2), Some(s))
        } else {
            (None, None)
        };

        Ok(Self {
            alpha,
            n,
            ctx,
            abs_alpha,
            k_alpha,
            l_alpha,
            n1_threshold,
            n2_threshold,
            s_alpha,
            regime,
            near_unimodular: near && !exactly_unimodular && !regime.is_circulant(),
        })
    }

    pub fn from_f64(re: f64, im: f64, n: usize, ctx: PrecisionContext) -> Result<Self> {
        Self::new(Complex::from_f64(&ctx, re, im), n, ctx)
    }

    /// Parses both components as decimals at the target precision.
    pub fn parse(re: &str, im: &str, n: usize, ctx: PrecisionContext) -> Result<Self> {
        Self::new(Complex::new(ctx.parse(re)?, ctx.parse(im)?), n, ctx)
    }

    /// Same `alpha`, another order.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.alpha.clone(), n, self.ctx)
    }

    /// `(1-|a|^2)/|1+a|^2`, undefined for `a = -1`.
    pub fn k_alpha(&self) -> Result<&Real> {
        self.k_alpha.as_ref().ok_or_else(|| Error::Domain {
            op: "k_alpha",
            detail: "alpha = -1".into(),
        })
    }

    /// `|1-a|/|1+a|`, undefined for `a = -1`.
    pub fn l_alpha(&self) -> Result<&Real> {
        self.l_alpha.as_ref().ok_or_else(|| Error::Domain {
            op: "l_alpha",
            detail: "alpha = -1".into(),
        })
    }

    pub fn n_real(&self) -> Real {
        self.ctx.int(self.n as i64)
    }

    /// `n > N1(alpha)`: the interior maps are contractions. Always false for `|a| = 1`.
    pub fn exceeds_n1(&self) -> bool {
        match &self.n1_threshold {
            Some(t) => self.n_real() > *t,
            None => false,
        }
    }

    /// `n > N2(alpha)`: the extreme hyperbolic maps are contractions on `S_alpha`.
    pub fn exceeds_n2(&self) -> bool {
        match &self.n2_threshold {
            Some(t) => self.n_real() > *t,
            None => false,
        }
    }

    pub fn is_strong(&self) -> bool {
        self.regime == Regime::Strong
    }

    /// `(-1)^n` as an integer.
    pub fn parity_sign(&self) -> i32 {
        if self.n.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `det(A) = n(1-|a|^2) + |1-a|^2`, the expected product of the eigenvalues.
    pub fn determinant(&self) -> Real {
        let abs_sq = self.alpha.modulus_sq();
        let one_minus = self.alpha.sub(&Complex::one(&self.ctx)).modulus_sq();
        (self.ctx.one() - abs_sq) * self.n_real() + one_minus
    }

    pub fn describe_thresholds(&self) -> String {
        let fmt = |v: &Option<Real>| match v {
            Some(x) => format!("{:.3}", x.to_f64()),
            None => "n/a".to_string(),
        };
        format!(
            "regime={} n={} N1={} N2={}",
            self.regime,
            self.n,
            fmt(&self.n1_threshold),
            fmt(&self.n2_threshold)
        )
    }
}
