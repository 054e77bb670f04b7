//! The changes of variables `g`, `g_-`, `g_+` and the generating symbol.

use crate::params::PerturbationParams;
use crate::precision::Real;

/// `g(x) = 4 sin^2(x/2)`.
pub fn g(x: &Real) -> Real {
    let half = x.clone() / 2u32;
    half.sin().square() * 4u32
}

/// `g'(x) = 2 sin x`.
pub fn g_prime(x: &Real) -> Real {
    x.clone().sin() * 2u32
}

/// `g''(x) = 2 cos x`.
pub fn g_double_prime(x: &Real) -> Real {
    x.clone().cos() * 2u32
}

/// `g_-(x) = -4 sinh^2(x/2)`, the branch below zero.
pub fn g_minus(x: &Real) -> Real {
    -((x.clone() / 2u32).sinh().square() * 4u32)
}

/// `g_+(x) = 4 + 4 sinh^2(x/2)`, the branch above four.
pub fn g_plus(x: &Real) -> Real {
    (x.clone() / 2u32).sinh().square() * 4u32 + 4u32
}

/// Which extreme eigenvalue a hyperbolic quantity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extreme {
    /// `lambda_1 = g_-(theta) < 0`.
    First,
    /// `lambda_n = g_+(theta) > 4`.
    Last,
}

impl Extreme {
    pub fn g(&self, x: &Real) -> Real {
        match self {
            Extreme::First => g_minus(x),
            Extreme::Last => g_plus(x),
        }
    }

    /// `sigma = 1` below the spectrum, `(-1)^n` above it.
    pub fn sigma(&self, n: usize) -> i32 {
        match self {
            Extreme::First => 1,
            Extreme::Last if n.is_multiple_of(2) => 1,
            Extreme::Last => -1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Extreme::First => "first",
            Extreme::Last => "last",
        }
    }
}

/// `h(x) = 4 sin^2(x/2) - 2 Re(alpha e^{i(n-1)x})`.
pub fn symbol_value(p: &PerturbationParams, x: &Real) -> Real {
    let m = p.ctx.int(p.n as i64 - 1);
    let (s, c) = (m * x).sin_cos(p.ctx.zero());
    let re = p.alpha.re.clone() * &c - p.alpha.im.clone() * &s;
    g(x) - re * 2u32
}
