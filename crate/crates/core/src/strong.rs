//! Extreme eigenvalues for `|alpha| > 1`, outside `[0, 4]`.
//!
//! With `lambda = g_-(x)` (below) or `g_+(x)` (above) the characteristic equation
//! becomes `tanh(x) = psi(tanh(nx/2))`, solved as the fixed point of
//! `x -> artanh(psi(tanh(nx/2)))` on `S = [ln|a|/2, 3 ln|a|/2]`.

use crate::error::{Error, Result};
use crate::params::PerturbationParams;
use crate::precision::{arctanh_safe, tanh_half_n, Complex, Real};
use crate::solution::{Branch, Method, ThetaSolution};
use crate::symbol::Extreme;
use crate::weak::MAX_ITERATIONS;

const POLISH_ITERATIONS: usize = 64;

fn require_strong(p: &PerturbationParams, op: &'static str) -> Result<()> {
    if p.abs_alpha <= 1 {
        return Err(Error::Regime {
            op,
            detail: format!("needs |alpha| > 1 ({})", p.describe_thresholds()),
        });
    }
    Ok(())
}

/// `S = [ln|a|/2, 3 ln|a|/2]`, where the extreme maps are contractions.
#[derive(Clone, Debug)]
pub struct StrongSegment {
    pub lower: Real,
    pub upper: Real,
}

impl StrongSegment {
    pub fn new(p: &PerturbationParams) -> Result<Self> {
        require_strong(p, "StrongSegment")?;
        let ln_a = p.abs_alpha.clone().ln();
        Ok(Self {
            lower: ln_a.clone() / 2u32,
            upper: ln_a * 3u32 / 2u32,
        })
    }

    pub fn contains(&self, x: &Real) -> bool {
        *x >= self.lower && *x <= self.upper
    }
}

/// `psi(t) = 2(|a|^2-1) t / (|a+sigma|^2 t^2 + |a-sigma|^2)`.
#[derive(Clone, Debug)]
pub struct PsiFunction {
    pub which: Extreme,
    plus_sq: Real,
    minus_sq: Real,
    coef: Real,
}

impl PsiFunction {
    pub fn new(p: &PerturbationParams, which: Extreme) -> Result<Self> {
        require_strong(p, "psi")?;
        let sigma = Complex::from_real(p.ctx.int(which.sigma(p.n) as i64));
        Ok(Self {
            which,
            plus_sq: p.alpha.add(&sigma).modulus_sq(),
            minus_sq: p.alpha.sub(&sigma).modulus_sq(),
            coef: (p.alpha.modulus_sq() - 1u32) * 2u32,
        })
    }

    pub fn eval(&self, t: &Real) -> Real {
        let den = self.plus_sq.clone() * t.clone().square() + &self.minus_sq;
        self.coef.clone() * t / den
    }

    /// `psi'(t) = 2(|a|^2-1)(|a-sigma|^2 - |a+sigma|^2 t^2) / (|a+sigma|^2 t^2 + |a-sigma|^2)^2`.
    pub fn derivative(&self, t: &Real) -> Real {
        let t2 = t.clone().square();
        let den = self.plus_sq.clone() * &t2 + &self.minus_sq;
        let num = self.minus_sq.clone() - self.plus_sq.clone() * t2;
        self.coef.clone() * num / den.square()
    }
}

pub fn psi(f: &PsiFunction, t: &Real) -> Real {
    f.eval(t)
}

pub fn psi_prime(f: &PsiFunction, t: &Real) -> Real {
    f.derivative(t)
}

/// Left end of the `t`-interval on which the `psi` band inequalities hold:
/// `1 - (|a|-1)/(|a|+1)^3`.
pub fn band_start(p: &PerturbationParams) -> Real {
    let a = &p.abs_alpha;
    p.ctx.one() - (a.clone() - 1u32) / (a.clone() + 1u32).square() / (a.clone() + 1u32)
}

/// `x -> artanh(psi(tanh(nx/2)))`.
pub fn strong_map(p: &PerturbationParams, which: Extreme, x: &Real) -> Result<Real> {
    let f = PsiFunction::new(p, which)?;
    map_with(&f, p, x)
}

fn map_with(f: &PsiFunction, p: &PerturbationParams, x: &Real) -> Result<Real> {
    let t = tanh_half_n(x, p.n, &p.ctx)?;
    let v = f.eval(&t);
    if v.clone().abs() >= 1 {
        return Err(Error::ArctanhDomain { psi: v.to_f64() });
    }
    arctanh_safe(&v, &p.ctx)
}

/// Fixed point of [`strong_map`] from `x0 = ln|alpha|`; requires `n > N2`.
pub fn solve_theta_extreme(p: &PerturbationParams, which: Extreme) -> Result<ThetaSolution> {
    require_strong(p, "solve_theta_extreme")?;
    if !p.exceeds_n2() {
        return Err(Error::Regime {
            op: "solve_theta_extreme",
            detail: format!("needs n > N2 ({})", p.describe_thresholds()),
        });
    }
    let f = PsiFunction::new(p, which)?;
    let segment = StrongSegment::new(p)?;
    let tol = p.ctx.tol_fp();
    let mut x = p.abs_alpha.clone().ln();
    for it in 1..=MAX_ITERATIONS {
        let next = map_with(&f, p, &x)?;
        let mut step = (next.clone() - &x).abs();
        x = next;
        if step <= tol {
            let mut iterations = it;
            for _ in 0..POLISH_ITERATIONS {
                if step.is_zero() {
                    break;
                }
                let next = map_with(&f, p, &x)?;
                let s = (next.clone() - &x).abs();
                if s >= step {
                    break;
                }
                x = next;
                step = s;
                iterations += 1;
            }
            if !segment.contains(&x) {
                return Err(Error::Regime {
                    op: "solve_theta_extreme",
                    detail: format!("fixed point {} left S_alpha", x.to_f64()),
                });
            }
            let (j, branch) = match which {
                Extreme::First => (1, Branch::HyperBelow),
                Extreme::Last => (p.n, Branch::HyperAbove),
            };
            return Ok(ThetaSolution {
                theta: x,
                j,
                branch,
                iterations,
                final_step: step,
                method: Method::FixedPoint,
            });
        }
    }
    Err(Error::NoConvergence {
        op: "solve_theta_extreme",
        iterations: MAX_ITERATIONS,
    })
}

/// `-s_alpha` (first) or `4 + s_alpha` (last), the `n -> infinity` limits.
pub fn lambda_limit_extreme(p: &PerturbationParams, which: Extreme) -> Result<Real> {
    require_strong(p, "lambda_limit_extreme")?;
    let s = p.s_alpha.clone().expect("s_alpha exists for |alpha| > 1");
    Ok(match which {
        Extreme::First => -s,
        Extreme::Last => s + 4u32,
    })
}

/// `(lambda_2 - lambda_1, lambda_n - lambda_{n-1})` of an ascending spectrum.
pub fn spectral_gaps(p: &PerturbationParams, eigenvalues: &[Real]) -> Result<(Real, Real)> {
    require_strong(p, "spectral_gaps")?;
    let n = eigenvalues.len();
    if n < 2 {
        return Err(Error::InvalidParams("need at least two eigenvalues".into()));
    }
    Ok((
        eigenvalues[1].clone() - &eigenvalues[0],
        eigenvalues[n - 1].clone() - &eigenvalues[n - 2],
    ))
}
