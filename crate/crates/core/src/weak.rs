//! Interior eigenvalues: `theta = (j pi + eta(theta)) / n` on `I_{n,j}`.

use crate::error::{Error, Result};
use crate::params::{PerturbationParams, Regime};
use crate::precision::{PrecisionContext, Real};
use crate::solution::{Branch, Method, ThetaSolution};
use crate::symbol::{g, g_double_prime, g_prime};

/// Iteration cap shared by every fixed-point solve.
pub const MAX_ITERATIONS: usize = 10_000;

/// Extra iterations allowed after the stop tolerance is met, while steps keep shrinking.
const POLISH_ITERATIONS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(j: usize) -> Self {
        if j % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `(-1)^{j+1}`.
    pub fn sign(&self) -> i32 {
        match self {
            Parity::Odd => 1,
            Parity::Even => -1,
        }
    }
}

/// `eta_{alpha,j}` for one parity of `j`.
///
/// With `a = (-1)^{j+1} k cos x` and `r = sqrt(k^2 cos^2 x + l^2 sin^2 x)` the
/// arctangent argument is `(a + r)/sin x` raised to `(-1)^j`. Writing it as an
/// angle `phi = atan2(a + r, sin x)` (or the conjugate form when `a < 0`) keeps the
/// evaluation finite and cancellation-free through `x = 0` and `x = pi`.
#[derive(Clone, Debug)]
pub struct EtaFunction<'a> {
    pub params: &'a PerturbationParams,
    pub parity: Parity,
    k: Real,
    l: Real,
}

/// The pieces shared by `eta`, `eta'` and `u`.
struct EtaParts {
    /// `a + r`, evaluated without cancellation.
    p: Real,
    /// `r - a`, evaluated without cancellation.
    d: Real,
    r: Real,
    sn: Real,
    a_nonneg: bool,
}

impl<'a> EtaFunction<'a> {
    pub fn new(params: &'a PerturbationParams, parity: Parity) -> Result<Self> {
        if params.regime.is_circulant() {
            return Err(Error::Regime {
                op: "eta",
                detail: "alpha = +-1 has no eta function; use the circulant closed forms".into(),
            });
        }
        Ok(Self {
            params,
            parity,
            k: params.k_alpha()?.clone(),
            l: params.l_alpha()?.clone(),
        })
    }

    fn ctx(&self) -> &PrecisionContext {
        &self.params.ctx
    }

    fn parts(&self, x: &Real) -> EtaParts {
        let ctx = self.ctx();
        let (sn, cs) = ctx.convert(x).sin_cos(ctx.zero());
        let sn = sn.abs();
        let a = self.k.clone() * cs * self.parity.sign();
        let l2 = self.l.clone().square();
        let r = (a.clone().square() + l2.clone() * sn.clone().square()).sqrt();
        let a_nonneg = a >= 0;
        let (p, d) = if a_nonneg {
            let p = a.clone() + &r;
            // r - a = l^2 sn^2 / (r + a)
            let d = if p.is_zero() {
                ctx.zero()
            } else {
                l2 * sn.clone().square() / &p
            };
            (p, d)
        } else {
            let d = r.clone() - &a;
            let p = l2 * sn.clone().square() / &d;
            (p, d)
        };
        EtaParts {
            p,
            d,
            r,
            sn,
            a_nonneg,
        }
    }

    /// `phi = arctan((a + r)/sin x)` in `[0, pi/2]`.
    fn phi(&self, x: &Real) -> Real {
        let ctx = self.ctx();
        if self.k.is_zero() {
            return self.l.clone().atan();
        }
        let parts = self.parts(x);
        if parts.a_nonneg {
            parts.p.atan2(&parts.sn)
        } else {
            (self.l.clone().square() * &parts.sn).atan2(&parts.d)
        }
        .max(&ctx.zero())
    }

    /// `eta(x)` on `[0, pi]`, values in `[-pi, 0]`.
    pub fn eval(&self, x: &Real) -> Real {
        let phi = self.phi(x);
        match self.parity {
            Parity::Even => -(phi * 2u32),
            Parity::Odd => phi * 2u32 - self.ctx().pi(),
        }
    }

    /// `eta'(x) = -2k (a + r) / (r (sin^2 x + (a + r)^2))`, the same for both parities.
    pub fn derivative(&self, x: &Real) -> Real {
        let ctx = self.ctx();
        if self.k.is_zero() {
            return ctx.zero();
        }
        let parts = self.parts(x);
        if parts.r.is_zero() {
            return ctx.zero();
        }
        let q = if parts.a_nonneg {
            parts.p.clone() / (parts.sn.clone().square() + parts.p.clone().square())
        } else {
            let l2 = self.l.clone().square();
            l2.clone() * &parts.d
                / (parts.d.clone().square() + l2.square() * parts.sn.clone().square())
        };
        -(self.k.clone() * 2u32 * q / &parts.r)
    }
}

pub fn eta(e: &EtaFunction<'_>, x: &Real) -> Real {
    e.eval(x)
}

pub fn eta_prime(e: &EtaFunction<'_>, x: &Real) -> Real {
    e.derivative(x)
}

/// `u = k cot x + (-1)^{j+1} sqrt(k^2 cot^2 x + l^2)`; the interior equation is `tan(nx/2) = u`.
pub fn u_root(p: &PerturbationParams, parity: Parity, x: &Real) -> Result<Real> {
    if p.abs_alpha >= 1 {
        return Err(Error::Regime {
            op: "u_root",
            detail: "defined for |alpha| < 1".into(),
        });
    }
    let e = EtaFunction::new(p, parity)?;
    let parts = e.parts(x);
    if parts.sn.is_zero() {
        return Err(Error::Domain {
            op: "u_root",
            detail: "x must lie strictly inside (0, pi)".into(),
        });
    }
    Ok(parts.p / parts.sn * parity.sign())
}

/// `f(x) = (j pi + eta(x)) / n`.
pub fn f_map(e: &EtaFunction<'_>, j: usize, x: &Real) -> Real {
    let ctx = &e.params.ctx;
    (ctx.pi() * ctx.int(j as i64) + e.eval(x)) / ctx.int(e.params.n as i64)
}

/// `I_{n,j} = ((j-1) pi / n, j pi / n)`.
pub fn interval(p: &PerturbationParams, j: usize) -> (Real, Real) {
    let ctx = &p.ctx;
    let step = ctx.pi() / ctx.int(p.n as i64);
    (step.clone() * ctx.int(j as i64 - 1), step * ctx.int(j as i64))
}

fn check_interior(p: &PerturbationParams, j: usize, op: &'static str) -> Result<()> {
    if p.regime.is_circulant() {
        return Err(Error::Regime {
            op,
            detail: format!("{} is handled by the circulant closed forms", p.regime),
        });
    }
    let valid = if p.is_strong() {
        (2..p.n).contains(&j)
    } else {
        (1..=p.n).contains(&j)
    };
    if !valid {
        return Err(Error::InvalidParams(format!(
            "index j = {j} is not an interior index for {}",
            p.describe_thresholds()
        )));
    }
    Ok(())
}

/// Solves for `theta_j` on the trigonometric branch.
///
/// Fixed-point iteration from the midpoint of `I_{n,j}` when `f` is a contraction
/// (`n > N1`, or `|alpha| = 1` where `f` is constant); bisection otherwise, and also
/// whenever the iteration fails to converge.
pub fn solve_theta_interior(p: &PerturbationParams, j: usize) -> Result<ThetaSolution> {
    check_interior(p, j, "solve_theta_interior")?;
    let e = EtaFunction::new(p, Parity::of(j))?;
    let contractive = p.exceeds_n1() || p.k_alpha()?.is_zero();
    if contractive {
        match fixed_point(&e, j) {
            Ok(s) => return Ok(s),
            Err(Error::NoConvergence { .. }) => {}
            Err(other) => return Err(other),
        }
    }
    bisect(&e, j)
}

/// Fixed-point iteration only; `NoConvergence` after [`MAX_ITERATIONS`].
pub fn solve_theta_interior_fixed_point(p: &PerturbationParams, j: usize) -> Result<ThetaSolution> {
    check_interior(p, j, "solve_theta_interior_fixed_point")?;
    fixed_point(&EtaFunction::new(p, Parity::of(j))?, j)
}

/// Bisection only.
pub fn solve_theta_interior_bisection(p: &PerturbationParams, j: usize) -> Result<ThetaSolution> {
    check_interior(p, j, "solve_theta_interior_bisection")?;
    bisect(&EtaFunction::new(p, Parity::of(j))?, j)
}

fn fixed_point(e: &EtaFunction<'_>, j: usize) -> Result<ThetaSolution> {
    let p = e.params;
    let ctx = &p.ctx;
    let tol = ctx.tol_fp();
    let (lo, hi) = interval(p, j);
    let mut x = (lo + hi) / 2u32;
    for it in 1..=MAX_ITERATIONS {
        let next = f_map(e, j, &x);
        let mut step = (next.clone() - &x).abs();
        x = next;
        if step <= tol {
            let mut iterations = it;
            // Contraction factors close to 1 leave up to q/(1-q) * tol of error behind.
            for _ in 0..POLISH_ITERATIONS {
                if step.is_zero() {
                    break;
                }
                let next = f_map(e, j, &x);
                let s = (next.clone() - &x).abs();
                if s >= step {
                    break;
                }
                x = next;
                step = s;
                iterations += 1;
            }
            return Ok(ThetaSolution {
                theta: x,
                j,
                branch: Branch::Trig,
                iterations,
                final_step: step,
                method: Method::FixedPoint,
            });
        }
    }
    Err(Error::NoConvergence {
        op: "solve_theta_interior",
        iterations: MAX_ITERATIONS,
    })
}

/// Root of `F(x) = n x - j pi - eta(x)` on the closed interval `I_{n,j}`.
///
/// `F(x) = 0` is the angle form of `tan(nx/2) = u(x)`. Since `eta` takes values in
/// `[-pi, 0]`, `F` is `<= 0` at the left end and `>= 0` at the right end.
fn bisect(e: &EtaFunction<'_>, j: usize) -> Result<ThetaSolution> {
    let p = e.params;
    let ctx = &p.ctx;
    let n = ctx.int(p.n as i64);
    let j_pi = ctx.pi() * ctx.int(j as i64);
    let big_f = |x: &Real| n.clone() * x - &j_pi - e.eval(x);
    let (mut lo, mut hi) = interval(p, j);
    if big_f(&lo) > 0 || big_f(&hi) < 0 {
        return Err(Error::FallbackUnavailable { j });
    }
    let width_goal = ctx.pow2(-(ctx.bits() as i32));
    let cap = 4 * ctx.bits() as usize + 64;
    let mut iterations = 0;
    while (hi.clone() - &lo) > width_goal && iterations < cap {
        let mid = (lo.clone() + &hi) / 2u32;
        if mid <= lo || mid >= hi {
            break;
        }
        if big_f(&mid) <= 0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let width = hi.clone() - &lo;
    Ok(ThetaSolution {
        theta: (lo + hi) / 2u32,
        j,
        branch: Branch::Trig,
        iterations,
        final_step: width,
        method: Method::Bisection,
    })
}

/// `g(x) + g'(x) eta(x)/n + (g'(x) eta(x) eta'(x) + g''(x) eta(x)^2 / 2)/n^2` at `x = j pi / n`.
pub fn lambda_asymptotic_interior(p: &PerturbationParams, j: usize) -> Result<Real> {
    check_interior(p, j, "lambda_asymptotic_interior")?;
    let ctx = &p.ctx;
    let e = EtaFunction::new(p, Parity::of(j))?;
    let n = ctx.int(p.n as i64);
    let x = ctx.pi() * ctx.int(j as i64) / &n;
    let et = e.eval(&x);
    let ed = e.derivative(&x);
    let g1 = g_prime(&x);
    let first = g1.clone() * &et / &n;
    let second = (g1 * &et * ed + g_double_prime(&x) * et.clone().square() / 2u32) / n.square();
    Ok(g(&x) + first + second)
}

/// True when `regime` is handled by this module for every index.
pub fn handles_all_indices(regime: Regime) -> bool {
    matches!(regime, Regime::Zero | Regime::Weak | Regime::UnimodularGeneric)
}
