//! Full spectra, eigenvectors and residuals.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::apply;
use crate::oracle::{extreme_eigenvalues_bisection, oracle_eigenvalues};
use crate::params::{PerturbationParams, Regime};
use crate::precision::{Complex, Real};
use crate::solution::{Branch, Method, ThetaSolution};
use crate::strong::{lambda_limit_extreme, solve_theta_extreme};
use crate::symbol::{g, Extreme};
use crate::unimodular::{closed_form_spectrum, eigvec_circulant_checked, CirculantSign};
use crate::weak::{lambda_asymptotic_interior, solve_theta_interior};

/// How [`full_spectrum`] obtains the eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SolveMethod {
    /// Cheapest certified path for the regime, with oracle fallback for small-n extremes.
    #[default]
    Auto,
    /// The analytic `theta` equations only.
    FixedPoint,
    /// The three-term interior expansion and the `-s`, `4 + s` extreme limits.
    Asymptotic,
    /// Dense Jacobi on the whole matrix.
    Oracle,
}

impl SolveMethod {
    pub fn name(&self) -> &'static str {
        match self {
            SolveMethod::Auto => "auto",
            SolveMethod::FixedPoint => "fixed_point",
            SolveMethod::Asymptotic => "asymptotic",
            SolveMethod::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolveMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(SolveMethod::Auto),
            "fixed_point" => Ok(SolveMethod::FixedPoint),
            "asymptotic" => Ok(SolveMethod::Asymptotic),
            "oracle" => Ok(SolveMethod::Oracle),
            other => Err(Error::InvalidParams(format!("unknown method {other:?}"))),
        }
    }
}

/// Eigenvalues in index order `j = 1..n` with their provenance.
///
/// Exact methods give ascending values; the asymptotic method keeps index order.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub params: PerturbationParams,
    pub eigenvalues: Vec<Real>,
    /// `Some` for every index obtained from a `theta` equation or closed form.
    pub thetas: Vec<Option<ThetaSolution>>,
    pub methods: Vec<Method>,
    pub multiplicities: Vec<usize>,
    /// Every eigenvalue sits in its own localization interval (or beyond `[0, 4]`
    /// for strong extremes) and the count proves none is missing.
    pub localization_certified: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub trace_error: Real,
    pub determinant_error: Real,
    pub tolerance: Real,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.trace_error <= self.tolerance && self.determinant_error <= self.tolerance
    }
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn is_exact(&self) -> bool {
        self.methods.iter().all(Method::is_exact)
    }

    /// Relative errors of `sum = 2n` and `prod = n(1-|a|^2) + |1-a|^2`.
    pub fn identities(&self) -> IdentityCheck {
        let p = &self.params;
        let ctx = &p.ctx;
        let sum = self.eigenvalues.iter().fold(ctx.zero(), |a, v| a + v);
        let two_n = p.n_real() * 2u32;
        let trace_error = (sum - &two_n).abs() / two_n;
        let prod = self.eigenvalues.iter().fold(ctx.one(), |a, v| a * v);
        let det = p.determinant();
        let scale = det.clone().abs().max(&ctx.one());
        let determinant_error = (prod - det).abs() / scale;
        let tolerance = ctx.pow2(32 - ctx.bits() as i32) * p.n_real();
        IdentityCheck {
            trace_error,
            determinant_error,
            tolerance,
        }
    }

    /// `(g((j-1) pi/n), g(j pi/n))` for `j` in `1..=n`.
    pub fn localization_interval(&self, j: usize) -> (Real, Real) {
        let (lo, hi) = crate::weak::interval(&self.params, j);
        (g(&lo), g(&hi))
    }

    /// Eigenvectors for every `theta`-solved index, `None` elsewhere.
    pub fn eigenpairs(&self) -> Result<Vec<Option<EigenPair>>> {
        self.thetas
            .par_iter()
            .map(|t| t.as_ref().map(|s| eigenvector(&self.params, s)).transpose())
            .collect()
    }
}

/// Eigenvalue, eigenvector and relative residual `||Av - lambda v|| / ||v||`.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub j: usize,
    pub eigenvalue: Real,
    pub vector: Vec<Complex>,
    pub residual: Real,
}

pub fn full_spectrum(p: &PerturbationParams, method: SolveMethod) -> Result<Spectrum> {
    let mut warnings = Vec::new();
    if p.near_unimodular {
        warnings.push(format!(
            "|alpha| is within 2^{} of 1; using the unimodular closed form",
            crate::params::NEAR_UNIMODULAR_LOG2
        ));
    }
    let mut s = match method {
        SolveMethod::Oracle => oracle_spectrum(p)?,
        SolveMethod::Asymptotic => asymptotic_spectrum(p)?,
        SolveMethod::FixedPoint | SolveMethod::Auto => match p.regime {
            Regime::Zero | Regime::Weak => theta_spectrum(p, 1, p.n)?,
            Regime::UnimodularGeneric if method == SolveMethod::Auto => closed_spectrum(p)?,
            Regime::UnimodularGeneric => theta_spectrum(p, 1, p.n)?,
            Regime::CirculantPlus | Regime::CirculantMinus => closed_spectrum(p)?,
            Regime::Strong => strong_spectrum(p, method)?,
        },
    };
    warnings.append(&mut s.warnings);
    s.warnings = warnings;
    if s.is_exact() {
        let check = s.identities();
        if !check.holds() {
            s.warnings.push(format!(
                "trace/determinant identity off by {:e} / {:e}",
                check.trace_error.to_f64(),
                check.determinant_error.to_f64()
            ));
        }
    }
    Ok(s)
}

fn assemble(
    p: &PerturbationParams,
    eigenvalues: Vec<Real>,
    thetas: Vec<Option<ThetaSolution>>,
    methods: Vec<Method>,
    localization_certified: bool,
) -> Spectrum {
    let multiplicities = match CirculantSign::from_regime(p.regime) {
        Some(_) => closed_form_spectrum(p)
            .map(|c| c.multiplicities)
            .unwrap_or_else(|_| vec![1; p.n]),
        None => vec![1; p.n],
    };
    Spectrum {
        params: p.clone(),
        eigenvalues,
        thetas,
        methods,
        multiplicities,
        localization_certified,
        warnings: Vec::new(),
    }
}

fn solve_range(p: &PerturbationParams, from: usize, to: usize) -> Result<Vec<ThetaSolution>> {
    (from..=to)
        .into_par_iter()
        .map(|j| solve_theta_interior(p, j))
        .collect()
}

fn theta_spectrum(p: &PerturbationParams, from: usize, to: usize) -> Result<Spectrum> {
    let sols = solve_range(p, from, to)?;
    let eigenvalues = sols.iter().map(ThetaSolution::eigenvalue).collect();
    let methods = sols.iter().map(|s| s.method).collect();
    Ok(assemble(p, eigenvalues, sols.into_iter().map(Some).collect(), methods, true))
}

fn closed_spectrum(p: &PerturbationParams) -> Result<Spectrum> {
    let c = closed_form_spectrum(p)?;
    let zero = p.ctx.zero();
    let thetas = c
        .thetas
        .iter()
        .enumerate()
        .map(|(i, th)| {
            Some(ThetaSolution {
                theta: th.clone(),
                j: i + 1,
                branch: Branch::Trig,
                iterations: 0,
                final_step: zero.clone(),
                method: Method::ClosedForm,
            })
        })
        .collect();
    // Double eigenvalues sit on interval endpoints, so only generic |alpha| = 1 is localized.
    let certified = p.regime == Regime::UnimodularGeneric;
    let mut s = assemble(p, c.eigenvalues, thetas, vec![Method::ClosedForm; p.n], certified);
    s.multiplicities = c.multiplicities;
    Ok(s)
}

fn oracle_spectrum(p: &PerturbationParams) -> Result<Spectrum> {
    let r = oracle_eigenvalues(p, &p.ctx)?;
    Ok(assemble(p, r.eigenvalues, vec![None; p.n], vec![Method::OracleJacobi; p.n], false))
}

fn asymptotic_spectrum(p: &PerturbationParams) -> Result<Spectrum> {
    if p.regime.is_circulant() {
        return Err(Error::Regime {
            op: "full_spectrum",
            detail: "the asymptotic expansion is undefined for alpha = +-1".into(),
        });
    }
    let strong = p.is_strong();
    let eigenvalues = (1..=p.n)
        .into_par_iter()
        .map(|j| {
            if strong && j == 1 {
                lambda_limit_extreme(p, Extreme::First)
            } else if strong && j == p.n {
                lambda_limit_extreme(p, Extreme::Last)
            } else {
                lambda_asymptotic_interior(p, j)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(p, eigenvalues, vec![None; p.n], vec![Method::Asymptotic; p.n], false))
}

/// Interior from the `theta` equations; extremes from the hyperbolic fixed point when
/// `n > N2`, otherwise (auto only) from charpoly bisection, and from Jacobi on the whole
/// matrix when an extreme has not left `[0, 4]`.
fn strong_spectrum(p: &PerturbationParams, method: SolveMethod) -> Result<Spectrum> {
    let interior = solve_range(p, 2, p.n - 1)?;
    let mut warnings = Vec::new();
    let mut extreme = |which: Extreme| -> Result<Option<(Real, Option<ThetaSolution>, Method)>> {
        if p.exceeds_n2() {
            match solve_theta_extreme(p, which) {
                Ok(s) => return Ok(Some((s.eigenvalue(), Some(s), Method::FixedPoint))),
                Err(e) if method == SolveMethod::Auto => {
                    warnings.push(format!("{} extreme fixed point failed ({e}); using bisection", which.name()));
                }
                Err(e) => return Err(e),
            }
        } else if method == SolveMethod::FixedPoint {
            return Err(Error::Regime {
                op: "full_spectrum",
                detail: format!(
                    "extreme eigenvalues need n > N2 for the fixed point ({})",
                    p.describe_thresholds()
                ),
            });
        }
        match extreme_eigenvalues_bisection(p, which, &p.ctx) {
            Ok(v) => {
                let sol = theta_from_extreme(p, which, &v);
                Ok(Some((v, Some(sol), Method::OracleBisection)))
            }
            Err(Error::NoBracket { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let first = extreme(Extreme::First)?;
    let last = extreme(Extreme::Last)?;
    let (first, last) = match (first, last) {
        (Some(f), Some(l)) => (f, l),
        _ => {
            let mut s = oracle_spectrum(p)?;
            warnings.push(format!(
                "an extreme eigenvalue lies inside [0, 4] ({}); whole spectrum from the oracle",
                p.describe_thresholds()
            ));
            s.warnings = warnings;
            return Ok(s);
        }
    };
    let mut eigenvalues = Vec::with_capacity(p.n);
    let mut thetas = Vec::with_capacity(p.n);
    let mut methods = Vec::with_capacity(p.n);
    eigenvalues.push(first.0);
    thetas.push(first.1);
    methods.push(first.2);
    for s in interior {
        eigenvalues.push(s.eigenvalue());
        methods.push(s.method);
        thetas.push(Some(s));
    }
    eigenvalues.push(last.0);
    thetas.push(last.1);
    methods.push(last.2);
    let certified = eigenvalues[0] < 0 && eigenvalues[p.n - 1] > 4;
    let mut s = assemble(p, eigenvalues, thetas, methods, certified);
    s.warnings = warnings;
    Ok(s)
}

/// Inverts `g-` or `g+` so a bisected extreme still yields an eigenvector.
fn theta_from_extreme(p: &PerturbationParams, which: Extreme, lambda: &Real) -> ThetaSolution {
    let (excess, branch) = match which {
        Extreme::First => (-lambda.clone(), Branch::HyperBelow),
        Extreme::Last => (lambda.clone() - 4u32, Branch::HyperAbove),
    };
    let theta = (excess.max(&p.ctx.zero()).sqrt() / 2u32).asinh() * 2u32;
    ThetaSolution {
        theta,
        j: if which == Extreme::First { 1 } else { p.n },
        branch,
        iterations: 0,
        final_step: p.ctx.zero(),
        method: Method::OracleBisection,
    }
}

/// Eigenvector built from `theta`, normalized so its largest component is 1.
///
/// Interior: `sin(k t) + conj(a) sin((n-k) t)`. Below: `sinh(k t) + conj(a) sinh((n-k) t)`.
/// Above: `(-1)^k sinh(k t) + (-1)^{k+n} conj(a) sinh((n-k) t)`. The hyperbolic forms are
/// divided by `|a|^n` first. For `alpha = +-1` the circulant sine/cosine vectors are used.
pub fn eigenvector(p: &PerturbationParams, sol: &ThetaSolution) -> Result<EigenPair> {
    let ctx = &p.ctx;
    let n = p.n;
    let conj = p.alpha.conj();
    let theta = &sol.theta;
    let raw: Vec<Complex> = if let Some(sign) = CirculantSign::from_regime(p.regime) {
        eigvec_circulant_checked(sign, n, sol.j, ctx)
            .into_iter()
            .map(Complex::from_real)
            .collect()
    } else {
        let trig = sol.branch == Branch::Trig;
        let scale = if trig {
            ctx.one()
        } else {
            (p.abs_alpha.clone().ln() * ctx.int(n as i64)).exp().recip()
        };
        (1..=n)
            .map(|k| {
                let a = theta.clone() * ctx.int(k as i64);
                let b = theta.clone() * ctx.int((n - k) as i64);
                let (mut fa, mut fb) = if trig { (a.sin(), b.sin()) } else { (a.sinh(), b.sinh()) };
                if sol.branch == Branch::HyperAbove {
                    if k % 2 == 1 {
                        fa = -fa;
                    }
                    if (k + n) % 2 == 1 {
                        fb = -fb;
                    }
                }
                Complex::from_real(fa * &scale).add(&conj.scale(&(fb * &scale)))
            })
            .collect()
    };
    let (imax, max) = raw
        .iter()
        .map(Complex::modulus)
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite components"))
        .expect("n >= 3");
    if max < ctx.pow2(8 - ctx.bits() as i32) {
        return Err(Error::ZeroVector { j: sol.j });
    }
    let pivot = raw[imax].clone();
    let vector: Vec<Complex> = raw.iter().map(|z| z.div(&pivot)).collect();
    let eigenvalue = sol.eigenvalue();
    let res = residual_of(p, &vector, &eigenvalue);
    Ok(EigenPair {
        j: sol.j,
        eigenvalue,
        vector,
        residual: res,
    })
}

/// `||A v - lambda v|| / ||v||` with an O(n) product.
pub fn residual(p: &PerturbationParams, pair: &EigenPair) -> Real {
    residual_of(p, &pair.vector, &pair.eigenvalue)
}

fn residual_of(p: &PerturbationParams, v: &[Complex], lambda: &Real) -> Real {
    let av = apply(p, v);
    let mut num = p.ctx.zero();
    let mut den = p.ctx.zero();
    for (a, x) in av.iter().zip(v) {
        num += a.sub(&x.scale(lambda)).modulus_sq();
        den += x.modulus_sq();
    }
    (num / den).sqrt()
}
