//! Asymptotic-versus-exact error tables.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::extreme_eigenvalues_bisection;
use crate::params::PerturbationParams;
use crate::precision::{powu, Complex, PrecisionContext, Real};
use crate::solution::Method;
use crate::spectrum::{full_spectrum, SolveMethod, Spectrum};
use crate::strong::{lambda_limit_extreme, solve_theta_extreme};
use crate::symbol::Extreme;

/// One row: `R_inf = max_j |lambda^asympt_j - lambda_j|` and the scaled extreme errors.
#[derive(Clone, Debug)]
pub struct ErrorTableRow {
    pub n: usize,
    pub r_inf: Real,
    pub n3_r_inf: Real,
    /// `|alpha|^n |R_{n,1}|`, strong regime only.
    pub extreme_scaled_first: Option<Real>,
    /// `|alpha|^n |R_{n,n}|`, strong regime only.
    pub extreme_scaled_last: Option<Real>,
    /// Distinct methods behind the exact eigenvalues, in first-use order.
    pub methods: Vec<Method>,
}

impl ErrorTableRow {
    /// Extremes came from an oracle rather than the fixed point.
    pub fn used_oracle(&self) -> bool {
        self.methods.iter().any(Method::is_oracle)
    }

    pub fn methods_label(&self) -> String {
        self.methods.iter().map(Method::name).collect::<Vec<_>>().join("+")
    }
}

/// Differences `lambda^asympt_j - lambda_j` in index order.
pub fn asymptotic_errors(exact: &Spectrum, asympt: &Spectrum) -> Vec<Real> {
    asympt
        .eigenvalues
        .iter()
        .zip(&exact.eigenvalues)
        .map(|(a, e)| a.clone() - e)
        .collect()
}

pub fn error_table_row(p: &PerturbationParams) -> Result<ErrorTableRow> {
    let exact = full_spectrum(p, SolveMethod::Auto)?;
    let asympt = full_spectrum(p, SolveMethod::Asymptotic)?;
    let errors = asymptotic_errors(&exact, &asympt);
    let ctx = &p.ctx;
    let r_inf = errors.iter().fold(ctx.zero(), |m, e| m.max(&e.clone().abs()));
    let n3_r_inf = r_inf.clone() * powu(&p.n_real(), 3);
    let (first, last) = if p.is_strong() {
        let scale = powu(&p.abs_alpha, p.n as u32);
        let fallback = (&exact.eigenvalues[0], &exact.eigenvalues[p.n - 1]);
        let (e1, en) = extreme_errors(p, fallback)?;
        (Some(e1 * &scale), Some(en * scale))
    } else {
        (None, None)
    };
    let mut methods: Vec<Method> = Vec::new();
    for m in &exact.methods {
        if !methods.contains(m) {
            methods.push(*m);
        }
    }
    Ok(ErrorTableRow {
        n: p.n,
        r_inf,
        n3_r_inf,
        extreme_scaled_first: first,
        extreme_scaled_last: last,
        methods,
    })
}

/// `|lambda_1 + s|` and `|lambda_n - 4 - s|`, which are of size `|alpha|^-n`.
///
/// The extremes are re-solved with `n log2|alpha|` extra bits so the scaled errors keep
/// full working precision. Extremes that did not leave `[0, 4]` keep their spectrum values.
fn extreme_errors(p: &PerturbationParams, fallback: (&Real, &Real)) -> Result<(Real, Real)> {
    let extra = (p.abs_alpha.clone().log2() * p.n_real()).ceil().to_f64() as u32 + 64;
    let ctx = PrecisionContext::new(p.ctx.bits() + extra)?;
    let q = PerturbationParams::new(p.alpha.clone(), p.n, ctx)?;
    let solve = |which: Extreme, fb: &Real| -> Result<Real> {
        let lambda = if q.exceeds_n2() {
            solve_theta_extreme(&q, which)?.eigenvalue()
        } else {
            match extreme_eigenvalues_bisection(&q, which, &ctx) {
                Ok(v) => v,
                Err(Error::NoBracket { .. }) => ctx.convert(fb),
                Err(e) => return Err(e),
            }
        };
        Ok((lambda - lambda_limit_extreme(&q, which)?).abs())
    };
    let first = solve(Extreme::First, fallback.0)?;
    let last = solve(Extreme::Last, fallback.1)?;
    Ok((p.ctx.convert(&first), p.ctx.convert(&last)))
}

/// Rows for every order in `ns`, ascending by `n`.
pub fn error_table(alpha: &Complex, ns: &[usize], ctx: PrecisionContext) -> Result<Vec<ErrorTableRow>> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    ns.par_iter()
        .map(|&n| error_table_row(&PerturbationParams::new(alpha.clone(), n, ctx)?))
        .collect()
}

/// `x` with three significant digits in exponent notation, e.g. `1.76e-4`.
pub fn sig3(x: &Real) -> String {
    format!("{:.2e}", x.to_f64())
}

/// Whether `computed` agrees with a printed value to three significant digits,
/// allowing one unit of slack in the third digit.
pub fn matches_sig3(computed: f64, printed: f64) -> bool {
    if computed == 0.0 || printed == 0.0 {
        return computed == printed;
    }
    let exp = printed.abs().log10().floor() as i32;
    let unit = 10f64.powi(exp - 2);
    let round = |v: f64| (v / unit).round();
    (round(computed) - round(printed)).abs() <= 1.0
}
