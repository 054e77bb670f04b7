//! Independent reference eigenvalues.
//!
//! Cyclic Jacobi on the real symmetric embedding `[[Re, -Im], [Im, Re]]` of the
//! Hermitian matrix, and sign-change bisection of the Chebyshev characteristic
//! polynomial for the two extremes. Neither path touches the `theta` equations.

use std::cmp::Ordering;

use crate::charpoly::charpoly_cheb;
use crate::error::{Error, Result};
use crate::matrix::{build_matrix, DenseMatrix, DENSE_LIMIT};
use crate::params::PerturbationParams;
use crate::precision::{cmp_real, PrecisionContext, Real};
use crate::symbol::Extreme;

pub const MAX_SWEEPS: usize = 60;

/// Arithmetic needed by the Jacobi sweep.
pub trait JacobiScalar: Clone + PartialOrd {
    fn from_real(x: &Real, ctx: &PrecisionContext) -> Self;
    fn to_real(&self, ctx: &PrecisionContext) -> Real;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl JacobiScalar for f64 {
    fn from_real(x: &Real, _: &PrecisionContext) -> Self {
        x.to_f64()
    }
    fn to_real(&self, ctx: &PrecisionContext) -> Real {
        ctx.real(*self)
    }
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl JacobiScalar for Real {
    fn from_real(x: &Real, ctx: &PrecisionContext) -> Self {
        ctx.convert(x)
    }
    fn to_real(&self, ctx: &PrecisionContext) -> Real {
        ctx.convert(self)
    }
    fn zero_like(&self) -> Self {
        Real::with_val(self.prec(), 0)
    }
    fn one_like(&self) -> Self {
        self.zero_like() + 1u32
    }
    fn add(&self, o: &Self) -> Self {
        self.clone() + o
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o
    }
    fn div(&self, o: &Self) -> Self {
        self.clone() / o
    }
    fn sqrt(&self) -> Self {
        self.clone().sqrt()
    }
    fn abs(&self) -> Self {
        self.clone().abs()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn is_zero(&self) -> bool {
        Real::is_zero(self)
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Ascending, one value per eigenvalue of the Hermitian input.
    pub eigenvalues: Vec<Real>,
    /// Off-diagonal Frobenius norm of the embedding when the sweeps stopped.
    pub offdiag_norm: Real,
    pub sweeps: usize,
}

/// All eigenvalues of a Hermitian matrix; 53-bit contexts run in native `f64`.
pub fn dense_hermitian_eigenvalues(m: &DenseMatrix, ctx: &PrecisionContext) -> Result<OracleResult> {
    if m.n() > DENSE_LIMIT {
        return Err(Error::OracleLimit {
            n: m.n(),
            limit: DENSE_LIMIT,
        });
    }
    if ctx.bits() == 53 {
        jacobi::<f64>(m, ctx)
    } else {
        jacobi::<Real>(m, ctx)
    }
}

/// Oracle spectrum of `A(alpha, n)`.
pub fn oracle_eigenvalues(p: &PerturbationParams, ctx: &PrecisionContext) -> Result<OracleResult> {
    dense_hermitian_eigenvalues(&build_matrix(p)?, ctx)
}

fn jacobi<S: JacobiScalar>(m: &DenseMatrix, ctx: &PrecisionContext) -> Result<OracleResult> {
    let n = m.n();
    let size = 2 * n;
    let proto = S::from_real(&ctx.zero(), ctx);
    let mut a: Vec<Vec<S>> = vec![vec![proto.clone(); size]; size];
    for i in 0..n {
        for j in 0..n {
            let z = m.get(i, j);
            let re = S::from_real(&z.re, ctx);
            let im = S::from_real(&z.im, ctx);
            a[i][j] = re.clone();
            a[i + n][j + n] = re;
            a[i][j + n] = im.neg();
            a[i + n][j] = im;
        }
    }
    let frob = |a: &Vec<Vec<S>>, diag: bool| {
        let mut acc = proto.clone();
        for (i, row) in a.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if diag || i != j {
                    acc = acc.add(&v.mul(v));
                }
            }
        }
        acc.sqrt()
    };
    let norm = frob(&a, true);
    let threshold = norm.mul(&S::from_real(&ctx.pow2(-(ctx.bits() as i32) / 2), ctx));

    let mut sweeps = 0;
    let mut off = frob(&a, false);
    let mut polished = false;
    while !off.is_zero() {
        if off <= threshold {
            if polished {
                break;
            }
            polished = true;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                op: "dense_hermitian_eigenvalues",
                iterations: MAX_SWEEPS,
            });
        }
        sweep(&mut a);
        sweeps += 1;
        off = frob(&a, false);
    }

    let mut diag: Vec<Real> = (0..size).map(|i| a[i][i].to_real(ctx)).collect();
    diag.sort_by(cmp_real);
    let pair_tol = norm.to_real(ctx) * ctx.pow2(-(ctx.bits() as i32) / 4);
    let mut eigenvalues = Vec::with_capacity(n);
    for i in 0..n {
        let gap = (diag[2 * i + 1].clone() - &diag[2 * i]).abs();
        if gap > pair_tol {
            return Err(Error::PairMismatch {
                index: i,
                gap: gap.to_f64(),
            });
        }
        eigenvalues.push(diag[2 * i].clone());
    }
    Ok(OracleResult {
        eigenvalues,
        offdiag_norm: off.to_real(ctx),
        sweeps,
    })
}

/// One cyclic-by-row sweep of Jacobi rotations.
fn sweep<S: JacobiScalar>(a: &mut [Vec<S>]) {
    let size = a.len();
    for p in 0..size {
        for q in p + 1..size {
            let apq = a[p][q].clone();
            if apq.is_zero() {
                continue;
            }
            let one = apq.one_like();
            let two = one.add(&one);
            let theta = a[q][q].sub(&a[p][p]).div(&two.mul(&apq));
            let at = theta.abs();
            // sqrt(theta^2 + 1) without overflowing theta^2
            let root = if at > one {
                at.mul(&one.add(&one.div(&at.mul(&at))).sqrt())
            } else {
                theta.mul(&theta).add(&one).sqrt()
            };
            let mut t = one.div(&at.add(&root));
            if theta < theta.zero_like() {
                t = t.neg();
            }
            let c = one.div(&t.mul(&t).add(&one).sqrt());
            let s = t.mul(&c);
            let tau = s.div(&one.add(&c));
            let shift = t.mul(&apq);
            a[p][p] = a[p][p].sub(&shift);
            a[q][q] = a[q][q].add(&shift);
            a[p][q] = apq.zero_like();
            a[q][p] = apq.zero_like();
            for r in 0..size {
                if r == p || r == q {
                    continue;
                }
                let g = a[r][p].clone();
                let h = a[r][q].clone();
                let new_p = g.sub(&s.mul(&h.add(&g.mul(&tau))));
                let new_q = h.add(&s.mul(&g.sub(&h.mul(&tau))));
                a[r][p] = new_p.clone();
                a[p][r] = new_p;
                a[r][q] = new_q.clone();
                a[q][r] = new_q;
            }
        }
    }
}

/// Extreme eigenvalue of a strong perturbation by bisection on the sign of the
/// characteristic polynomial over `[-4|a|, 0]` (first) or `[4, 4 + 4|a|]` (last).
pub fn extreme_eigenvalues_bisection(
    p: &PerturbationParams,
    which: Extreme,
    ctx: &PrecisionContext,
) -> Result<Real> {
    if p.abs_alpha <= 1 {
        return Err(Error::Regime {
            op: "extreme_eigenvalues_bisection",
            detail: format!("needs |alpha| > 1 ({})", p.describe_thresholds()),
        });
    }
    let q = if ctx.bits() == p.ctx.bits() {
        p.clone()
    } else {
        PerturbationParams::new(p.alpha.clone(), p.n, *ctx)?
    };
    let reach = ctx.convert(&p.abs_alpha) * 4u32;
    let (mut lo, mut hi) = match which {
        Extreme::First => (-reach, ctx.zero()),
        Extreme::Last => (ctx.int(4), reach + 4u32),
    };
    let f_lo = charpoly_cheb(&q, &lo);
    let f_hi = charpoly_cheb(&q, &hi);
    let lo_positive = match f_lo.partial_cmp(&ctx.zero()) {
        Some(Ordering::Greater) => true,
        Some(Ordering::Less) => false,
        _ => return Err(Error::NoBracket { which: which.name() }),
    };
    let hi_positive = f_hi > 0;
    if f_hi.is_zero() || lo_positive == hi_positive {
        return Err(Error::NoBracket { which: which.name() });
    }
    let goal = ctx.pow2(8 - ctx.bits() as i32) * lo.clone().abs().max(&hi.clone().abs()).max(&ctx.one());
    while hi.clone() - &lo > goal {
        let mid = (lo.clone() + &hi) / 2u32;
        if mid <= lo || mid >= hi {
            break;
        }
        let v = charpoly_cheb(&q, &mid);
        if v.is_zero() {
            return Ok(mid);
        }
        if (v > 0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / 2u32)
}
