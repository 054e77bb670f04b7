//! Dense materialization of `A(alpha, n)`, used only by the oracle and residual checks.

use crate::error::{Error, Result};
use crate::params::PerturbationParams;
use crate::precision::{Complex, PrecisionContext, Real};

/// Largest order for which a dense matrix is ever built.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Clone, Debug)]
pub struct DenseMatrix {
    n: usize,
    entries: Vec<Complex>,
}

impl DenseMatrix {
    pub fn zeros(n: usize, ctx: &PrecisionContext) -> Self {
        Self {
            n,
            entries: vec![Complex::zero(ctx); n * n],
        }
    }

    /// Builds a real diagonal matrix.
    pub fn diagonal(values: &[Real], ctx: &PrecisionContext) -> Self {
        let mut m = Self::zeros(values.len(), ctx);
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, Complex::from_real(ctx.convert(v)));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParams("matrix rows must be square".into()));
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex) {
        self.entries[i * self.n + j] = v;
    }

    pub fn trace(&self) -> Complex {
        (0..self.n).fold(Complex::from_real(Real::with_val(self.get(0, 0).re.prec(), 0)), |acc, i| {
            acc.add(self.get(i, i))
        })
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }

    pub fn frobenius_norm(&self) -> Real {
        let mut acc = Real::with_val(self.get(0, 0).re.prec(), 0);
        for e in &self.entries {
            acc += e.modulus_sq();
        }
        acc.sqrt()
    }
}

/// `A(alpha, n)`: 2 on the diagonal, -1 next to it, `-alpha` at `(n,1)` and
/// `-conj(alpha)` at `(1,n)`.
pub fn build_matrix(p: &PerturbationParams) -> Result<DenseMatrix> {
    let n = p.n;
    if n > DENSE_LIMIT {
        return Err(Error::OracleLimit {
            n,
            limit: DENSE_LIMIT,
        });
    }
    let ctx = &p.ctx;
    let mut m = DenseMatrix::zeros(n, ctx);
    let two = Complex::from_real(ctx.int(2));
    let minus_one = Complex::from_real(ctx.int(-1));
    for i in 0..n {
        m.set(i, i, two.clone());
        if i + 1 < n {
            m.set(i, i + 1, minus_one.clone());
            m.set(i + 1, i, minus_one.clone());
        }
    }
    let neg_alpha = Complex::new(-p.alpha.re.clone(), -p.alpha.im.clone());
    m.set(0, n - 1, neg_alpha.conj());
    m.set(n - 1, 0, neg_alpha);
    Ok(m)
}

/// `A v` without materializing the matrix (O(n)).
pub fn apply(p: &PerturbationParams, v: &[Complex]) -> Vec<Complex> {
    let n = p.n;
    debug_assert_eq!(v.len(), n);
    let conj_alpha = p.alpha.conj();
    (0..n)
        .map(|i| {
            let two = v[i].scale(&p.ctx.int(2));
            let mut acc = two;
            if i > 0 {
                acc = acc.sub(&v[i - 1]);
            }
            if i + 1 < n {
                acc = acc.sub(&v[i + 1]);
            }
            if i == 0 {
                acc = acc.sub(&conj_alpha.mul(&v[n - 1]));
            }
            if i == n - 1 {
                acc = acc.sub(&p.alpha.mul(&v[0]));
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_alpha_is_plain_tridiagonal() {
        let ctx = PrecisionContext::default();
        let p = PerturbationParams::from_f64(0.0, 0.0, 3, ctx).unwrap();
        let m = build_matrix(&p).unwrap();
        let expect = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j).re, expect[i][j]);
                assert!(m.get(i, j).im.is_zero());
            }
        }
    }

    #[test]
    fn corners_for_two_plus_i() {
        let ctx = PrecisionContext::default();
        let p = PerturbationParams::from_f64(2.0, 1.0, 6, ctx).unwrap();
        let m = build_matrix(&p).unwrap();
        assert_eq!(*m.get(5, 0), Complex::from_f64(&ctx, -2.0, -1.0));
        assert_eq!(*m.get(0, 5), Complex::from_f64(&ctx, -2.0, 1.0));
        assert_eq!(m.get(2, 3).re, -1);
        assert!(m.get(1, 4).is_zero());
        assert!(m.is_hermitian());
        assert_eq!(m.trace().re, 12);
    }

    #[test]
    fn apply_matches_dense_product() {
        let ctx = PrecisionContext::default();
        let p = PerturbationParams::from_f64(0.3, -1.7, 7, ctx).unwrap();
        let m = build_matrix(&p).unwrap();
        let v: Vec<Complex> = (0..7)
            .map(|k| Complex::from_f64(&ctx, (k as f64).sin(), (k as f64 * 0.3).cos()))
            .collect();
        let fast = apply(&p, &v);
        for i in 0..7 {
            let mut acc = Complex::zero(&ctx);
            for j in 0..7 {
                acc = acc.add(&m.get(i, j).mul(&v[j]));
            }
            assert!(acc.sub(&fast[i]).modulus() < ctx.pow2(-240));
        }
    }

    #[test]
    fn refuses_huge_dense_matrix() {
        let ctx = PrecisionContext::fast();
        let p = PerturbationParams::from_f64(0.5, 0.0, DENSE_LIMIT + 1, ctx).unwrap();
        assert!(matches!(build_matrix(&p), Err(Error::OracleLimit { .. })));
    }
}
