//! Explicit spectra for `|alpha| = 1`.
//!
//! For `alpha != +-1` the interior equation has a constant right-hand side. For
//! `alpha = 1` (circulant) and `alpha = -1` (skew-circulant) most eigenvalues are
//! double, each carried by a sine and a cosine vector sharing one `theta`.

use crate::error::{Error, Result};
use crate::params::{PerturbationParams, Regime};
use crate::precision::{PrecisionContext, Real};
use crate::symbol::g;

/// `alpha = 1` or `alpha = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CirculantSign {
    Plus,
    Minus,
}

impl CirculantSign {
    pub fn from_regime(r: Regime) -> Option<Self> {
        match r {
            Regime::CirculantPlus => Some(CirculantSign::Plus),
            Regime::CirculantMinus => Some(CirculantSign::Minus),
            _ => None,
        }
    }
}

/// Which of the two trigonometric vector families an index uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VectorKind {
    Sine,
    Cosine,
}

/// `theta = j pi/n - (2/n) arctan(l^{(-1)^j})`.
pub fn theta_unimodular(p: &PerturbationParams, j: usize) -> Result<Real> {
    if p.regime != Regime::UnimodularGeneric {
        return Err(Error::Regime {
            op: "theta_unimodular",
            detail: format!("needs |alpha| = 1, alpha != +-1 (got {})", p.regime),
        });
    }
    if !(1..=p.n).contains(&j) {
        return Err(Error::InvalidParams(format!("index j = {j} outside 1..={}", p.n)));
    }
    let ctx = &p.ctx;
    let l = p.l_alpha()?.clone();
    let w = if j.is_multiple_of(2) { l } else { l.recip() };
    let n = ctx.int(p.n as i64);
    Ok((ctx.pi() * ctx.int(j as i64) - w.atan() * 2u32) / n)
}

/// Vector family of index `j`; at equal `theta` the sine index comes first.
pub fn circulant_kind(sign: CirculantSign, j: usize) -> VectorKind {
    match (sign, j.is_multiple_of(2)) {
        (CirculantSign::Plus, true) | (CirculantSign::Minus, false) => VectorKind::Sine,
        _ => VectorKind::Cosine,
    }
}

/// Multiple of `pi/n` in `theta_j`: `2q` for `alpha = 1`, `2q - 1` for `alpha = -1`.
fn circulant_multiple(sign: CirculantSign, j: usize) -> usize {
    match sign {
        // j = 2q and j = 2q + 1 share 2q
        CirculantSign::Plus => j - (j % 2),
        // j = 2q - 1 and j = 2q share 2q - 1
        CirculantSign::Minus => j - (1 - j % 2),
    }
}

/// `alpha = 1`: `(j - (1-(-1)^j)/2) pi/n`; `alpha = -1`: `(j - (1+(-1)^j)/2) pi/n`.
pub fn theta_circulant(sign: CirculantSign, n: usize, j: usize, ctx: &PrecisionContext) -> Real {
    ctx.pi() * ctx.int(circulant_multiple(sign, j) as i64) / ctx.int(n as i64)
}

/// `sin(k m pi/n)` or `cos(k m pi/n)` for `k = 1..n`, from the formula as written.
///
/// Fails with `ZeroVector` when the sine family collapses (`theta = pi`).
pub fn eigvec_circulant(
    sign: CirculantSign,
    n: usize,
    j: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<Real>> {
    let theta = theta_circulant(sign, n, j, ctx);
    let v = trig_vector(circulant_kind(sign, j), n, &theta, ctx);
    let threshold = ctx.pow2(8 - ctx.bits() as i32);
    if v.iter().all(|c| c.clone().abs() < threshold) {
        return Err(Error::ZeroVector { j });
    }
    Ok(v)
}

/// As [`eigvec_circulant`], but replaces a collapsed sine vector by the cosine one.
pub fn eigvec_circulant_checked(
    sign: CirculantSign,
    n: usize,
    j: usize,
    ctx: &PrecisionContext,
) -> Vec<Real> {
    match eigvec_circulant(sign, n, j, ctx) {
        Ok(v) => v,
        Err(_) => trig_vector(VectorKind::Cosine, n, &theta_circulant(sign, n, j, ctx), ctx),
    }
}

fn trig_vector(kind: VectorKind, n: usize, theta: &Real, ctx: &PrecisionContext) -> Vec<Real> {
    (1..=n)
        .map(|k| {
            let arg = theta.clone() * ctx.int(k as i64);
            match kind {
                VectorKind::Sine => arg.sin(),
                VectorKind::Cosine => arg.cos(),
            }
        })
        .collect()
}

/// `theta`, eigenvalue and multiplicity for every index of a unimodular `alpha`.
#[derive(Clone, Debug)]
pub struct ClosedFormSpectrum {
    pub thetas: Vec<Real>,
    pub eigenvalues: Vec<Real>,
    /// Multiplicity of the eigenvalue at each index.
    pub multiplicities: Vec<usize>,
    /// Distinct eigenvalues in ascending order with their multiplicities.
    pub multiplicity_pattern: Vec<(Real, usize)>,
}

pub fn closed_form_spectrum(p: &PerturbationParams) -> Result<ClosedFormSpectrum> {
    let n = p.n;
    let (thetas, multiplicities): (Vec<Real>, Vec<usize>) = match CirculantSign::from_regime(p.regime)
    {
        Some(sign) => (1..=n)
            .map(|j| {
                let m = circulant_multiple(sign, j);
                let mult = if m == 0 || m == n { 1 } else { 2 };
                (theta_circulant(sign, n, j, &p.ctx), mult)
            })
            .unzip(),
        None => {
            let thetas = (1..=n)
                .map(|j| theta_unimodular(p, j))
                .collect::<Result<Vec<_>>>()?;
            (thetas, vec![1; n])
        }
    };
    let eigenvalues: Vec<Real> = thetas.iter().map(g).collect();
    let mut multiplicity_pattern = Vec::new();
    let mut j = 0;
    while j < n {
        multiplicity_pattern.push((eigenvalues[j].clone(), multiplicities[j]));
        j += multiplicities[j];
    }
    Ok(ClosedFormSpectrum {
        thetas,
        eigenvalues,
        multiplicities,
        multiplicity_pattern,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::apply;
    use crate::precision::Complex;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn residual(p: &PerturbationParams, v: &[Real], lambda: &Real) -> f64 {
        let vc: Vec<Complex> = v.iter().map(|x| Complex::from_real(x.clone())).collect();
        let av = apply(p, &vc);
        let mut num = p.ctx.zero();
        let mut den = p.ctx.zero();
        for (a, x) in av.iter().zip(&vc) {
            num += a.sub(&x.scale(lambda)).modulus_sq();
            den += x.modulus_sq();
        }
        (num / den).sqrt().to_f64()
    }

    #[test]
    fn alpha_i_gives_midpoints() {
        let c = ctx();
        let p = PerturbationParams::from_f64(0.0, 1.0, 4, c).unwrap();
        for j in 1..=4 {
            let th = theta_unimodular(&p, j).unwrap();
            let mid = c.pi() * (2 * j as u32 - 1) / 8u32;
            assert!((th - mid).abs() < c.pow2(-250));
        }
    }

    #[test]
    fn unimodular_thetas_increase_inside_intervals() {
        let c = ctx();
        let alpha = Complex::new(c.real(0.3).cos(), c.real(0.3).sin());
        let p = PerturbationParams::new(alpha, 9, c).unwrap();
        let s = closed_form_spectrum(&p).unwrap();
        for (j, th) in s.thetas.iter().enumerate() {
            let (lo, hi) = crate::weak::interval(&p, j + 1);
            assert!(*th > lo && *th < hi);
        }
        assert!(s.eigenvalues.windows(2).all(|w| w[0] < w[1]));
        assert!(s.multiplicities.iter().all(|&m| m == 1));
    }

    #[test]
    fn circulant_plus_n6() {
        let c = ctx();
        let p = PerturbationParams::from_f64(1.0, 0.0, 6, c).unwrap();
        let s = closed_form_spectrum(&p).unwrap();
        let expect = [0.0, 1.0, 1.0, 3.0, 3.0, 4.0];
        for (l, e) in s.eigenvalues.iter().zip(expect) {
            assert!((l.to_f64() - e).abs() < 1e-60);
        }
        assert_eq!(s.multiplicities, vec![1, 2, 2, 2, 2, 1]);
        let pattern: Vec<usize> = s.multiplicity_pattern.iter().map(|x| x.1).collect();
        assert_eq!(pattern, vec![1, 2, 2, 1]);
        assert!(theta_circulant(CirculantSign::Plus, 6, 1, &c).is_zero());
    }

    #[test]
    fn circulant_minus_n4() {
        let c = ctx();
        let p = PerturbationParams::from_f64(-1.0, 0.0, 4, c).unwrap();
        let s = closed_form_spectrum(&p).unwrap();
        let a = g(&(c.pi() / 4u32));
        let b = g(&(c.pi() * 3u32 / 4u32));
        for (l, e) in s.eigenvalues.iter().zip([&a, &a, &b, &b]) {
            assert!((l.clone() - e).abs() < c.pow2(-250));
        }
        let pattern: Vec<usize> = s.multiplicity_pattern.iter().map(|x| x.1).collect();
        assert_eq!(pattern, vec![2, 2]);
    }

    #[test]
    fn sine_vector_for_plus_n6_j2() {
        let c = ctx();
        let v = eigvec_circulant(CirculantSign::Plus, 6, 2, &c).unwrap();
        for (k, x) in v.iter().enumerate() {
            let want = (c.pi() * 2u32 * (k as u32 + 1) / 6u32).sin();
            assert!((x.clone() - want).abs() < c.pow2(-250));
        }
        let ones = eigvec_circulant(CirculantSign::Plus, 6, 1, &c).unwrap();
        assert!(ones.iter().all(|x| *x == 1));
    }

    #[test]
    fn collapsed_sine_vectors() {
        let c = ctx();
        assert!(matches!(
            eigvec_circulant(CirculantSign::Plus, 6, 6, &c),
            Err(Error::ZeroVector { j: 6 })
        ));
        assert!(matches!(
            eigvec_circulant(CirculantSign::Minus, 7, 7, &c),
            Err(Error::ZeroVector { j: 7 })
        ));
        let alt = eigvec_circulant_checked(CirculantSign::Minus, 7, 7, &c);
        for (k, x) in alt.iter().enumerate() {
            let want = if k % 2 == 0 { -1.0 } else { 1.0 };
            assert!((x.to_f64() - want).abs() < 1e-60);
        }
    }

    #[test]
    fn circulant_vectors_are_eigenvectors() {
        let c = ctx();
        for (sign, re) in [(CirculantSign::Plus, 1.0), (CirculantSign::Minus, -1.0)] {
            for n in 3..=12 {
                let p = PerturbationParams::from_f64(re, 0.0, n, c).unwrap();
                for j in 1..=n {
                    let v = eigvec_circulant_checked(sign, n, j, &c);
                    let lam = g(&theta_circulant(sign, n, j, &c));
                    assert!(residual(&p, &v, &lam) < 1e-70, "{sign:?} n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn double_eigenvalue_vectors_are_independent() {
        let c = ctx();
        for (sign, re) in [(CirculantSign::Plus, 1.0), (CirculantSign::Minus, -1.0)] {
            for n in 3..=12 {
                let p = PerturbationParams::from_f64(re, 0.0, n, c).unwrap();
                let s = closed_form_spectrum(&p).unwrap();
                let mut j = 0;
                while j < n {
                    if s.multiplicities[j] == 2 {
                        let a = eigvec_circulant_checked(sign, n, j + 1, &c);
                        let b = eigvec_circulant_checked(sign, n, j + 2, &c);
                        assert_eq!(circulant_kind(sign, j + 1), VectorKind::Sine);
                        let dot = |x: &[Real], y: &[Real]| {
                            x.iter().zip(y).fold(c.zero(), |acc, (u, v)| acc + u.clone() * v)
                        };
                        let gram = dot(&a, &a) * dot(&b, &b) - dot(&a, &b).square();
                        assert!(gram > 0.1);
                        j += 2;
                    } else {
                        j += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_wrong_regime() {
        let p = PerturbationParams::from_f64(0.5, 0.0, 5, ctx()).unwrap();
        assert!(theta_unimodular(&p, 1).is_err());
        assert!(closed_form_spectrum(&p).is_err());
    }
}
