//! Characteristic polynomial `det(lambda I - A(alpha, n))` in three equivalent forms.
//!
//! The Chebyshev form is valid everywhere and is the reference. The trigonometric
//! form parametrizes `lambda = g(x)` on `(0, 4)` and the hyperbolic forms cover the
//! two half-lines outside it.

use crate::error::{Error, Result};
use crate::params::PerturbationParams;
use crate::precision::{tanh_half_n_with_complement, Complex, PrecisionContext, Real};
use crate::symbol::Extreme;

/// Chebyshev polynomial of the second kind `U_m(t)`.
///
/// Three-term recurrence on `|t| <= 1 + 2^-20`, `sinh((m+1)y)/sinh(y)` with
/// `y = acosh|t|` beyond that.
pub fn chebyshev_u(m: usize, t: &Real, ctx: &PrecisionContext) -> Real {
    let t = ctx.convert(t);
    let abs_t = t.clone().abs();
    if abs_t <= ctx.one() + ctx.pow2(-20) {
        let mut prev = ctx.one();
        if m == 0 {
            return prev;
        }
        let two_t = t * 2u32;
        let mut cur = two_t.clone();
        for _ in 1..m {
            let next = two_t.clone() * &cur - &prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    let y = abs_t.acosh();
    let v = (y.clone() * ctx.int(m as i64 + 1)).sinh() / y.sinh();
    if t < 0 && m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `U_n(t) - |alpha|^2 U_{n-2}(t) - 2(-1)^n Re(alpha)` with `t = (lambda - 2)/2`.
pub fn charpoly_cheb(p: &PerturbationParams, lambda: &Real) -> Real {
    let ctx = &p.ctx;
    let t = (ctx.convert(lambda) - 2u32) / 2u32;
    let un = chebyshev_u(p.n, &t, ctx);
    let un2 = chebyshev_u(p.n - 2, &t, ctx);
    let corner = p.alpha.re.clone() * 2u32 * p.parity_sign();
    un - p.alpha.modulus_sq() * un2 - corner
}

/// Value at `lambda = g(x)`, `x in (0, pi)`:
/// `(-1)^{n+1} |alpha+1|^2 (T^2 - 2k cot(x) T - l^2) / (1 + T^2)` with `T = tan(nx/2)`.
pub fn charpoly_trig(p: &PerturbationParams, x: &Real) -> Result<Real> {
    let ctx = &p.ctx;
    let k = p.k_alpha()?;
    let l = p.l_alpha()?;
    let (sin_x, cos_x) = ctx.convert(x).sin_cos(ctx.zero());
    if sin_x.is_zero() || !sin_x.is_finite() {
        return Err(Error::Domain {
            op: "charpoly_trig",
            detail: "x must lie strictly inside (0, pi)".into(),
        });
    }
    let half = ctx.convert(x) * ctx.int(p.n as i64) / 2u32;
    let (s, c) = half.sin_cos(ctx.zero());
    if c.clone().abs() < ctx.pow2(-(ctx.bits() as i32) / 2) {
        return Err(Error::Pole {
            op: "charpoly_trig",
            x: x.to_f64(),
        });
    }
    let tt = s / c;
    let cot = cos_x / sin_x;
    let num = tt.clone().square() - k.clone() * 2u32 * cot * &tt - l.clone().square();
    let plus_one = p.alpha.add(&Complex::one(ctx)).modulus_sq();
    let v = plus_one * num / (tt.square() + 1u32);
    Ok(if p.n.is_multiple_of(2) { -v } else { v })
}

/// Value at `lambda = g_-(x)` (below) or `g_+(x)` (above), `x > 0`.
///
/// Below: `(-1)^n (|a+1|^2 tau^2 - 2(|a|^2-1) tau coth(x) + |a-1|^2) / (1 - tau^2)`.
/// Above: the same without the sign and with `|a +- sigma|`, `sigma = (-1)^n`.
pub fn charpoly_hyper(p: &PerturbationParams, x: &Real, which: Extreme) -> Result<Real> {
    let ctx = &p.ctx;
    let (tau, comp) = tanh_half_n_with_complement(x, p.n, ctx)?;
    let one_minus_tau_sq = comp.clone() * (ctx.int(2) - &comp);
    let sigma = Complex::from_real(ctx.int(which.sigma(p.n) as i64));
    let plus = p.alpha.add(&sigma).modulus_sq();
    let minus = p.alpha.sub(&sigma).modulus_sq();
    let coth = ctx.one() / ctx.convert(x).tanh();
    let num = plus * tau.clone().square()
        - (p.alpha.modulus_sq() - 1u32) * 2u32 * tau * coth
        + minus;
    let v = num / one_minus_tau_sq;
    Ok(match which {
        Extreme::First if p.n % 2 == 1 => -v,
        _ => v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::build_matrix;
    use crate::symbol::{g, g_minus, g_plus};

    /// det(lambda I - A) by complex Gaussian elimination with partial pivoting.
    fn dense_det(p: &PerturbationParams, lambda: &Real) -> Real {
        let ctx = &p.ctx;
        let a = build_matrix(p).unwrap();
        let n = p.n;
        let mut m: Vec<Vec<Complex>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let neg = Complex::zero(ctx).sub(a.get(i, j));
                        if i == j {
                            neg.add(&Complex::from_real(ctx.convert(lambda)))
                        } else {
                            neg
                        }
                    })
                    .collect()
            })
            .collect();
        let mut det = Complex::one(ctx);
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&x, &y| {
                    m[x][col]
                        .modulus_sq()
                        .partial_cmp(&m[y][col].modulus_sq())
                        .unwrap()
                })
                .unwrap();
            if piv != col {
                m.swap(piv, col);
                det = Complex::zero(ctx).sub(&det);
            }
            let d = m[col][col].clone();
            det = det.mul(&d);
            for r in col + 1..n {
                let f = m[r][col].div(&d);
                for c in col..n {
                    let t = f.mul(&m[col][c]);
                    m[r][c] = m[r][c].sub(&t);
                }
            }
        }
        det.re
    }

    fn close(a: &Real, b: &Real, bits: i32) -> bool {
        let scale = a.clone().abs().max(&b.clone().abs()).max(&Real::with_val(a.prec(), 1));
        (a.clone() - b).abs() / scale < Real::with_val(a.prec(), 1) >> bits
    }

    #[test]
    fn chebyshev_small_degrees() {
        let ctx = PrecisionContext::default();
        let t = ctx.real(0.3);
        assert_eq!(chebyshev_u(0, &t, &ctx), 1);
        assert!(close(&chebyshev_u(1, &t, &ctx), &ctx.real(0.6), 250));
        // U_3(t) = 8t^3 - 4t
        let u3 = t.clone().square() * &t * 8u32 - t.clone() * 4u32;
        assert!(close(&chebyshev_u(3, &t, &ctx), &u3, 248));
    }

    #[test]
    fn chebyshev_branches_agree_across_switch() {
        let ctx = PrecisionContext::default();
        for &tv in &[1.5, -1.5, 3.0, -7.25] {
            let t = ctx.real(tv);
            for m in [0usize, 1, 2, 5, 12] {
                // explicit recurrence as the reference
                let mut prev = ctx.one();
                let mut cur = t.clone() * 2u32;
                let reference = if m == 0 {
                    prev.clone()
                } else {
                    for _ in 1..m {
                        let next = t.clone() * 2u32 * &cur - &prev;
                        prev = cur;
                        cur = next;
                    }
                    cur
                };
                assert!(close(&chebyshev_u(m, &t, &ctx), &reference, 240), "t={tv} m={m}");
            }
        }
    }

    #[test]
    fn chebyshev_at_cosine_points() {
        // U_m(cos x) = sin((m+1)x)/sin x
        let ctx = PrecisionContext::default();
        let x = ctx.real(0.7);
        let v = chebyshev_u(9, &x.clone().cos(), &ctx);
        let r = (x.clone() * 10u32).sin() / x.sin();
        assert!(close(&v, &r, 240));
    }

    #[test]
    fn cheb_form_matches_dense_determinant() {
        let ctx = PrecisionContext::default();
        for &(re, im, n) in &[(0.7, 0.6, 5usize), (2.0, 1.0, 6), (-0.3, 0.5, 7), (1.0, 0.0, 4), (0.0, -1.3, 8)] {
            let p = PerturbationParams::from_f64(re, im, n, ctx).unwrap();
            for &lv in &[-1.7, 0.4, 2.2, 3.9, 5.5] {
                let lam = ctx.real(lv);
                assert!(close(&charpoly_cheb(&p, &lam), &dense_det(&p, &lam), 230), "{re} {im} {n} {lv}");
            }
        }
    }

    #[test]
    fn trig_form_matches_cheb() {
        let ctx = PrecisionContext::default();
        for &(re, im, n) in &[(0.7, 0.6, 5usize), (2.0, 1.0, 6), (-0.3, 0.5, 9), (0.0, 1.0, 10)] {
            let p = PerturbationParams::from_f64(re, im, n, ctx).unwrap();
            for &xv in &[0.1, 0.9, 1.3, 2.5, 3.0] {
                let x = ctx.real(xv);
                let t = charpoly_trig(&p, &x).unwrap();
                assert!(close(&t, &charpoly_cheb(&p, &g(&x)), 220), "{re} {im} {n} {xv}");
            }
        }
    }

    #[test]
    fn trig_form_reports_pole() {
        let ctx = PrecisionContext::default();
        let p = PerturbationParams::from_f64(0.5, 0.0, 4, ctx).unwrap();
        // n x / 2 = pi / 2
        let x = ctx.pi() / 4u32;
        assert!(matches!(charpoly_trig(&p, &x), Err(Error::Pole { .. })));
    }

    #[test]
    fn hyper_forms_match_cheb() {
        let ctx = PrecisionContext::default();
        for &(re, im, n) in &[(2.0, 1.0, 6usize), (2.0, 1.0, 7), (0.7, 0.6, 5), (-3.0, 0.2, 10), (0.8, -0.7, 11)] {
            let p = PerturbationParams::from_f64(re, im, n, ctx).unwrap();
            for &xv in &[0.05, 0.4, 1.1, 2.0] {
                let x = ctx.real(xv);
                let below = charpoly_hyper(&p, &x, Extreme::First).unwrap();
                assert!(close(&below, &charpoly_cheb(&p, &g_minus(&x)), 220), "below {re} {im} {n} {xv}");
                let above = charpoly_hyper(&p, &x, Extreme::Last).unwrap();
                assert!(close(&above, &charpoly_cheb(&p, &g_plus(&x)), 220), "above {re} {im} {n} {xv}");
            }
        }
    }
}
