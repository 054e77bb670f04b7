use proptest::prelude::*;

use toeplitz_corners::charpoly::{charpoly_cheb, charpoly_hyper, charpoly_trig, chebyshev_u};
use toeplitz_corners::matrix::build_matrix;
use toeplitz_corners::oracle::{extreme_eigenvalues_bisection, oracle_eigenvalues};
use toeplitz_corners::precision::{
    arctanh_safe, arctanh_with_complement, tanh_half_n, tanh_half_n_with_complement, ulp,
};
use toeplitz_corners::report::error_table;
use toeplitz_corners::spectrum::{full_spectrum, SolveMethod};
use toeplitz_corners::strong::{band_start, strong_map, PsiFunction, StrongSegment};
use toeplitz_corners::symbol::{g, g_minus, g_plus, Extreme};
use toeplitz_corners::unimodular::theta_unimodular;
use toeplitz_corners::weak::{
    solve_theta_interior, solve_theta_interior_bisection, solve_theta_interior_fixed_point, EtaFunction,
    Parity,
};
use toeplitz_corners::{Complex, PerturbationParams, PrecisionContext, Real, Regime};

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn polar(r: f64, phi: f64, n: usize) -> PerturbationParams {
    PerturbationParams::from_f64(r * phi.cos(), r * phi.sin(), n, ctx()).unwrap()
}

fn angle() -> impl Strategy<Value = f64> {
    0.0..std::f64::consts::TAU
}

fn rel_close(a: &Real, b: &Real, tol: &Real) -> bool {
    let scale = b.clone().abs().max(&Real::with_val(b.prec(), 1));
    (a.clone() - b).abs() <= tol.clone() * scale
}

/// Scale of the three Chebyshev terms at `lambda`, for judging a root.
fn cheb_scale(p: &PerturbationParams, lambda: &Real) -> Real {
    let t = (lambda.clone() - 2u32) / 2u32;
    let u_n = chebyshev_u(p.n, &t, &p.ctx).abs();
    let u_m = chebyshev_u(p.n - 2, &t, &p.ctx).abs();
    u_n + u_m * p.alpha.modulus_sq() + p.alpha.re.clone().abs() * 2u32 + 1u32
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tanh_round_trip(u in -20.0f64..5.64) {
        let c = ctx();
        let x = c.real(2f64.powf(u));
        let (t, comp) = tanh_half_n_with_complement(&x, 2, &c).unwrap();
        let back = arctanh_with_complement(&t, &comp, &c).unwrap();
        prop_assert!((back - &x).abs() <= ulp(&x, &c) * 4u32);
        // arctanh of t alone loses what rounding t destroyed: 2^-bits/(1-t).
        let plain = arctanh_safe(&t, &c).unwrap();
        let cond = c.pow2(-(c.bits() as i32)) / &comp;
        prop_assert!((plain - &x).abs() <= ulp(&x, &c) * 4u32 + cond);
    }

    #[test]
    fn tanh_is_strictly_increasing(u in -20.0f64..4.0, n in 1usize..8) {
        let c = ctx();
        let x = c.real(2f64.powf(u));
        let y = x.clone() * c.real(1.0 + 2f64.powi(-10));
        prop_assert!(tanh_half_n(&x, n, &c).unwrap() < tanh_half_n(&y, n, &c).unwrap());
    }

    #[test]
    fn evaluation_is_deterministic(r in 0.0f64..3.0, phi in angle(), n in 3usize..40) {
        let p = polar(r, phi, n);
        let a = full_spectrum(&p, SolveMethod::Auto).unwrap();
        let b = full_spectrum(&p, SolveMethod::Auto).unwrap();
        prop_assert_eq!(a.eigenvalues, b.eigenvalues);
        let x = p.ctx.real(0.37);
        prop_assert_eq!(tanh_half_n(&x, n, &p.ctx).unwrap(), tanh_half_n(&x, n, &p.ctx).unwrap());
    }

    #[test]
    fn matrix_is_hermitian(r in 0.0f64..5.0, phi in angle(), n in 3usize..30) {
        prop_assert!(build_matrix(&polar(r, phi, n)).unwrap().is_hermitian());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_forms_agree(r in 0.0f64..3.0, phi in angle(), n in 3usize..=64, x in 0.01f64..3.13, h in 0.01f64..3.0) {
        let p = polar(r, phi, n);
        let c = &p.ctx;
        let tol = c.pow2(16 - c.bits() as i32);
        let x = c.real(x);
        // Stay away from the tan(nx/2) pole, where the angle form is ill-conditioned.
        let half = x.clone() * c.int(n as i64) / 2u32;
        if half.cos().abs() > 2f64.powi(-8) {
            let trig = charpoly_trig(&p, &x).unwrap();
            prop_assert!(rel_close(&trig, &charpoly_cheb(&p, &g(&x)), &tol));
        }
        let h = c.real(h);
        let below = charpoly_hyper(&p, &h, Extreme::First).unwrap();
        prop_assert!(rel_close(&below, &charpoly_cheb(&p, &g_minus(&h)), &tol));
        let above = charpoly_hyper(&p, &h, Extreme::Last).unwrap();
        prop_assert!(rel_close(&above, &charpoly_cheb(&p, &g_plus(&h)), &tol));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn charpoly_at_zero_is_signed_determinant(r in 0.0f64..4.0, phi in angle(), n in 3usize..80) {
        let p = polar(r, phi, n);
        let c = &p.ctx;
        let mut det = p.determinant();
        if n % 2 == 1 {
            det = -det;
        }
        prop_assert!(rel_close(&charpoly_cheb(&p, &c.zero()), &det, &c.pow2(16 - c.bits() as i32)));
    }

    #[test]
    fn changes_of_variable_are_monotone(a in 0.0f64..3.1, d in 1e-6f64..0.01) {
        let c = ctx();
        let (x, y) = (c.real(a), c.real(a + d));
        prop_assert!(g(&x) < g(&y));
        prop_assert!(g_minus(&x) > g_minus(&y));
        prop_assert!(g_plus(&x) < g_plus(&y));
    }

    #[test]
    fn weak_eigenvalues_are_localized(r in 0.0f64..0.999, phi in angle(), n in 3usize..=64) {
        let p = polar(r, phi, n);
        let s = full_spectrum(&p, SolveMethod::Auto).unwrap();
        for j in 1..=n {
            let (lo, hi) = s.localization_interval(j);
            let l = &s.eigenvalues[j - 1];
            prop_assert!(lo < *l && *l < hi, "j = {} lambda = {}", j, l.to_f64());
        }
        prop_assert!(s.localization_certified);
    }

    #[test]
    fn grid_points_are_not_eigenvalues(r in 0.0f64..0.999, phi in angle(), n in 3usize..=64) {
        let p = polar(r, phi, n);
        let c = &p.ctx;
        // At g(j pi/n) the value is (-1)^j (1+|a|^2) - 2(-1)^n Re a, at least (1-|a|)^2 in size.
        let floor = (c.one() - &p.abs_alpha).square() / 2u32;
        for j in 1..n {
            let x = c.pi() * c.int(j as i64) / c.int(n as i64);
            prop_assert!(charpoly_cheb(&p, &g(&x)).abs() > floor);
        }
    }

    #[test]
    fn eta_derivative_bound(r in 0.0f64..3.0, phi in angle()) {
        prop_assume!((r - 1.0).abs() >= 0.05);
        let p = polar(r, phi, 10);
        let c = &p.ctx;
        let bound = (p.abs_alpha.clone() + 1u32) * 4u32 / (p.abs_alpha.clone() - 1u32).abs();
        for parity in [Parity::Odd, Parity::Even] {
            let e = EtaFunction::new(&p, parity).unwrap();
            for i in 1..1000 {
                let x = c.pi() * c.int(i) / c.int(1000);
                prop_assert!(e.derivative(&x).abs() <= bound);
            }
        }
    }

    #[test]
    fn identities_hold_for_exact_spectra(r in 0.0f64..3.0, phi in angle(), n in 3usize..=50) {
        let p = polar(r, phi, n);
        let s = full_spectrum(&p, SolveMethod::Auto).unwrap();
        let id = s.identities();
        prop_assert!(id.holds(), "trace {} det {}", id.trace_error.to_f64(), id.determinant_error.to_f64());
        let c = &p.ctx;
        let sum = s.eigenvalues.iter().fold(c.zero(), |a, v| a + v);
        prop_assert!((sum - c.int(2 * n as i64)).abs() <= c.pow2(24 - c.bits() as i32) * c.int(n as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn fixed_point_matches_bisection(u in 0.0f64..0.95, phi in angle(), k in 0usize..3) {
        let n = [8usize, 16, 32][k];
        // keep n > N1 so the fixed point is a contraction
        let r = u * (n as f64 - 4.0) / (n as f64 + 4.0);
        let p = polar(r, phi, n);
        let tol = p.ctx.real(1e-30);
        for j in 1..=n {
            let a = solve_theta_interior_fixed_point(&p, j).unwrap();
            let b = solve_theta_interior_bisection(&p, j).unwrap();
            prop_assert!((a.theta - b.theta).abs() < tol, "j = {}", j);
        }
    }

    #[test]
    fn weak_limit_meets_unimodular_closed_form(phi in 0.05f64..3.09, n in 3usize..16) {
        let below = polar(1.0 - 1e-8, phi, n);
        let c = ctx();
        let unit = Complex::new(c.real(phi).cos(), c.real(phi).sin());
        let on = PerturbationParams::new(unit, n, c).unwrap();
        prop_assert_eq!(on.regime, Regime::UnimodularGeneric);
        for j in 1..=n {
            let a = solve_theta_interior(&below, j).unwrap().theta;
            let b = theta_unimodular(&on, j).unwrap();
            prop_assert!((a - b).abs() < 1e-6, "j = {}", j);
        }
    }

    #[test]
    fn unimodular_matches_oracle(phi in 0.01f64..3.13, sign in prop::bool::ANY, n in 3usize..=64) {
        let phi = if sign { phi } else { -phi };
        let c = ctx();
        let p = PerturbationParams::new(Complex::new(c.real(phi).cos(), c.real(phi).sin()), n, c).unwrap();
        let s = full_spectrum(&p, SolveMethod::Auto).unwrap();
        let o = oracle_eigenvalues(&p, &PrecisionContext::fast()).unwrap();
        for (a, b) in s.eigenvalues.iter().zip(&o.eigenvalues) {
            prop_assert!((a.to_f64() - b.to_f64()).abs() < 1e-12);
        }
        for w in s.eigenvalues.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn psi_band_inequalities(a in 1.0001f64..10.0, phi in angle()) {
        let p = polar(a, phi, 64);
        let c = &p.ctx;
        let ln_a = p.abs_alpha.clone().ln();
        let lo = (ln_a.clone() / 2u32).tanh();
        let hi = (ln_a * 3u32 / 2u32).tanh();
        let floor = c.int(2) / (p.abs_alpha.clone() + 1u32).square() / (p.abs_alpha.clone() + 1u32);
        let start = band_start(&p);
        for which in [Extreme::First, Extreme::Last] {
            let f = PsiFunction::new(&p, which).unwrap();
            for k in 0..100 {
                let t = start.clone() + (c.one() - &start) * c.int(k) / c.int(99);
                let v = f.eval(&t);
                prop_assert!(f.derivative(&t).abs() <= 1);
                prop_assert!(lo <= v && v <= hi);
                prop_assert!(c.one() - v.square() >= floor);
            }
        }
    }

    #[test]
    fn strong_map_keeps_segment(a in 1.05f64..6.0, phi in angle(), extra in 1usize..40) {
        let base = polar(a, phi, 3);
        let n = base.n2_threshold.as_ref().unwrap().to_f64().ceil() as usize + extra;
        let p = base.with_n(n.max(3)).unwrap();
        prop_assume!(p.exceeds_n2());
        let seg = StrongSegment::new(&p).unwrap();
        let c = &p.ctx;
        for which in [Extreme::First, Extreme::Last] {
            for k in 0..=10 {
                let x = seg.lower.clone() + (seg.upper.clone() - &seg.lower) * c.int(k) / c.int(10);
                prop_assert!(seg.contains(&strong_map(&p, which, &x).unwrap()));
            }
        }
    }

    #[test]
    fn solved_extremes_are_charpoly_roots(a in 1.05f64..6.0, phi in angle(), extra in 1usize..40) {
        let base = polar(a, phi, 3);
        let n = base.n2_threshold.as_ref().unwrap().to_f64().ceil() as usize + extra;
        let p = base.with_n(n.max(3)).unwrap();
        prop_assume!(p.exceeds_n2());
        let s = full_spectrum(&p, SolveMethod::FixedPoint).unwrap();
        let c = &p.ctx;
        for j in [1, n] {
            let l = &s.eigenvalues[j - 1];
            let v = charpoly_cheb(&p, l).abs();
            prop_assert!(v <= cheb_scale(&p, l) * c.pow2(24 - c.bits() as i32), "j = {}", j);
        }
        // 0 and 4 are never eigenvalues past N1
        if p.exceeds_n1() {
            prop_assert!(!charpoly_cheb(&p, &c.zero()).is_zero());
            prop_assert!(!charpoly_cheb(&p, &c.int(4)).is_zero());
        }
    }

    #[test]
    fn jacobi_agrees_with_bisection_on_extremes(a in 1.05f64..3.0, phi in angle(), big in prop::bool::ANY) {
        let n = if big { 64 } else { 32 };
        let fast = PrecisionContext::fast();
        let p = PerturbationParams::from_f64(a * phi.cos(), a * phi.sin(), n, fast).unwrap();
        let o = oracle_eigenvalues(&p, &fast).unwrap();
        let tol = 2f64.powi(-13);
        match extreme_eigenvalues_bisection(&p, Extreme::First, &fast) {
            Ok(v) => prop_assert!((v.to_f64() - o.eigenvalues[0].to_f64()).abs() < tol),
            Err(e) => prop_assert!(o.eigenvalues[0] >= 0, "{}", e),
        }
        match extreme_eigenvalues_bisection(&p, Extreme::Last, &fast) {
            Ok(v) => prop_assert!((v.to_f64() - o.eigenvalues[n - 1].to_f64()).abs() < tol),
            Err(e) => prop_assert!(o.eigenvalues[n - 1] <= 4, "{}", e),
        }
        let sum: f64 = o.eigenvalues.iter().map(|v| v.to_f64()).sum();
        prop_assert!((sum - 2.0 * n as f64).abs() <= 2f64.powf(-26.5) * n as f64);
        let again = oracle_eigenvalues(&p, &fast).unwrap();
        prop_assert_eq!(o.eigenvalues, again.eigenvalues);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn asymptotic_error_decays_like_n_cubed(r in 0.0f64..0.6, phi in angle()) {
        let c = PrecisionContext::new(128).unwrap();
        let alpha = Complex::from_f64(&c, r * phi.cos(), r * phi.sin());
        let rows = error_table(&alpha, &[128, 256, 512], c).unwrap();
        for w in rows.windows(2) {
            let ratio = (w[0].r_inf.clone() / &w[1].r_inf).to_f64();
            prop_assert!((6.0..=10.0).contains(&ratio), "n = {} ratio {}", w[0].n, ratio);
        }
    }
}

#[test]
fn circulant_double_eigenvectors_are_independent() {
    for alpha in [1.0, -1.0] {
        for n in 3..=16 {
            let p = PerturbationParams::from_f64(alpha, 0.0, n, ctx()).unwrap();
            let s = full_spectrum(&p, SolveMethod::Auto).unwrap();
            let pairs = s.eigenpairs().unwrap();
            let mut j = 0;
            while j < n {
                if s.multiplicities[j] == 2 {
                    let u = &pairs[j].as_ref().unwrap().vector;
                    let v = &pairs[j + 1].as_ref().unwrap().vector;
                    let c = &p.ctx;
                    let (mut uu, mut vv) = (c.zero(), c.zero());
                    let mut uv = Complex::zero(c);
                    for (a, b) in u.iter().zip(v) {
                        uu += a.modulus_sq();
                        vv += b.modulus_sq();
                        uv = uv.add(&a.conj().mul(b));
                    }
                    let gram = uu.clone() * &vv - uv.modulus_sq();
                    assert!(gram > uu * vv * 1e-6, "alpha = {alpha} n = {n} j = {}", j + 1);
                    j += 2;
                } else {
                    j += 1;
                }
            }
        }
    }
}
