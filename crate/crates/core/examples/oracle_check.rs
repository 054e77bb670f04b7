//! Solver against the Jacobi oracle for random alpha with |alpha| <= 3.
//!
//! cargo run --release --example oracle_check [trials] [seed]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toeplitz_corners::oracle::oracle_eigenvalues;
use toeplitz_corners::spectrum::{full_spectrum, SolveMethod};
use toeplitz_corners::{PerturbationParams, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = PrecisionContext::default();
    let fast = PrecisionContext::fast();
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let r = 3.0 * rng.gen::<f64>();
        let phi = std::f64::consts::TAU * rng.gen::<f64>();
        let n = [6, 17, 32, 50][rng.gen_range(0..4)];
        let p = PerturbationParams::from_f64(r * phi.cos(), r * phi.sin(), n, ctx)?;
        let s = full_spectrum(&p, SolveMethod::Auto)?;
        let o = oracle_eigenvalues(&p, &fast)?;
        let err = s
            .eigenvalues
            .iter()
            .zip(&o.eigenvalues)
            .map(|(a, b)| (a.to_f64() - b.to_f64()).abs())
            .fold(0.0, f64::max);
        worst = worst.max(err);
        println!(
            "alpha = {:+.4} {:+.4}i  n = {n:>2}  {:<10} max|dlambda| = {err:.2e}  ({} sweeps)",
            p.alpha.re.to_f64(),
            p.alpha.im.to_f64(),
            p.regime.name(),
            o.sweeps
        );
    }
    println!("worst {worst:.2e}");
    Ok(())
}
