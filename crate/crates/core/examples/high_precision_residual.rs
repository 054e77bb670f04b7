//! Eigenvector residuals at very high precision. 3322 bits is about 1000 digits.
//!
//! cargo run --release --example high_precision_residual [bits] [n]

use std::time::Instant;

use toeplitz_corners::precision::cmp_real;
use toeplitz_corners::spectrum::{full_spectrum, SolveMethod};
use toeplitz_corners::{PerturbationParams, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let bits: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3322);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(50);
    let ctx = PrecisionContext::new(bits)?;
    for (re, im) in [("0.37", "-0.81"), ("1.9", "0.45")] {
        let start = Instant::now();
        let p = PerturbationParams::parse(re, im, n, ctx)?;
        let s = full_spectrum(&p, SolveMethod::Auto)?;
        let pairs = s.eigenpairs()?;
        let worst = pairs
            .iter()
            .flatten()
            .max_by(|a, b| cmp_real(&a.residual, &b.residual))
            .ok_or("no eigenvectors")?;
        let log10 = worst.residual.clone().log10().to_f64();
        println!(
            "alpha = {re} + ({im})i, n = {n}, {bits} bits: max residual 10^{log10:.1} at j = {} ({:.1} s)",
            worst.j,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
