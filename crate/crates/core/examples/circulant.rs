//! alpha = 1 and alpha = -1: closed-form eigenvalues, double eigenvalues and the
//! sine/cosine eigenvectors, checked against the dense oracle.
//!
//! cargo run --example circulant [n]

use toeplitz_corners::oracle::oracle_eigenvalues;
use toeplitz_corners::spectrum::{full_spectrum, SolveMethod};
use toeplitz_corners::{PerturbationParams, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(7);
    let ctx = PrecisionContext::fast();
    for alpha in [1.0, -1.0] {
        let p = PerturbationParams::from_f64(alpha, 0.0, n, ctx)?;
        let s = full_spectrum(&p, SolveMethod::Auto)?;
        let oracle = oracle_eigenvalues(&p, &ctx)?;
        let pairs = s.eigenpairs()?;
        println!("alpha = {alpha}, n = {n} ({})", p.regime);
        println!("{:>3} {:>20} {:>20} {:>5} {:>10}", "j", "closed form", "oracle", "mult", "residual");
        for j in 0..n {
            let res = pairs[j].as_ref().map(|e| e.residual.to_f64()).unwrap_or(f64::NAN);
            println!(
                "{:>3} {:>20.15} {:>20.15} {:>5} {:>10.2e}",
                j + 1,
                s.eigenvalues[j].to_f64(),
                oracle.eigenvalues[j].to_f64(),
                s.multiplicities[j],
                res
            );
        }
        println!();
    }
    Ok(())
}
