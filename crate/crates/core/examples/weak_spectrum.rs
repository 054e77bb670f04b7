//! Interior eigenvalues of a weak perturbation from the theta equations, with their
//! localization intervals and the fixed-point iteration counts.
//!
//! cargo run --example weak_spectrum [re im n]

use toeplitz_corners::spectrum::{full_spectrum, SolveMethod};
use toeplitz_corners::{PerturbationParams, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (re, im, n) = match args.as_slice() {
        [re, im, n] => (re.as_str(), im.as_str(), n.parse()?),
        _ => ("-0.3", "0.5", 12),
    };
    let p = PerturbationParams::parse(re, im, n, PrecisionContext::default())?;
    println!("{}", p.describe_thresholds());
    let s = full_spectrum(&p, SolveMethod::Auto)?;
    println!("{:>3} {:>22} {:>22} {:>22} {:>12} {:>5}", "j", "lo", "lambda", "hi", "method", "iter");
    for j in 1..=n {
        let (lo, hi) = s.localization_interval(j);
        let sol = s.thetas[j - 1].as_ref().expect("weak spectra are theta-solved");
        println!(
            "{j:>3} {:>22.17} {:>22.17} {:>22.17} {:>12} {:>5}",
            lo.to_f64(),
            s.eigenvalues[j - 1].to_f64(),
            hi.to_f64(),
            sol.method.name(),
            sol.iterations
        );
    }
    let id = s.identities();
    println!(
        "trace error {:.2e}, determinant error {:.2e}",
        id.trace_error.to_f64(),
        id.determinant_error.to_f64()
    );
    Ok(())
}
