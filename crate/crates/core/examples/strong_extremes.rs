//! The two eigenvalues that escape [0, 4] for |alpha| > 1 approach -s and 4 + s
//! exponentially; |alpha|^n times the distance settles to a constant.
//!
//! cargo run --release --example strong_extremes [re im]

use toeplitz_corners::report::error_table_row;
use toeplitz_corners::spectrum::{full_spectrum, SolveMethod};
use toeplitz_corners::strong::spectral_gaps;
use toeplitz_corners::{PerturbationParams, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (re, im) = match args.as_slice() {
        [re, im] => (re.as_str(), im.as_str()),
        _ => ("2", "1"),
    };
    let ctx = PrecisionContext::default();
    let base = PerturbationParams::parse(re, im, 8, ctx)?;
    println!("{}", base.describe_thresholds());
    println!("s = {:.15}", base.s_alpha.as_ref().ok_or("alpha is not strong")?.to_f64());
    println!("{:>5} {:>20} {:>20} {:>12} {:>12}  method", "n", "lambda_1", "lambda_n", "scaled_1", "scaled_n");
    for n in [8, 16, 24, 32, 48, 64, 128] {
        let p = base.with_n(n)?;
        let s = full_spectrum(&p, SolveMethod::Auto)?;
        let row = error_table_row(&p)?;
        let (gap_lo, gap_hi) = spectral_gaps(&p, &s.eigenvalues)?;
        let f = |v: &Option<_>| v.as_ref().map(|x: &toeplitz_corners::Real| format!("{:.6}", x.to_f64())).unwrap_or_default();
        println!(
            "{n:>5} {:>20.15} {:>20.15} {:>12} {:>12}  {} (gaps {:.3e}, {:.3e})",
            s.eigenvalues[0].to_f64(),
            s.eigenvalues[n - 1].to_f64(),
            f(&row.extreme_scaled_first),
            f(&row.extreme_scaled_last),
            s.methods[0].name(),
            gap_lo.to_f64(),
            gap_hi.to_f64()
        );
    }
    Ok(())
}
