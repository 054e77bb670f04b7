//! Error of the three-term asymptotic expansion for the four perturbations
//! tabulated in the literature, n = 64 .. 8192.
//!
//! cargo run --release --example asymptotic_table [re im]

use std::time::Instant;

use toeplitz_corners::report::{error_table, sig3};
use toeplitz_corners::{Complex, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PrecisionContext::default();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let alphas: Vec<(String, String)> = if args.len() == 2 {
        vec![(args[0].clone(), args[1].clone())]
    } else {
        [("-0.3", "0.5"), ("0.7", "0.6"), ("2", "1"), ("0.8", "-0.7")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    };
    let ns: Vec<usize> = (6..=13).map(|e| 1usize << e).collect();
    for (re, im) in alphas {
        let alpha = Complex::new(ctx.parse(&re)?, ctx.parse(&im)?);
        let start = Instant::now();
        let rows = error_table(&alpha, &ns, ctx)?;
        println!("alpha = {re} + ({im})i");
        println!("{:>6} {:>10} {:>10} {:>10} {:>10}  methods", "n", "R_inf", "n^3 R_inf", "ext_first", "ext_last");
        for r in rows {
            let opt = |v: &Option<_>| v.as_ref().map(sig3).unwrap_or_default();
            println!(
                "{:>6} {:>10} {:>10} {:>10} {:>10}  {}",
                r.n,
                sig3(&r.r_inf),
                format!("{:.2}", r.n3_r_inf.to_f64()),
                opt(&r.extreme_scaled_first),
                opt(&r.extreme_scaled_last),
                r.methods_label()
            );
        }
        println!("({:.1} s)\n", start.elapsed().as_secs_f64());
    }
    Ok(())
}
