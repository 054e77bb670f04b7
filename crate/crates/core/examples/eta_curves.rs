//! Samples of eta for both parities and the lines n x - j pi whose crossings with
//! eta are the interior theta values. Writes `series,x,y` CSV to stdout.
//!
//! cargo run --example eta_curves [re im n] > eta.csv

use toeplitz_corners::weak::{EtaFunction, Parity};
use toeplitz_corners::{PerturbationParams, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (re, im, n) = match args.as_slice() {
        [re, im, n] => (re.as_str(), im.as_str(), n.parse()?),
        _ => ("0.7", "0.6", 5usize),
    };
    let ctx = PrecisionContext::fast();
    let p = PerturbationParams::parse(re, im, n, ctx)?;
    let samples = 400;
    let mut w = csv::Writer::from_writer(std::io::stdout());
    w.write_record(["series", "x", "y"])?;
    for (name, parity) in [("eta_odd", Parity::Odd), ("eta_even", Parity::Even)] {
        let e = EtaFunction::new(&p, parity)?;
        for i in 1..samples {
            let x = ctx.pi() * ctx.int(i) / ctx.int(samples);
            w.write_record([name.to_string(), x.to_f64().to_string(), e.eval(&x).to_f64().to_string()])?;
        }
    }
    for j in 1..=n {
        for x in [(j as f64 - 1.0) * std::f64::consts::PI / n as f64, j as f64 * std::f64::consts::PI / n as f64] {
            let y = n as f64 * x - j as f64 * std::f64::consts::PI;
            w.write_record([format!("line_{j}"), x.to_string(), y.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}
