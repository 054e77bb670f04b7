//! Command-line front end: `spectrum`, `table` and `verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 solver failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::oracle::oracle_eigenvalues;
use crate::params::PerturbationParams;
use crate::precision::{cmp_real, to_decimal, Complex, PrecisionContext, Real};
use crate::report::{error_table, sig3, ErrorTableRow};
use crate::spectrum::{full_spectrum, SolveMethod, Spectrum};
use crate::weak::{EtaFunction, Parity};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

/// Order used by `verify` when neither `--n` nor `--n-list` is given.
pub const DEFAULT_VERIFY_N: usize = 50;
/// Eigenvalue agreement required against the double-precision oracle.
pub const VERIFY_EIGENVALUE_TOL: f64 = 2e-13;

const PLOT_SAMPLES: usize = 200;

#[derive(Parser, Debug)]
#[command(name = "toeplitz-corners", version, about = "Spectra of corner-perturbed tridiagonal Toeplitz matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All eigenvalues of one matrix, with localization intervals and optional residuals.
    Spectrum(RawArgs),
    /// Asymptotic-versus-exact error table over several orders.
    Table(RawArgs),
    /// Compare against the Jacobi oracle and check eigenvector residuals.
    Verify(RawArgs),
}

#[derive(Args, Debug)]
struct RawArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha_re: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    alpha_im: String,
    #[arg(long)]
    n: Option<usize>,
    /// Comma separated orders.
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = 256)]
    precision_bits: u32,
    #[arg(long, default_value = "auto", value_parser = ["auto", "fixed_point", "asymptotic", "oracle"])]
    method: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    with_vectors: bool,
    /// Also write `<output>.plot.csv` with `series,x,y` columns.
    #[arg(long)]
    emit_plot_data: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Validated configuration shared by the subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub alpha_re: String,
    pub alpha_im: String,
    pub n_list: Vec<usize>,
    pub precision_bits: u32,
    pub method: SolveMethod,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub with_vectors: bool,
    pub emit_plot_data: bool,
}

impl RunConfig {
    fn from_raw(raw: RawArgs, default_n: Option<usize>) -> Result<Self, String> {
        let mut n_list = raw.n_list;
        if let Some(n) = raw.n {
            n_list.insert(0, n);
        }
        if n_list.is_empty() {
            n_list.extend(default_n);
        }
        if n_list.is_empty() {
            return Err("one of --n or --n-list is required".into());
        }
        if let Some(bad) = n_list.iter().find(|&&n| n < 3) {
            return Err(format!("n = {bad} must be at least 3"));
        }
        if raw.precision_bits < 53 {
            return Err(format!("--precision-bits {} is below 53", raw.precision_bits));
        }
        if raw.emit_plot_data && raw.output.is_none() {
            return Err("--emit-plot-data needs --output".into());
        }
        Ok(Self {
            alpha_re: raw.alpha_re,
            alpha_im: raw.alpha_im,
            n_list,
            precision_bits: raw.precision_bits,
            method: raw.method.parse().map_err(|e: Error| e.to_string())?,
            output_format: raw.format,
            output_path: raw.output,
            with_vectors: raw.with_vectors,
            emit_plot_data: raw.emit_plot_data,
        })
    }

    pub fn context(&self) -> Result<PrecisionContext, Error> {
        PrecisionContext::new(self.precision_bits)
    }

    pub fn alpha(&self, ctx: &PrecisionContext) -> Result<Complex, Error> {
        Ok(Complex::new(ctx.parse(&self.alpha_re)?, ctx.parse(&self.alpha_im)?))
    }

    pub fn params(&self, n: usize) -> Result<PerturbationParams, Error> {
        let ctx = self.context()?;
        PerturbationParams::new(self.alpha(&ctx)?, n, ctx)
    }

    fn plot_path(&self) -> Option<PathBuf> {
        let out = self.output_path.as_ref()?;
        let mut s = out.clone().into_os_string();
        s.push(".plot.csv");
        Some(PathBuf::from(s))
    }
}

/// One `spectrum` output row. Numbers are full-precision decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub j: usize,
    pub theta: Option<String>,
    pub branch: Option<String>,
    pub eigenvalue: String,
    pub method: String,
    pub multiplicity: usize,
    pub interval_lo: String,
    pub interval_hi: String,
    pub residual: Option<String>,
}

/// One `table` output row, formatted like the printed tables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    #[serde(rename = "R_inf")]
    pub r_inf: String,
    #[serde(rename = "n3_R_inf")]
    pub n3_r_inf: String,
    pub extreme_scaled_first: Option<String>,
    pub extreme_scaled_last: Option<String>,
    pub methods: String,
}

impl From<&ErrorTableRow> for TableRow {
    fn from(r: &ErrorTableRow) -> Self {
        Self {
            n: r.n,
            r_inf: sig3(&r.r_inf),
            n3_r_inf: format!("{:.2}", r.n3_r_inf.to_f64()),
            extreme_scaled_first: r.extreme_scaled_first.as_ref().map(sig3),
            extreme_scaled_last: r.extreme_scaled_last.as_ref().map(sig3),
            methods: r.methods_label(),
        }
    }
}

/// One `verify` result per order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub n: usize,
    pub max_eigenvalue_error: String,
    pub worst_eigenvalue_index: usize,
    pub max_residual: Option<String>,
    pub worst_residual_index: Option<usize>,
    pub residual_tolerance: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub series: String,
    pub x: String,
    pub y: String,
}

enum Failure {
    Usage(String),
    Solver(String),
}

impl Failure {
    fn solver(e: Error, cfg: &RunConfig, n: usize) -> Self {
        match e {
            Error::InvalidParams(_) | Error::InvalidPrecision(_) | Error::Parse(_) | Error::OracleLimit { .. } => {
                Failure::Usage(e.to_string())
            }
            e => {
                let ctx = match cfg.params(n) {
                    Ok(p) => p.describe_thresholds(),
                    Err(_) => format!("n={n}"),
                };
                Failure::Solver(format!("{e} [{ctx}]"))
            }
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let (raw, default_n, which) = match cli.command {
        Command::Spectrum(a) => (a, None, 0),
        Command::Table(a) => (a, None, 1),
        Command::Verify(a) => (a, Some(DEFAULT_VERIFY_N), 2),
    };
    let result = RunConfig::from_raw(raw, default_n)
        .map_err(Failure::Usage)
        .and_then(|cfg| match which {
            0 => cmd_spectrum(&cfg, stdout, stderr).map(|_| EXIT_OK),
            1 => cmd_table(&cfg, stdout, stderr).map(|_| EXIT_OK),
            _ => cmd_verify(&cfg, stdout, stderr),
        });
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Solver(msg)) => {
            let _ = writeln!(stderr, "solver failure: {msg}");
            EXIT_SOLVER
        }
    }
}

fn cmd_spectrum(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let n = match cfg.n_list.as_slice() {
        [n] => *n,
        _ => return Err(Failure::Usage("spectrum takes a single order".into())),
    };
    let p = cfg.params(n).map_err(|e| Failure::solver(e, cfg, n))?;
    let s = full_spectrum(&p, cfg.method).map_err(|e| Failure::solver(e, cfg, n))?;
    warn(stderr, &s.warnings);
    let rows = spectrum_rows(&s, cfg.with_vectors).map_err(|e| Failure::solver(e, cfg, n))?;
    emit(cfg, &rows, stdout)?;
    if cfg.emit_plot_data {
        write_plot(cfg, &spectrum_plot(&s))?;
    }
    Ok(())
}

/// Output rows for a spectrum; residuals only for indices with a `theta`.
pub fn spectrum_rows(s: &Spectrum, with_vectors: bool) -> Result<Vec<SpectrumRow>, Error> {
    let pairs = if with_vectors {
        s.eigenpairs()?
    } else {
        vec![None; s.n()]
    };
    Ok((1..=s.n())
        .map(|j| {
            let sol = s.thetas[j - 1].as_ref();
            let (lo, hi) = s.localization_interval(j);
            SpectrumRow {
                j,
                theta: sol.map(|t| to_decimal(&t.theta)),
                branch: sol.map(|t| t.branch.name().to_string()),
                eigenvalue: to_decimal(&s.eigenvalues[j - 1]),
                method: s.methods[j - 1].name().to_string(),
                multiplicity: s.multiplicities[j - 1],
                interval_lo: to_decimal(&lo),
                interval_hi: to_decimal(&hi),
                residual: pairs[j - 1].as_ref().map(|p| to_decimal(&p.residual)),
            }
        })
        .collect())
}

fn spectrum_plot(s: &Spectrum) -> Vec<PlotPoint> {
    let mut pts = Vec::new();
    for (sol, lambda) in s.thetas.iter().zip(&s.eigenvalues) {
        if let Some(t) = sol {
            pts.push(point("theta_lambda", &t.theta, lambda));
        }
    }
    let p = &s.params;
    let ctx = &p.ctx;
    for (name, parity) in [("eta_odd", Parity::Odd), ("eta_even", Parity::Even)] {
        let Ok(e) = EtaFunction::new(p, parity) else { continue };
        for i in 1..PLOT_SAMPLES {
            let x = ctx.pi() * ctx.int(i as i64) / ctx.int(PLOT_SAMPLES as i64);
            pts.push(point(name, &x, &e.eval(&x)));
        }
    }
    pts
}

fn cmd_table(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    if cfg.method != SolveMethod::Auto {
        return Err(Failure::Usage("table always compares against the auto spectrum; drop --method".into()));
    }
    if cfg.with_vectors {
        let _ = writeln!(stderr, "warning: --with-vectors has no effect on table");
    }
    let n0 = cfg.n_list[0];
    let ctx = cfg.context().map_err(|e| Failure::solver(e, cfg, n0))?;
    let alpha = cfg.alpha(&ctx).map_err(|e| Failure::solver(e, cfg, n0))?;
    let rows = error_table(&alpha, &cfg.n_list, ctx).map_err(|e| Failure::solver(e, cfg, n0))?;
    for r in rows.iter().filter(|r| r.used_oracle()) {
        let _ = writeln!(stderr, "warning: n = {} used oracle extremes ({})", r.n, r.methods_label());
    }
    let out: Vec<TableRow> = rows.iter().map(TableRow::from).collect();
    emit(cfg, &out, stdout)?;
    if cfg.emit_plot_data {
        let mut pts = Vec::new();
        for r in &rows {
            let series = [
                ("r_inf", Some(&r.r_inf)),
                ("n3_r_inf", Some(&r.n3_r_inf)),
                ("extreme_scaled_first", r.extreme_scaled_first.as_ref()),
                ("extreme_scaled_last", r.extreme_scaled_last.as_ref()),
            ];
            for (name, v) in series {
                if let Some(v) = v {
                    pts.push(PlotPoint {
                        series: name.to_string(),
                        x: r.n.to_string(),
                        y: to_decimal(v),
                    });
                }
            }
        }
        write_plot(cfg, &pts)?;
    }
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let mut rows = Vec::new();
    let mut pts = Vec::new();
    for &n in &cfg.n_list {
        let p = cfg.params(n).map_err(|e| Failure::solver(e, cfg, n))?;
        let s = full_spectrum(&p, cfg.method).map_err(|e| Failure::solver(e, cfg, n))?;
        warn(stderr, &s.warnings);
        let oracle = oracle_eigenvalues(&p, &PrecisionContext::fast()).map_err(|e| Failure::solver(e, cfg, n))?;
        let mut solved = s.eigenvalues.clone();
        solved.sort_by(cmp_real);
        let (mut worst_j, mut max_err) = (1, 0.0f64);
        for (j, (a, b)) in solved.iter().zip(&oracle.eigenvalues).enumerate() {
            let d = (a.to_f64() - b.to_f64()).abs();
            if cfg.emit_plot_data {
                pts.push(PlotPoint {
                    series: format!("abs_error_n{n}"),
                    x: (j + 1).to_string(),
                    y: format!("{d:e}"),
                });
            }
            if d > max_err || d.is_nan() {
                max_err = d;
                worst_j = j + 1;
            }
        }
        let tol = p.ctx.pow2(-(cfg.precision_bits as i32) / 2);
        let pairs = s.eigenpairs().map_err(|e| Failure::solver(e, cfg, n))?;
        let worst_res: Option<(usize, Real)> = pairs
            .iter()
            .flatten()
            .map(|pr| (pr.j, pr.residual.clone()))
            .max_by(|a, b| cmp_real(&a.1, &b.1));
        let res_ok = worst_res.as_ref().is_none_or(|(_, r)| *r < tol);
        let pass = max_err < VERIFY_EIGENVALUE_TOL && res_ok;
        let row = VerifyRow {
            n,
            max_eigenvalue_error: format!("{max_err:e}"),
            worst_eigenvalue_index: worst_j,
            max_residual: worst_res.as_ref().map(|(_, r)| to_decimal(r)),
            worst_residual_index: worst_res.as_ref().map(|(j, _)| *j),
            residual_tolerance: to_decimal(&tol),
            pass,
        };
        if !pass {
            let _ = writeln!(
                stderr,
                "verify failed for n = {n}: max |dlambda| = {} at j = {}, max residual = {} at j = {}",
                row.max_eigenvalue_error,
                worst_j,
                row.max_residual.as_deref().unwrap_or("-"),
                row.worst_residual_index.map_or("-".to_string(), |j| j.to_string()),
            );
        }
        rows.push(row);
    }
    emit(cfg, &rows, stdout)?;
    if cfg.emit_plot_data {
        write_plot(cfg, &pts)?;
    }
    Ok(if rows.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn point(series: &str, x: &Real, y: &Real) -> PlotPoint {
    PlotPoint {
        series: series.to_string(),
        x: to_decimal(x),
        y: to_decimal(y),
    }
}

fn warn(stderr: &mut dyn Write, warnings: &[String]) {
    for w in warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
}

/// Serializes `rows` as CSV or a JSON array.
pub fn render<T: Serialize>(rows: &[T], format: OutputFormat) -> Result<Vec<u8>, String> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
        OutputFormat::Json => {
            let mut v = serde_json::to_vec_pretty(rows).map_err(|e| e.to_string())?;
            v.push(b'\n');
            Ok(v)
        }
    }
}

fn emit<T: Serialize>(cfg: &RunConfig, rows: &[T], stdout: &mut dyn Write) -> Result<(), Failure> {
    let bytes = render(rows, cfg.output_format).map_err(Failure::Usage)?;
    match &cfg.output_path {
        Some(path) => write_file(path, &bytes),
        None => stdout.write_all(&bytes).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn write_plot(cfg: &RunConfig, pts: &[PlotPoint]) -> Result<(), Failure> {
    let path = cfg.plot_path().expect("checked in RunConfig");
    let bytes = render(pts, OutputFormat::Csv).map_err(Failure::Usage)?;
    write_file(&path, &bytes)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}
