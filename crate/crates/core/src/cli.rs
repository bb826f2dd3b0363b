//! Command-line front end: `cdf`, `quantile`, `sweep` and `bench`.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on domain or range errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::beta_asym::{inc_beta_asym, AsymptoticConfig};
use crate::binomial::{cdf, CdfMethod, CdfValue};
use crate::binomial_inv::{invert, InversionResult};
use crate::error::Error;
use crate::negbinomial::{nb_cdf_value, nb_invert, NegBinomialParams};
use crate::oracle::{default_p_grid, run_sweep_with, Distribution, Metric, SweepRow, SweepSpec};
use crate::par::Execution;
use crate::special_fn::inc_beta_ref;

/// Header of the sweep CSV.
pub const CSV_HEADER: &str = "distribution,size_param,alpha,p,x_asym,x_oracle,rel_error,fallback";

#[derive(Debug, Parser)]
#[command(name = "binv", version, about = "Binomial and negative binomial CDFs and quantiles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate P(X <= x).
    Cdf(CdfArgs),
    /// Smallest integer x with alpha <= P(X <= x).
    Quantile(QuantileArgs),
    /// Accuracy of the asymptotic estimate over a grid of p.
    Sweep(SweepArgs),
    /// Median inversion time per size.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistArg {
    Binomial,
    Negbinomial,
}

impl From<DistArg> for Distribution {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Binomial => Distribution::Binomial,
            DistArg::Negbinomial => Distribution::NegBinomial,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Exact,
    BetaRef,
    BetaAsym,
}

impl From<MethodArg> for CdfMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => CdfMethod::Auto,
            MethodArg::Exact => CdfMethod::Exact,
            MethodArg::BetaRef => CdfMethod::BetaRef,
            MethodArg::BetaAsym => CdfMethod::BetaAsym,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    RelX,
    Alpha,
}

#[derive(Debug, Args)]
pub struct DistParams {
    #[arg(long, value_enum, default_value = "binomial")]
    pub dist: DistArg,
    /// Number of trials (binomial).
    #[arg(long)]
    pub n: Option<u64>,
    /// Number of successes (negative binomial; may be real).
    #[arg(long)]
    pub r: Option<f64>,
    /// Success probability.
    #[arg(long)]
    pub p: f64,
}

#[derive(Debug, Args)]
pub struct CdfArgs {
    #[command(flatten)]
    pub dist: DistParams,
    #[arg(long)]
    pub x: f64,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    #[arg(short, long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct QuantileArgs {
    #[command(flatten)]
    pub dist: DistParams,
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: f64,
    #[arg(short, long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "binomial")]
    pub dist: DistArg,
    /// n or r.
    #[arg(long)]
    pub size: u64,
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: f64,
    /// Comma-separated p values; defaults to 0.05, 0.055, ..., 0.95.
    #[arg(long, value_delimiter = ',')]
    pub p_grid: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "rel-x")]
    pub metric: MetricArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Evaluate grid points on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "binomial")]
    pub dist: DistArg,
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000,1000000")]
    pub sizes: Vec<u64>,
    #[arg(long, default_value_t = 0.4)]
    pub p: f64,
    #[arg(long, value_parser = parse_alpha, default_value = "0.51")]
    pub alpha: f64,
    #[arg(long, default_value_t = 1000)]
    pub calls: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if a > 0.0 && a <= 1.0 {
        Ok(a)
    } else {
        Err(format!("alpha must lie in (0, 1], got {s}"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn io_err(path: &str) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_string(),
        source,
    }
}

enum Size {
    N(u64),
    R(f64),
}

fn size_of(d: &DistParams) -> Result<Size, CliError> {
    match (d.dist, d.n, d.r) {
        (DistArg::Binomial, Some(n), None) => Ok(Size::N(n)),
        (DistArg::Negbinomial, None, Some(r)) => Ok(Size::R(r)),
        (DistArg::Binomial, _, _) => Err(CliError::Usage("binomial takes --n (and not --r)".into())),
        (DistArg::Negbinomial, _, _) => Err(CliError::Usage("negbinomial takes --r (and not --n)".into())),
    }
}

/// Parse `args` (including the program name) and execute; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = AsymptoticConfig::default();
    match cmd {
        Command::Cdf(a) => run_cdf(&a, &cfg, out),
        Command::Quantile(a) => run_quantile(&a, &cfg, out),
        Command::Sweep(a) => run_sweep_cmd(a, &cfg, out),
        Command::Bench(a) => run_bench(&a, &cfg, out),
    }
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn run_cdf(a: &CdfArgs, cfg: &AsymptoticConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let p = a.dist.p;
    let v: CdfValue = match size_of(&a.dist)? {
        Size::N(n) => cdf(n, p, a.x, a.method.into(), cfg)?,
        Size::R(r) => nb_cdf(r, p, a.x, a.method, cfg)?,
    };
    if a.verbose {
        writeln!(out, "cdf = {}", v.value).map_err(stdout_err)?;
        writeln!(out, "branch = {}", v.branch).map_err(stdout_err)?;
        if let Some(w) = v.warning {
            writeln!(out, "warning = {w}").map_err(stdout_err)?;
        }
    } else {
        writeln!(out, "{}", v.value).map_err(stdout_err)?;
    }
    Ok(())
}

fn nb_cdf(r: f64, p: f64, x: f64, method: MethodArg, cfg: &AsymptoticConfig) -> Result<CdfValue, Error> {
    if !(x >= 0.0 && x.fract() == 0.0 && x < u64::MAX as f64) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            expected: "a non-negative integer",
        });
    }
    let exact = nb_cdf_value(NegBinomialParams::new(r, p, x as u64)?)?;
    match method {
        MethodArg::Auto | MethodArg::Exact => Ok(exact),
        MethodArg::BetaRef => Ok(CdfValue {
            value: inc_beta_ref(p, r, x + 1.0)?,
            ..exact
        }),
        MethodArg::BetaAsym => {
            let v = inc_beta_asym(p, r, x + 1.0, cfg)?;
            Ok(CdfValue {
                value: v.value,
                warning: v.warning,
                ..exact
            })
        }
    }
}

fn run_quantile(a: &QuantileArgs, cfg: &AsymptoticConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let p = a.dist.p;
    let res = match size_of(&a.dist)? {
        Size::N(n) => invert(n, p, a.alpha, cfg)?,
        Size::R(r) => nb_invert(r, p, a.alpha, cfg)?,
    };
    if a.verbose {
        write_diagnostics(&res, out).map_err(stdout_err)
    } else {
        writeln!(out, "{}", res.x_int).map_err(stdout_err)
    }
}

fn write_diagnostics(r: &InversionResult, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "x = {}", r.x_int)?;
    writeln!(out, "x_real = {}", r.x_real)?;
    writeln!(out, "achieved_cdf = {}", r.achieved_cdf)?;
    if let Some(c) = r.nb {
        writeln!(out, "z = {}", c.z)?;
        writeln!(out, "rho0 = {}", c.rho0)?;
        writeln!(out, "x0 = {}", c.x0)?;
    }
    writeln!(out, "eta0 = {}", r.eta0)?;
    writeln!(out, "xi0 = {}", r.xi0)?;
    writeln!(out, "eta1 = {}", r.eta1)?;
    writeln!(out, "nu = {}", r.nu)?;
    writeln!(out, "eta = {}", r.eta)?;
    if let Some(c) = r.nb {
        writeln!(out, "rho = {}", c.rho)?;
    }
    writeln!(out, "xi = {}", r.xi)?;
    writeln!(out, "refinement_steps = {}", r.refinement_steps)?;
    writeln!(out, "fallback_used = {}", r.fallback_used)
}

fn run_sweep_cmd(a: SweepArgs, cfg: &AsymptoticConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = SweepSpec {
        distribution: a.dist.into(),
        size_param: a.size,
        alpha: a.alpha,
        p_grid: a.p_grid.unwrap_or_else(default_p_grid),
        metric: match a.metric {
            MetricArg::RelX => Metric::RelativeXError,
            MetricArg::Alpha => Metric::AchievedAlphaError,
        },
    };
    let exec = if a.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let rows = run_sweep_with(&spec, cfg, exec)?;
    match (a.format, &a.output) {
        (Format::Csv, Some(path)) => emit_sweep_csv(&rows, path),
        (Format::Csv, None) => write_sweep_csv(&rows, out).map_err(stdout_err),
        (Format::Text, Some(path)) => {
            let s = path.display().to_string();
            let mut w = BufWriter::new(File::create(path).map_err(io_err(&s))?);
            write_sweep_text(&rows, &mut w)
                .and_then(|_| w.flush())
                .map_err(io_err(&s))
        }
        (Format::Text, None) => write_sweep_text(&rows, out).map_err(stdout_err),
    }
}

fn csv_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV rows in grid order, 17 significant digits, LF line endings.
pub fn write_sweep_csv<W: Write + ?Sized>(rows: &[SweepRow], w: &mut W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.distribution,
            r.size_param,
            csv_num(r.alpha),
            csv_num(r.p),
            csv_num(r.x_asym),
            csv_num(r.x_oracle),
            csv_num(r.rel_error),
            r.fallback
        )?;
    }
    Ok(())
}

/// Write the sweep CSV to `path`.
pub fn emit_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<(), CliError> {
    let s = path.display().to_string();
    let mut w = BufWriter::new(File::create(path).map_err(io_err(&s))?);
    write_sweep_csv(rows, &mut w)
        .and_then(|_| w.flush())
        .map_err(io_err(&s))
}

fn write_sweep_text<W: Write + ?Sized>(rows: &[SweepRow], w: &mut W) -> io::Result<()> {
    writeln!(
        w,
        "{:>8} {:>16} {:>16} {:>12}  fallback",
        "p", "x_asym", "x_oracle", "error"
    )?;
    for r in rows {
        writeln!(
            w,
            "{:>8.4} {:>16.8} {:>16.8} {:>12.4e}  {}",
            r.p, r.x_asym, r.x_oracle, r.rel_error, r.fallback
        )?;
    }
    Ok(())
}

/// Median wall time (ns) of `calls` inversions and the number that used the fallback.
pub fn time_inversions(
    dist: Distribution,
    size: u64,
    p: f64,
    alpha: f64,
    calls: usize,
    cfg: &AsymptoticConfig,
) -> Result<(f64, usize), Error> {
    let mut times = Vec::with_capacity(calls);
    let mut fallbacks = 0;
    for _ in 0..calls.max(1) {
        let t = Instant::now();
        let r = match dist {
            Distribution::Binomial => invert(size, p, alpha, cfg)?,
            Distribution::NegBinomial => nb_invert(size as f64, p, alpha, cfg)?,
        };
        times.push(t.elapsed().as_nanos() as f64);
        fallbacks += r.fallback_used as usize;
    }
    times.sort_by(f64::total_cmp);
    Ok((times[times.len() / 2], fallbacks))
}

fn run_bench(a: &BenchArgs, cfg: &AsymptoticConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if a.sizes.is_empty() || a.calls == 0 {
        return Err(CliError::Usage("bench needs at least one size and one call".into()));
    }
    let dist: Distribution = a.dist.into();
    if a.format == Format::Csv {
        writeln!(out, "distribution,size_param,calls,median_ns,fallback_calls").map_err(stdout_err)?;
    }
    for &s in &a.sizes {
        let (med, fb) = time_inversions(dist, s, a.p, a.alpha, a.calls, cfg)?;
        match a.format {
            Format::Csv => writeln!(out, "{dist},{s},{},{},{fb}", a.calls, csv_num(med)),
            Format::Text => writeln!(
                out,
                "{dist} size={s:<10} median={med:>10.0} ns  fallback={fb}/{}",
                a.calls
            ),
        }
        .map_err(stdout_err)?;
    }
    Ok(())
}
