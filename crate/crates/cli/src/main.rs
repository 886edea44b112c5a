//! `epstein`: evaluation, sign analysis and region scans for the Xi-function
//! of diagonal Epstein zeta functions.
//!
//! Exit status: 0 on success, 2 when a sign decision stays indeterminate,
//! 1 on numerical or verification failure, 64 on invalid arguments.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epstein_core::EvalConfig;
use output::{render_csv, render_json, render_plain, Outcome};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(name = "epstein", version, about = "Epstein zeta and Xi-function toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args, Serialize)]
struct Global {
    /// Absolute tolerance requested from every evaluation.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "EPSTEIN_THREADS")]
    #[serde(skip)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartKind {
    Standard,
    Kratio,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Xi_n(s; a) and Z_n(s; a), or the rescaled Xi-hat at unit scales.
    Eval(EvalArgs),
    /// Positivity interval of Xi_n at unit scales, or a sweep over (0, n/2).
    Interval(IntervalArgs),
    /// Positivity intervals for n = 10..21.
    Table1,
    /// Second derivative in s and the type of the critical point at s = n/4.
    SecondDeriv(SecondDerivArgs),
    /// Explicit sign bounds for Xi_9 and Xi_10.
    Bounds,
    /// Log-convexity, determinant and midpoint-convexity suites.
    Convexity(ConvexityArgs),
    /// Sign labels of Xi_n on a grid over a hyperplane chart.
    Scan(ScanArgs),
    /// Random check that equal scales minimize Xi_n on prod a_i = 1.
    VerifyMin(VerifyMinArgs),
}

#[derive(Debug, Args, Serialize)]
#[command(group = clap::ArgGroup::new("point").required(true).args(["s", "s_hat"]))]
pub struct EvalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<f64>,
    /// Rescaled argument, s = n s_hat / 2.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "scales")]
    pub s_hat: Option<f64>,
    /// Comma-separated scales a_1..a_n (default: all 1).
    #[arg(long, value_delimiter = ',')]
    pub scales: Option<Vec<f64>>,
}

#[derive(Debug, Args, Serialize)]
pub struct IntervalArgs {
    #[arg(long)]
    pub n: usize,
    /// Emit Xi_n(s) on an interior grid of (0, n/2) instead.
    #[arg(long)]
    pub sweep: bool,
    /// Number of sweep points.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct SecondDerivArgs {
    #[arg(long)]
    pub n: usize,
    /// Point of evaluation (default n/4).
    #[arg(long, conflicts_with = "s_hat")]
    pub s: Option<f64>,
    #[arg(long)]
    pub s_hat: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ConvexityArgs {
    /// Restrict the determinant and midpoint suites to this dimension.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: f64,
    #[arg(long, value_enum, default_value_t = ChartKind::Kratio)]
    pub chart: ChartKind,
    /// Chart columns to vary, comma-separated (default: all, at most 3).
    #[arg(long, value_delimiter = ',')]
    pub axes: Option<Vec<usize>>,
    /// Range of every free coordinate.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_bounds, default_value = "-2:2")]
    pub bounds: (f64, f64),
    /// Nodes per axis.
    #[arg(long, default_value_t = 41)]
    pub grid: usize,
    /// Pair budget of the discrete convexity check.
    #[arg(long, default_value_t = 10_000)]
    pub max_pairs: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyMinArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

fn parse_bounds(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = text.split_once(':').ok_or("expected lo:hi")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("lower bound: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("upper bound: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err("need finite lo < hi".into());
    }
    Ok((lo, hi))
}

fn validate(cli: &Cli) -> Result<EvalConfig, String> {
    let cfg = EvalConfig::default().with_tol(cli.global.tol);
    cfg.validate().map_err(|e| e.to_string())?;
    if cli.global.threads == Some(0) {
        return Err("--threads must be positive".into());
    }
    let positive_n = |n: usize| if n == 0 { Err("--n must be at least 1".to_string()) } else { Ok(()) };
    let finite = |name: &str, x: f64| {
        if x.is_finite() {
            Ok(())
        } else {
            Err(format!("--{name} must be finite"))
        }
    };
    match &cli.command {
        Command::Eval(a) => {
            positive_n(a.n)?;
            if let Some(s) = a.s {
                finite("s", s)?;
            }
            if let Some(h) = a.s_hat {
                finite("s-hat", h)?;
            }
            if let Some(sc) = &a.scales {
                if sc.len() != a.n {
                    return Err(format!("--scales has {} entries, --n is {}", sc.len(), a.n));
                }
                if sc.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
                    return Err("--scales must be positive and finite".into());
                }
            }
        }
        Command::Interval(a) => {
            positive_n(a.n)?;
            if a.sweep && a.grid == 0 {
                return Err("--grid must be positive".into());
            }
        }
        Command::SecondDeriv(a) => {
            positive_n(a.n)?;
            if let Some(s) = a.s {
                finite("s", s)?;
            }
            if let Some(h) = a.s_hat {
                finite("s-hat", h)?;
            }
        }
        Command::Convexity(a) => {
            if let Some(n) = a.n {
                if !(2..=8).contains(&n) {
                    return Err("--n must lie in 2..=8 for the convexity suites".into());
                }
            }
        }
        Command::Scan(a) => {
            if a.n < 2 {
                return Err("--n must be at least 2 for a scan".into());
            }
            if !(a.s > 0.0 && a.s < 0.5 * a.n as f64) {
                return Err(format!("--s must lie in (0, {})", 0.5 * a.n as f64));
            }
            if a.grid < 2 {
                return Err("--grid must be at least 2".into());
            }
            let free = a.axes.as_ref().map_or(a.n - 1, Vec::len);
            if free == 0 || free > epstein_core::regions::MAX_FREE_DIMENSIONS {
                return Err(format!(
                    "a scan varies 1 to {} chart columns, got {free}; choose them with --axes",
                    epstein_core::regions::MAX_FREE_DIMENSIONS
                ));
            }
            if let Some(axes) = &a.axes {
                if let Some(bad) = axes.iter().find(|&&c| c >= a.n - 1) {
                    return Err(format!("--axes entry {bad} out of range 0..{}", a.n - 1));
                }
            }
        }
        Command::VerifyMin(a) => {
            if a.n < 2 {
                return Err("--n must be at least 2".into());
            }
            finite("s", a.s)?;
            if a.samples == 0 {
                return Err("--samples must be positive".into());
            }
        }
        Command::Table1 | Command::Bounds => {}
    }
    Ok(cfg)
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), String> {
    let bytes = match cli.global.format {
        Format::Plain => render_plain(outcome).into_bytes(),
        Format::Csv => render_csv(outcome)?,
        Format::Json => {
            let spec = serde_json::json!({ "run": cli.command, "options": cli.global });
            render_json(&spec, outcome).into_bytes()
        }
    };
    match &cli.global.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match validate(&cli) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(USAGE);
        }
    };
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = commands::run(&cli.command, &cfg);
    if let Err(msg) = emit(&cli, &outcome) {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    if cli.global.format != Format::Plain || cli.global.out.is_some() {
        for e in &outcome.errors {
            eprintln!("error: {e}");
        }
    }
    ExitCode::from(outcome.status().code() as u8)
}
