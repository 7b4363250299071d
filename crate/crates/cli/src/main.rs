//! `wlimits`: sweeps, reports and verification suites over the exact engines.

mod commands;
mod family_input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{emit, warning_block, Format};

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "WLIMITS_JOBS";

#[derive(Debug, Parser)]
#[command(name = "wlimits", version, about = "Exact Weierstrass-point limits, divisor classes and their checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunConfig,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Series truncation override; must be at least the computed minimum.
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Worker threads for grid sweeps (default from WLIMITS_JOBS).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The class of the special Weierstrass divisor for a range of genera.
    Classes {
        #[arg(long, value_parser = parse_range)]
        g: GenusRange,
    },
    /// Test-curve counts, pairings and the boundary-coefficient comparison.
    Testcurves {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        i: Option<usize>,
    },
    /// Twist profile of the chain of rational curves.
    Chain {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        i: i64,
        #[arg(long)]
        j: Option<i64>,
    },
    /// Computations on an explicit curve y^2 = f(x).
    Hyperelliptic(HyperellipticArgs),
    /// Limits of special points on a nodal curve.
    Limits {
        #[command(subcommand)]
        op: LimitsOp,
    },
    /// Saturation, Wronskian order or limit system of a family read from JSON.
    Family {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        op: FamilyOp,
    },
    /// Run acceptance suites; exit 2 on disagreement.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_parser = parse_range)]
        g: Option<GenusRange>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct HyperellipticArgs {
    /// Integer polynomial of odd degree, e.g. "x^5-1".
    #[arg(long)]
    pub f: String,
    #[arg(long, value_enum)]
    pub op: CurveOp,
    /// Pole order at infinity (twisted), twist n (vprime), or g_Y + 1 (classify).
    #[arg(long)]
    pub n: Option<usize>,
    /// Affine pole `x,y,m` (twisted; repeatable).
    #[arg(long = "pole", value_parser = parse_pole)]
    pub poles: Vec<(String, String, usize)>,
    /// Sample point `x` or `x,y` (twisted, classify) or the point Q (vprime).
    #[arg(long = "point")]
    pub points: Vec<String>,
    /// +1 or -1 (classify; both when absent).
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i8>,
    #[arg(long)]
    pub b_weierstrass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveOp {
    Weierstrass,
    Twisted,
    Classify,
    Vprime,
}

#[derive(Debug, Subcommand)]
pub enum LimitsOp {
    /// Loci of points on X satisfying the two limit conditions.
    Classify {
        #[arg(long)]
        gx: usize,
        #[arg(long)]
        gy: usize,
        #[arg(long, allow_hyphen_values = true)]
        j: i8,
        #[arg(long)]
        b_weierstrass: bool,
        /// Model of X (default: x^3-x for genus 1, x^(2g+1)-x otherwise).
        #[arg(long)]
        f: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyOp {
    Saturate,
    Wronskian,
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    SwIntersection,
    Chain,
    Pluecker,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusRange {
    pub lo: usize,
    pub hi: usize,
}

impl GenusRange {
    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

fn parse_range(s: &str) -> Result<GenusRange, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi: usize = hi.parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(GenusRange { lo, hi })
}

fn parse_pole(s: &str) -> Result<(String, String, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [x, y, m] => {
            let m = m.parse().map_err(|_| format!("bad pole order in {s:?}"))?;
            Ok((x.to_string(), y.to_string(), m))
        }
        _ => Err(format!("expected x,y,m, got {s:?}")),
    }
}

/// Failures that end a run; both map to exit code 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] weierstrass_limits::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

/// A finished command: the report, and whether a verification disagreed.
pub struct Outcome {
    pub report: report::Report,
    pub disagreement: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_pool(&cli.run) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match commands::run(&cli.command, &cli.run) {
        Ok(out) => {
            let text = emit(&out.report, cli.run.format);
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            if let Some(w) = warning_block(&out.report.warnings) {
                eprint!("{w}");
            }
            ExitCode::from(if out.disagreement { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn configure_pool(run: &RunConfig) -> Result<(), CliError> {
    let jobs = match run.jobs {
        Some(j) => Some(j),
        None => match std::env::var(JOBS_ENV) {
            Ok(v) => Some(v.trim().parse().map_err(|_| CliError::Usage(format!("{JOBS_ENV} must be a positive integer")))?),
            Err(_) => None,
        },
    };
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::Usage("worker count must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}
