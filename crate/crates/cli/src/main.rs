//! `hfx verify <suite>`: run a verification suite and write its report.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on a usage
//! or I/O error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hfx_core::exec::Execution;
use hfx_core::harness::{emit_report, run_suite, ConfigError, LambdaToken, ReportFormat, Suite, SuiteConfig};
use hfx_core::tolerances::Tolerances;

#[derive(Parser)]
#[command(name = "hfx", version, about = "Numerical verification of Clifford-analytic function theories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite: algebra, fields, cauchy, mass, moebius, disk, kernel or all.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    suite: Suite,
    /// Number of generators n (the space is R^{n+1}).
    #[arg(long)]
    dim: Option<usize>,
    /// Sphere quadrature level, 0..=7.
    #[arg(long, default_value_t = hfx_core::harness::DEFAULT_LEVEL)]
    level: u32,
    /// Mass parameter: a real number or a generator e1..e4.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<LambdaToken>,
    #[arg(long, default_value_t = hfx_core::harness::DEFAULT_SEED)]
    seed: u64,
    /// Tolerance override NAME=VALUE; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: ReportFormat,
    /// Run suites and sums sequentially.
    #[arg(long)]
    deterministic: bool,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("{s:?} is not NAME=VALUE"))?;
    let value: f64 = value
        .parse()
        .map_err(|_| format!("tolerance {name}: {value:?} is not a number"))?;
    Ok((name.to_string(), value))
}

fn config(args: VerifyArgs) -> Result<SuiteConfig, ConfigError> {
    let overrides: BTreeMap<String, f64> = args.tol.into_iter().collect();
    let mut cfg = SuiteConfig::new(args.suite);
    cfg.dim = args.dim;
    cfg.level = args.level;
    cfg.lambda = args.lambda;
    cfg.seed = args.seed;
    cfg.tolerances = Tolerances::new(overrides)?;
    cfg.report_path = args.report;
    cfg.format = args.format;
    cfg.execution = if args.deterministic {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let Command::Verify(args) = Cli::parse().command;
    let cfg = match config(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = emit_report(&report, cfg.format);
    match &cfg.report_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    let failed: Vec<_> = report.failures().collect();
    for c in &failed {
        eprintln!("FAIL {} value={:e} tolerance={:e}", c.name, c.value, c.tolerance);
    }
    eprintln!(
        "{}: {} checks, {} failed, {} ms",
        report.suite,
        report.checks.len(),
        failed.len(),
        report.wall_time_ms
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
