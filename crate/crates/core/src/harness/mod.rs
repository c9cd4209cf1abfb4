//! Named verification suites and their reports.
//!
//! A suite turns a [`SuiteConfig`] into a [`VerificationReport`]: an echo of
//! the parameters, the conventions in force, and one [`Check`] per verified
//! property. Check names read `suite.key[.detail]`, with `suite.key` the
//! tolerance key from [`crate::tolerances`].

mod algebra;
mod cauchy;
mod disk;
mod fields;
mod kernel;
mod mass;
mod moebius;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{Multivector, Signature, MAX_GENERATORS};
use crate::exec::Execution;
use crate::quadrature::MAX_LEVEL;
use crate::report::{Check, VerificationRecord};
use crate::tolerances::{ToleranceError, Tolerances};

pub const DEFAULT_LEVEL: u32 = 4;
pub const DEFAULT_SEED: u64 = 0;
/// Grid size of the disk suite.
pub const DISK_GRID: usize = 4096;
/// Monte Carlo sample count of the kernel suite.
pub const KERNEL_SAMPLES: usize = 100_000;
/// Random draws per Möbius property.
pub const MOEBIUS_SAMPLES: usize = 1000;
/// Random inputs per algebra property.
pub const ALGEBRA_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Cauchy,
    Disk,
    Fields,
    Kernel,
    Mass,
    Moebius,
    All,
}

impl Suite {
    /// Every concrete suite, in report order.
    pub const CONCRETE: [Suite; 7] = [
        Suite::Algebra,
        Suite::Cauchy,
        Suite::Disk,
        Suite::Fields,
        Suite::Kernel,
        Suite::Mass,
        Suite::Moebius,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Cauchy => "cauchy",
            Suite::Disk => "disk",
            Suite::Fields => "fields",
            Suite::Kernel => "kernel",
            Suite::Mass => "mass",
            Suite::Moebius => "moebius",
            Suite::All => "all",
        }
    }

    /// Admissible `--dim` values, `None` when the suite has no dimension.
    pub fn dim_range(self) -> Option<(usize, usize)> {
        match self {
            Suite::Algebra => Some((1, MAX_GENERATORS)),
            Suite::Fields | Suite::Cauchy | Suite::Mass => Some((1, 3)),
            Suite::Moebius => Some((2, 4)),
            Suite::Disk | Suite::Kernel => None,
            Suite::All => Some((2, 3)),
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::CONCRETE.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::CONCRETE
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

/// The mass parameter: a real number or a generator `e_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaToken {
    Real(f64),
    Generator(usize),
}

impl LambdaToken {
    /// `{0, 0.5, 1.0, e1}`.
    pub fn defaults() -> Vec<LambdaToken> {
        vec![
            LambdaToken::Real(0.0),
            LambdaToken::Real(0.5),
            LambdaToken::Real(1.0),
            LambdaToken::Generator(1),
        ]
    }

    pub fn to_multivector(self, sig: Signature) -> Result<Multivector, ConfigError> {
        match self {
            LambdaToken::Real(v) => Ok(Multivector::scalar(sig, v)),
            LambdaToken::Generator(k) => Multivector::generator(sig, k).map_err(|_| ConfigError::Invalid {
                key: "lambda",
                reason: format!("e{k} does not exist for n = {}", sig.n()),
            }),
        }
    }
}

impl fmt::Display for LambdaToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaToken::Real(v) => write!(f, "{v}"),
            LambdaToken::Generator(k) => write!(f, "e{k}"),
        }
    }
}

impl FromStr for LambdaToken {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| ConfigError::Invalid {
            key: "lambda",
            reason: format!("{s:?}: {reason}"),
        };
        if let Some(k) = s.strip_prefix('e') {
            if let Ok(k) = k.parse::<usize>() {
                return if (1..=MAX_GENERATORS).contains(&k) {
                    Ok(LambdaToken::Generator(k))
                } else {
                    Err(bad("generator index out of range"))
                };
            }
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(LambdaToken::Real(v)),
            _ => Err(bad("expected a real number or e1..e4")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(ConfigError::Invalid {
                key: "format",
                reason: format!("{other:?} is not json or csv"),
            }),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid {key}: {reason}")]
    Invalid { key: &'static str, reason: String },
    #[error(transparent)]
    Tolerance(#[from] ToleranceError),
}

/// Everything a suite run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Number of generators; `None` runs each suite's acceptance set.
    pub dim: Option<usize>,
    pub level: u32,
    /// `None` runs `{0, 0.5, 1.0, e1}`.
    pub lambda: Option<LambdaToken>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub report_path: Option<PathBuf>,
    pub format: ReportFormat,
    pub execution: Execution,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            dim: None,
            level: DEFAULT_LEVEL,
            lambda: None,
            seed: DEFAULT_SEED,
            tolerances: Tolerances::default(),
            report_path: None,
            format: ReportFormat::Json,
            execution: Execution::Parallel,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(n) = self.dim {
            match self.suite.dim_range() {
                Some((lo, hi)) if (lo..=hi).contains(&n) => {}
                Some((lo, hi)) => {
                    return Err(ConfigError::Invalid {
                        key: "dim",
                        reason: format!("{n} outside {lo}..={hi} for suite {}", self.suite),
                    })
                }
                None => {
                    return Err(ConfigError::Invalid {
                        key: "dim",
                        reason: format!("suite {} has no dimension parameter", self.suite),
                    })
                }
            }
        }
        if self.level > MAX_LEVEL {
            return Err(ConfigError::Invalid {
                key: "level",
                reason: format!("{} outside 0..={MAX_LEVEL}", self.level),
            });
        }
        if let Some(l) = self.lambda {
            if !matches!(self.suite, Suite::Mass | Suite::All) {
                return Err(ConfigError::Invalid {
                    key: "lambda",
                    reason: format!("suite {} has no mass parameter", self.suite),
                });
            }
            let n = self.dim.unwrap_or(mass::DEFAULT_DIM);
            let sig = Signature::negative(n).expect("dimension validated");
            l.to_multivector(sig)?;
        }
        Ok(())
    }
}

/// Parameters as run, echoed into the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    pub dim: Option<usize>,
    pub level: u32,
    pub lambda: Vec<String>,
    pub tolerance_overrides: BTreeMap<String, f64>,
    pub deterministic: bool,
    pub disk_grid: usize,
    pub kernel_samples: usize,
    pub moebius_samples: usize,
    pub algebra_samples: usize,
}

/// The conventions every number in the report depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conventions {
    pub function_theory_signature: String,
    pub moebius_signature: String,
    pub star: String,
    pub cauchy_riemann_operator: String,
    pub mass_equation: String,
    pub exponential_direction: String,
    pub integrand_order: String,
    pub disk_weights: String,
}

impl Conventions {
    pub fn current() -> Self {
        Self {
            function_theory_signature: "e_j^2 = -1".into(),
            moebius_signature: "e_j^2 = +1".into(),
            star: "reversion".into(),
            cauchy_riemann_operator: "D = d/dy0 + sum_j e_j d/dyj".into(),
            mass_equation: "D f = M f, M f = f lambda".into(),
            exponential_direction: "exp(-y0 M) maps M-solutions to monogenic functions".into(),
            integrand_order: "E(y - x) nu(y) f(y)".into(),
            disk_weights: "1 for the Hardy space, 2 for the kernel integral".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: Parameters,
    pub conventions: Conventions,
    pub checks: Vec<Check>,
    pub wall_time_ms: u64,
    pub seed: u64,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Settings shared by the suite bodies.
pub(crate) struct Ctx<'a> {
    pub dim: Option<usize>,
    pub level: u32,
    pub lambda: Option<LambdaToken>,
    pub seed: u64,
    pub tol: &'a Tolerances,
    pub exec: Execution,
}

impl Ctx<'_> {
    pub fn tol(&self, key: &str) -> f64 {
        self.tol.get(key)
    }

    /// `at_most` check `key[.detail]` against the tolerance of `key`.
    pub fn at_most(&self, rec: &mut VerificationRecord, key: &str, detail: &str, value: f64) {
        rec.at_most(name(key, detail), value, self.tol(key));
    }

    pub fn at_least(&self, rec: &mut VerificationRecord, key: &str, detail: &str, value: f64) {
        rec.at_least(name(key, detail), value, self.tol(key));
    }
}

fn name(key: &str, detail: &str) -> String {
    if detail.is_empty() {
        key.to_string()
    } else {
        format!("{key}.{detail}")
    }
}

/// Runs one concrete suite.
fn run_one(suite: Suite, ctx: &Ctx) -> VerificationRecord {
    match suite {
        Suite::Algebra => algebra::run(ctx),
        Suite::Cauchy => cauchy::run(ctx),
        Suite::Disk => disk::run(ctx),
        Suite::Fields => fields::run(ctx),
        Suite::Kernel => kernel::run(ctx),
        Suite::Mass => mass::run(ctx),
        Suite::Moebius => moebius::run(ctx),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

/// Validates `cfg` and runs the suite. Check failures are recorded, not raised.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport, ConfigError> {
    cfg.validate()?;
    let start = Instant::now();
    let ctx = Ctx {
        dim: cfg.dim,
        level: cfg.level,
        lambda: cfg.lambda,
        seed: cfg.seed,
        tol: &cfg.tolerances,
        exec: cfg.execution,
    };
    let members = cfg.suite.members();
    let records: Vec<VerificationRecord> = match cfg.execution {
        Execution::Sequential => members.iter().map(|&s| run_one(s, &ctx)).collect(),
        Execution::Parallel => members.par_iter().map(|&s| run_one(s, &ctx)).collect(),
    };
    let checks = records.into_iter().flat_map(|r| r.checks).collect();
    let lambda = match cfg.lambda {
        Some(l) => vec![l.to_string()],
        None => LambdaToken::defaults().iter().map(|l| l.to_string()).collect(),
    };
    Ok(VerificationReport {
        suite: cfg.suite.name().to_string(),
        parameters: Parameters {
            dim: cfg.dim,
            level: cfg.level,
            lambda,
            tolerance_overrides: cfg.tolerances.overrides().clone(),
            deterministic: cfg.execution == Execution::Sequential,
            disk_grid: DISK_GRID,
            kernel_samples: KERNEL_SAMPLES,
            moebius_samples: MOEBIUS_SAMPLES,
            algebra_samples: ALGEBRA_SAMPLES,
        },
        conventions: Conventions::current(),
        checks,
        wall_time_ms: start.elapsed().as_millis() as u64,
        seed: cfg.seed,
    })
}

/// JSON (one object, pretty-printed, stable key order) or CSV with the
/// header `name,value,tolerance,pass`.
pub fn emit_report(r: &VerificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "value", "tolerance", "pass"])
                .expect("in-memory write");
            for c in &r.checks {
                w.write_record([
                    c.name.clone(),
                    format_number(c.value),
                    format_number(c.tolerance),
                    c.pass.to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
    }
}

fn format_number(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:e}")
    }
}

/// Turns a computation that may fail into a check value; failures count as
/// an infinite deviation.
pub(crate) fn or_inf<E>(r: Result<f64, E>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!("moebius".parse::<Suite>().unwrap(), Suite::Moebius);
        assert!(matches!("nope".parse::<Suite>(), Err(ConfigError::UnknownSuite(_))));
        assert_eq!("0.5".parse::<LambdaToken>().unwrap(), LambdaToken::Real(0.5));
        assert_eq!("e1".parse::<LambdaToken>().unwrap(), LambdaToken::Generator(1));
        assert!("e9".parse::<LambdaToken>().is_err());
        assert!("x".parse::<LambdaToken>().is_err());
        assert!("inf".parse::<LambdaToken>().is_err());
        assert_eq!(LambdaToken::Generator(2).to_string(), "e2");
    }

    #[test]
    fn validation() {
        let mut cfg = SuiteConfig::new(Suite::Moebius);
        cfg.dim = Some(1);
        assert!(cfg.validate().is_err());
        cfg.dim = Some(4);
        assert!(cfg.validate().is_ok());
        cfg.lambda = Some(LambdaToken::Real(0.5));
        assert!(cfg.validate().is_err());

        let mut cfg = SuiteConfig::new(Suite::Mass);
        cfg.dim = Some(1);
        cfg.lambda = Some(LambdaToken::Generator(2));
        assert!(cfg.validate().is_err());
        cfg.lambda = Some(LambdaToken::Generator(1));
        assert!(cfg.validate().is_ok());
        cfg.level = 9;
        assert!(cfg.validate().is_err());

        let mut cfg = SuiteConfig::new(Suite::Disk);
        cfg.dim = Some(2);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn empty_report_formats() {
        let r = VerificationReport {
            suite: "algebra".into(),
            parameters: Parameters {
                dim: None,
                level: 4,
                lambda: vec![],
                tolerance_overrides: BTreeMap::new(),
                deterministic: true,
                disk_grid: DISK_GRID,
                kernel_samples: KERNEL_SAMPLES,
                moebius_samples: MOEBIUS_SAMPLES,
                algebra_samples: ALGEBRA_SAMPLES,
            },
            conventions: Conventions::current(),
            checks: vec![],
            wall_time_ms: 3,
            seed: 1,
        };
        let json = emit_report(&r, ReportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["checks"], serde_json::json!([]));
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["suite", "parameters", "conventions", "checks", "wall_time_ms", "seed"]);
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(emit_report(&r, ReportFormat::Csv), "name,value,tolerance,pass\n");
    }

    #[test]
    fn csv_rows() {
        let mut r = run_suite(&SuiteConfig::new(Suite::Algebra)).unwrap();
        r.checks.truncate(1);
        r.checks.push(Check::at_most("x.y", 2.0, 1.0));
        let csv = emit_report(&r, ReportFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[2], "x.y,2e0,1e0,false");
    }
}
