use hfx_core::exec::Execution;
use hfx_core::harness::{
    emit_report, run_suite, ConfigError, LambdaToken, ReportFormat, Suite, SuiteConfig, VerificationReport,
};
use hfx_core::tolerances::{Tolerances, REGISTRY};
use std::collections::BTreeMap;

fn config(suite: Suite) -> SuiteConfig {
    let mut cfg = SuiteConfig::new(suite);
    cfg.execution = Execution::Sequential;
    cfg
}

fn strip_time(mut r: VerificationReport) -> VerificationReport {
    r.wall_time_ms = 0;
    r
}

#[test]
fn moebius_n3_seed7_passes() {
    let mut cfg = config(Suite::Moebius);
    cfg.dim = Some(3);
    cfg.seed = 7;
    let r = run_suite(&cfg).unwrap();
    assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    assert_eq!(r.checks.len(), 10);
    assert!(r.checks.iter().all(|c| c.name.starts_with("moebius.") && c.name.ends_with(".n3")));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert!(matches!("unknown".parse::<Suite>(), Err(ConfigError::UnknownSuite(_))));
}

#[test]
fn deterministic_runs_are_identical() {
    for suite in [Suite::Algebra, Suite::Disk, Suite::Kernel] {
        let cfg = config(suite);
        let a = strip_time(run_suite(&cfg).unwrap());
        let b = strip_time(run_suite(&cfg).unwrap());
        assert_eq!(emit_report(&a, ReportFormat::Json), emit_report(&b, ReportFormat::Json));
    }
}

#[test]
fn parallel_and_sequential_values_agree() {
    let mut cfg = config(Suite::Cauchy);
    let a = run_suite(&cfg).unwrap();
    cfg.execution = Execution::Parallel;
    let b = run_suite(&cfg).unwrap();
    assert_eq!(a.checks, b.checks);
}

#[test]
fn failing_check_is_recorded_not_raised() {
    let mut cfg = config(Suite::Moebius);
    cfg.dim = Some(2);
    cfg.tolerances =
        Tolerances::new(BTreeMap::from([("moebius.involution".to_string(), 0.0)])).unwrap();
    let r = run_suite(&cfg).unwrap();
    let failing: Vec<_> = r.failures().map(|c| c.name.as_str()).collect();
    assert!(failing.iter().all(|n| n.starts_with("moebius.involution")));
    let csv = emit_report(&r, ReportFormat::Csv);
    assert_eq!(csv.lines().next(), Some("name,value,tolerance,pass"));
    if !failing.is_empty() {
        assert!(csv.lines().any(|l| l.starts_with("moebius.involution") && l.ends_with(",false")));
    }
}

#[test]
fn json_report_round_trips() {
    let mut cfg = config(Suite::Mass);
    cfg.lambda = Some(LambdaToken::Generator(2));
    let r = run_suite(&cfg).unwrap();
    let text = emit_report(&r, ReportFormat::Json);
    let generic: serde_json::Value = serde_json::from_str(&text).unwrap();
    let back: VerificationReport = serde_json::from_value(generic.clone()).unwrap();
    assert_eq!(serde_json::to_value(&back).unwrap(), generic);
    assert_eq!(emit_report(&back, ReportFormat::Json), text);
    assert_eq!(r.parameters.lambda, vec!["e2".to_string()]);
}

#[test]
fn every_check_name_maps_to_a_registered_key() {
    let mut cfg = config(Suite::All);
    cfg.level = 2;
    let r = run_suite(&cfg).unwrap();
    for c in &r.checks {
        let key = REGISTRY
            .iter()
            .map(|(k, _, _)| *k)
            .filter(|k| c.name == *k || c.name.starts_with(&format!("{k}.")))
            .max_by_key(|k| k.len());
        assert!(key.is_some(), "{} has no tolerance key", c.name);
    }
    let suites: Vec<&str> = r.checks.iter().map(|c| c.name.split('.').next().unwrap()).collect();
    let mut sorted = suites.clone();
    sorted.sort();
    assert_eq!(suites, sorted, "checks are ordered by suite name");
}

#[test]
fn invalid_configs_name_the_key() {
    let mut cfg = config(Suite::Cauchy);
    cfg.dim = Some(4);
    assert!(matches!(run_suite(&cfg), Err(ConfigError::Invalid { key: "dim", .. })));
    let mut cfg = config(Suite::Kernel);
    cfg.lambda = Some(LambdaToken::Real(1.0));
    assert!(matches!(run_suite(&cfg), Err(ConfigError::Invalid { key: "lambda", .. })));
    let mut cfg = config(Suite::All);
    cfg.dim = Some(4);
    assert!(matches!(run_suite(&cfg), Err(ConfigError::Invalid { key: "dim", .. })));
}
