//! End-to-end tests of the qverify binary and the sweep runner.

use std::process::Command;

use qverify::config::{Format, Range, StrategyArg, SweepConfig, TheoremArg};
use qverify::sweep::{render_json, run_sweep, SweepSummary};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qverify"))
}

fn config(theorem: TheoremArg, p: Range) -> SweepConfig {
    SweepConfig {
        theorem,
        p_range: p,
        k_range: Range { lo: 0, hi: 3 },
        s_range: Range { lo: 0, hi: 3 },
        m_range: Range { lo: 1, hi: 2 },
        power: None,
        strategy: StrategyArg::Auto,
        jobs: 1,
        format: Format::Json,
        output: None,
    }
}

#[test]
fn straub_sweep_all_pass() {
    let summary = run_sweep(&config(TheoremArg::Straub, Range { lo: 5, hi: 13 })).unwrap();
    assert_eq!(summary.failed, 0);
    assert_eq!(summary.total_cases, summary.passed);
    // 8..10 and 12 are composite, 2 and 3 are below the p >= 5 gate is not in range
    assert_eq!(summary.skipped_nonprime, 5);
    assert_eq!(summary.total_cases, 4 * 16);
}

#[test]
fn composite_only_range_yields_warning_not_error() {
    let summary = run_sweep(&config(TheoremArg::Straub, Range { lo: 8, hi: 10 })).unwrap();
    assert_eq!(summary.total_cases, 0);
    assert_eq!(summary.skipped_nonprime, 3);
    let text = qverify::sweep::render_text(&summary);
    assert!(text.contains("warning"));
}

#[test]
fn explicit_composite_p_is_usage_error() {
    let err = run_sweep(&config(TheoremArg::Andrews, Range::single(4))).unwrap_err();
    assert!(err.0.contains("not prime"));
}

#[test]
fn reports_are_deterministic_across_job_counts() {
    let mut serial = config(TheoremArg::Straub, Range { lo: 5, hi: 11 });
    let mut parallel = serial.clone();
    parallel.jobs = 8;
    let mut a = run_sweep(&serial).unwrap();
    let mut b = run_sweep(&parallel).unwrap();
    // timings are the only nondeterministic field
    zero_times(&mut a);
    zero_times(&mut b);
    assert_eq!(render_json(&a), render_json(&b));
    serial.strategy = StrategyArg::Both;
    assert_eq!(run_sweep(&serial).unwrap().failed, 0);
}

fn zero_times(summary: &mut SweepSummary) {
    summary.wall_time_ms = 0;
    for case in &mut summary.cases {
        case.elapsed_ms = 0;
    }
}

#[test]
fn json_round_trips() {
    let summary = run_sweep(&config(TheoremArg::QLucas, Range { lo: 5, hi: 7 })).unwrap();
    let json = render_json(&summary);
    let parsed: SweepSummary = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed, summary);
}

#[test]
fn every_theorem_sweeps_clean() {
    for theorem in [
        TheoremArg::Lucas,
        TheoremArg::Ljunggren,
        TheoremArg::Wolstenholme,
        TheoremArg::Glaisher,
        TheoremArg::QLucas,
        TheoremArg::QVandermonde,
        TheoremArg::ShiPan,
        TheoremArg::Andrews,
        TheoremArg::Pan,
        TheoremArg::Straub,
    ] {
        let summary = run_sweep(&config(theorem, Range { lo: 2, hi: 13 })).unwrap();
        assert_eq!(summary.failed, 0, "{theorem:?}");
        assert!(summary.total_cases > 0, "{theorem:?}");
    }
}

#[test]
fn exit_codes() {
    // all pass -> 0
    let out = bin()
        .args([
            "verify",
            "--theorem",
            "straub",
            "--p",
            "5..7",
            "--k",
            "0..2",
            "--s",
            "0..2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    // usage error -> 2 (explicit composite p)
    let out = bin()
        .args(["verify", "--theorem", "andrews", "--p", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    // unknown theorem -> clap usage error, 2
    let out = bin()
        .args(["verify", "--theorem", "fermat", "--p", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn show_command_renders_polynomials() {
    let out = bin().args(["show", "4", "2"]).output().unwrap();
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "1 + q + 2*q^2 + q^3 + q^4"
    );
    let out = bin()
        .args(["show", "10", "5", "--mod-p", "5", "--power", "1"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
    let out = bin().args(["show", "3", "5"]).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0");
    let out = bin()
        .args(["show", "4", "2", "--mod-p", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_command() {
    let out = bin()
        .args(["bench", "--p", "5", "--k", "3", "--s", "1", "--reps", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("residues: equal across strategies"), "{text}");
    // repetitions = 0 is a usage error
    let out = bin()
        .args(["bench", "--p", "5", "--k", "3", "--s", "1", "--reps", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = bin()
        .args([
            "verify",
            "--theorem",
            "shi-pan",
            "--p",
            "5..11",
            "--format",
            "csv",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with(
        "theorem,p,k,s,m,power,strategy,passed,residue_degree,lhs_degree,elapsed_ms,note"
    ));
    assert_eq!(content.lines().count(), 1 + 3); // header + p in {5,7,11}
}
