//! Case-grid expansion and (optionally parallel) execution of verification
//! sweeps, with deterministic report ordering.

use qcongruences::congruences::{
    self, auto_strategy, gaussian_binomial_mod_strategy, ClassicalParams, Strategy,
    FULL_STRATEGY_LIMIT,
};
use qcongruences::{is_prime, CongruenceCase, Theorem, VerificationReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{StrategyArg, SweepConfig, TheoremArg, UsageError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub total_cases: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped_nonprime: u64,
    pub wall_time_ms: u64,
    pub cases: Vec<VerificationReport>,
}

#[derive(Debug, Clone, Copy)]
enum CaseSpec {
    Straub { p: u64, k: u64, s: u64 },
    Pan { p: u64, k: u64, s: u64 },
    QLucas { p: u64, a: u64, r: u64 },
    QVandermonde { m: u64, n: u64, h: u64 },
    ShiPan { p: u64 },
    Andrews { p: u64, m: u64 },
    Classical(ClassicalParams),
}

fn expand_grid(config: &SweepConfig) -> (Vec<CaseSpec>, u64) {
    let mut cases = Vec::new();
    let mut skipped = 0u64;

    if config.theorem == TheoremArg::QVandermonde {
        // no prime gate: k_range -> m, s_range -> n, m_range -> h
        for m in config.k_range.iter() {
            for n in config.s_range.iter() {
                for h in config.m_range.iter() {
                    cases.push(CaseSpec::QVandermonde { m, n, h });
                }
            }
        }
        return (cases, 0);
    }

    for p in config.p_range.iter() {
        if !is_prime(p) || p < config.theorem.min_prime() {
            skipped += 1;
            continue;
        }
        match config.theorem {
            TheoremArg::Straub => {
                for k in config.k_range.iter() {
                    for s in config.s_range.iter() {
                        cases.push(CaseSpec::Straub { p, k, s });
                    }
                }
            }
            TheoremArg::Pan => {
                for k in config.k_range.iter() {
                    for s in config.s_range.iter() {
                        cases.push(CaseSpec::Pan { p, k, s });
                    }
                }
            }
            TheoremArg::QLucas => {
                for a in config.k_range.iter() {
                    for r in config.s_range.iter() {
                        cases.push(CaseSpec::QLucas { p, a, r });
                    }
                }
            }
            TheoremArg::ShiPan => cases.push(CaseSpec::ShiPan { p }),
            TheoremArg::Andrews => {
                for m in config.m_range.iter().filter(|&m| m >= 1) {
                    cases.push(CaseSpec::Andrews { p, m });
                }
            }
            TheoremArg::Lucas => {
                for n in config.k_range.iter() {
                    for m in config.s_range.iter() {
                        cases.push(CaseSpec::Classical(ClassicalParams::Lucas { p, n, m }));
                    }
                }
            }
            TheoremArg::Ljunggren => {
                for k in config.k_range.iter() {
                    for s in config.s_range.iter() {
                        cases.push(CaseSpec::Classical(ClassicalParams::Ljunggren { p, k, s }));
                    }
                }
            }
            TheoremArg::Wolstenholme => {
                cases.push(CaseSpec::Classical(ClassicalParams::Wolstenholme { p }))
            }
            TheoremArg::Glaisher => {
                for m in config.m_range.iter() {
                    cases.push(CaseSpec::Classical(ClassicalParams::Glaisher { p, m }));
                }
            }
            TheoremArg::QVandermonde => unreachable!(),
        }
    }
    (cases, skipped)
}

fn resolve_strategy(arg: StrategyArg, n: u64) -> Strategy {
    match arg {
        StrategyArg::Full => Strategy::Full,
        StrategyArg::Modular => Strategy::Modular,
        StrategyArg::Auto | StrategyArg::Both => auto_strategy(n),
    }
}

/// Checks that the full and modular reductions of `binom(kp, sp)_q` agree;
/// both are canonical remainders, so they must be identical polynomials.
fn strategies_match(p: u64, k: u64, s: u64, e: u32) -> Option<bool> {
    if k * p > FULL_STRATEGY_LIMIT {
        return None;
    }
    let full = gaussian_binomial_mod_strategy(k * p, (s * p) as i64, p, e, Strategy::Full);
    let modular = gaussian_binomial_mod_strategy(k * p, (s * p) as i64, p, e, Strategy::Modular);
    Some(full == modular)
}

/// Runs a case aggregating all digit pairs (b, s) of the q-Lucas theorem for
/// fixed (p, a, r); one report per (p, a, r).
fn run_q_lucas_aggregate(p: u64, a: u64, r: u64) -> VerificationReport {
    let start = std::time::Instant::now();
    let mut passed = true;
    let mut residue_degree = None;
    let mut lhs_degree = None;
    for b in 0..p {
        for s in 0..p {
            let rep = congruences::verify_q_lucas(p, a, b, r, s)
                .expect("digits are in range and p is prime");
            lhs_degree = lhs_degree.max(rep.lhs_degree);
            if !rep.passed {
                passed = false;
                residue_degree = residue_degree.max(rep.residue_degree.or(Some(0)));
            }
        }
    }
    VerificationReport {
        case: CongruenceCase {
            theorem: Theorem::QLucas,
            p,
            k: a,
            s: r,
            m: 0,
            power: 1,
        },
        passed,
        residue_degree,
        lhs_degree,
        elapsed_ms: start.elapsed().as_millis() as u64,
        strategy: Strategy::Modular,
        note: None,
    }
}

fn run_case(spec: CaseSpec, config: &SweepConfig) -> VerificationReport {
    let both = config.strategy == StrategyArg::Both;
    let power = config
        .power
        .unwrap_or_else(|| config.theorem.default_power());
    let mut report = match spec {
        CaseSpec::Straub { p, k, s } => {
            let strategy = resolve_strategy(config.strategy, k * p);
            congruences::verify_straub_power(p, k, s, power, strategy)
                .expect("grid only contains admissible primes")
        }
        CaseSpec::Pan { p, k, s } => {
            let strategy = resolve_strategy(config.strategy, k * p);
            congruences::verify_pan_with(p, k, s, strategy)
                .expect("grid only contains admissible primes")
        }
        CaseSpec::QLucas { p, a, r } => run_q_lucas_aggregate(p, a, r),
        CaseSpec::QVandermonde { m, n, h } => congruences::verify_q_vandermonde(m, n, h),
        CaseSpec::ShiPan { p } => {
            congruences::verify_shi_pan(p).expect("grid only contains admissible primes")
        }
        CaseSpec::Andrews { p, m } => {
            congruences::verify_andrews(p, m).expect("grid only contains admissible primes")
        }
        CaseSpec::Classical(params) => {
            congruences::verify_classical(params).expect("grid only contains admissible primes")
        }
    };
    if both {
        if let CaseSpec::Straub { p, k, s } | CaseSpec::Pan { p, k, s } = spec {
            let e = if matches!(spec, CaseSpec::Straub { .. }) {
                power
            } else {
                3
            };
            match strategies_match(p, k, s, e) {
                Some(true) => append_note(&mut report, "strategies-agree"),
                Some(false) => {
                    report.passed = false;
                    append_note(&mut report, "strategy-mismatch");
                }
                None => append_note(&mut report, "full-strategy-skipped"),
            }
        }
    }
    report
}

fn append_note(report: &mut VerificationReport, note: &str) {
    match &mut report.note {
        Some(n) => {
            n.push_str("; ");
            n.push_str(note);
        }
        None => report.note = Some(note.to_string()),
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepSummary, UsageError> {
    config.validate()?;
    let start = std::time::Instant::now();
    let (specs, skipped_nonprime) = expand_grid(config);
    let mut reports: Vec<VerificationReport> = if config.jobs == 1 {
        specs.iter().map(|&s| run_case(s, config)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| UsageError(format!("failed to build worker pool: {e}")))?;
        pool.install(|| specs.par_iter().map(|&s| run_case(s, config)).collect())
    };
    // canonical ordering, independent of worker scheduling
    reports.sort_by_key(|r| r.case);
    let passed = reports.iter().filter(|r| r.passed).count() as u64;
    let failed = reports.len() as u64 - passed;
    Ok(SweepSummary {
        total_cases: reports.len() as u64,
        passed,
        failed,
        skipped_nonprime,
        wall_time_ms: start.elapsed().as_millis() as u64,
        cases: reports,
    })
}

fn degree_cell(d: &Option<u64>) -> String {
    match d {
        None => "zero".to_string(),
        Some(d) => d.to_string(),
    }
}

pub fn render_text(summary: &SweepSummary) -> String {
    let mut out = String::new();
    for r in &summary.cases {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let c = &r.case;
        out.push_str(&format!(
            "{status} {} p={} k={} s={} m={} power={} strategy={} residue_deg={} lhs_deg={} {}ms",
            c.theorem,
            c.p,
            c.k,
            c.s,
            c.m,
            c.power,
            r.strategy,
            degree_cell(&r.residue_degree),
            degree_cell(&r.lhs_degree),
            r.elapsed_ms,
        ));
        if let Some(note) = &r.note {
            out.push_str(&format!(" [{note}]"));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "total={} passed={} failed={} skipped_nonprime={} wall_time={}ms\n",
        summary.total_cases,
        summary.passed,
        summary.failed,
        summary.skipped_nonprime,
        summary.wall_time_ms,
    ));
    if summary.total_cases == 0 && summary.skipped_nonprime > 0 {
        out.push_str("warning: no case ran, every p in range was skipped\n");
    }
    out
}

pub fn render_json(summary: &SweepSummary) -> String {
    let mut s = serde_json::to_string_pretty(summary).expect("summary serializes");
    s.push('\n');
    s
}

pub fn render_csv(summary: &SweepSummary) -> String {
    let mut out = String::from(
        "theorem,p,k,s,m,power,strategy,passed,residue_degree,lhs_degree,elapsed_ms,note\n",
    );
    for r in &summary.cases {
        let c = &r.case;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            c.theorem,
            c.p,
            c.k,
            c.s,
            c.m,
            c.power,
            r.strategy,
            r.passed,
            degree_cell(&r.residue_degree),
            degree_cell(&r.lhs_degree),
            r.elapsed_ms,
            r.note.as_deref().unwrap_or(""),
        ));
    }
    out
}

pub fn render(summary: &SweepSummary, format: crate::config::Format) -> String {
    match format {
        crate::config::Format::Text => render_text(summary),
        crate::config::Format::Json => render_json(summary),
        crate::config::Format::Csv => render_csv(summary),
    }
}
