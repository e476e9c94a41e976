//! Timing of the full vs modular strategies for `binom(kp, sp)_q mod [p]_q^3`.

use qcongruences::congruences::{gaussian_binomial_mod_strategy, Strategy, FULL_STRATEGY_LIMIT};
use qcongruences::{is_prime, IntPoly};

use crate::config::UsageError;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub strategy: Strategy,
    pub runs_ms: Vec<u64>,
    pub residue_degree: Option<u64>,
    pub peak_coeff_bits: u64,
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    /// Set when the full strategy was skipped for being out of bounds.
    pub full_skipped: Option<String>,
    /// Residues from both strategies were compared and found equal.
    pub residues_equal: Option<bool>,
}

fn time_strategy(p: u64, k: u64, s: u64, strategy: Strategy, reps: u32) -> (BenchRow, IntPoly) {
    let mut runs_ms = Vec::with_capacity(reps as usize);
    let mut residue = IntPoly::zero();
    for _ in 0..reps {
        let start = std::time::Instant::now();
        residue = gaussian_binomial_mod_strategy(k * p, (s * p) as i64, p, 3, strategy);
        runs_ms.push(start.elapsed().as_millis() as u64);
    }
    let row = BenchRow {
        strategy,
        runs_ms,
        residue_degree: residue.degree().finite().map(|d| d as u64),
        peak_coeff_bits: residue.max_coeff_bits(),
    };
    (row, residue)
}

pub fn run_bench(p: u64, k: u64, s: u64, reps: u32) -> Result<BenchOutcome, UsageError> {
    if reps == 0 {
        return Err(UsageError("--reps must be >= 1".into()));
    }
    if !is_prime(p) {
        return Err(UsageError(format!("p = {p} is not prime")));
    }
    let mut rows = Vec::new();
    let mut full_residue = None;
    let mut full_skipped = None;
    if k * p <= FULL_STRATEGY_LIMIT {
        let (row, res) = time_strategy(p, k, s, Strategy::Full, reps);
        rows.push(row);
        full_residue = Some(res);
    } else {
        full_skipped = Some(format!(
            "full strategy skipped: kp = {} exceeds the safety bound {}",
            k * p,
            FULL_STRATEGY_LIMIT
        ));
    }
    let (row, modular_residue) = time_strategy(p, k, s, Strategy::Modular, reps);
    rows.push(row);
    let residues_equal = full_residue.map(|r| r == modular_residue);
    Ok(BenchOutcome {
        rows,
        full_skipped,
        residues_equal,
    })
}

pub fn render_bench(p: u64, k: u64, s: u64, outcome: &BenchOutcome) -> String {
    let mut out = format!("bench binom({}, {})_q mod [{p}]_q^3\n", k * p, s * p);
    if let Some(note) = &outcome.full_skipped {
        out.push_str(&format!("note: {note}\n"));
    }
    out.push_str("strategy  wall_ms  residue_degree  peak_coeff_bits\n");
    for row in &outcome.rows {
        let times: Vec<String> = row.runs_ms.iter().map(|t| t.to_string()).collect();
        let deg = match row.residue_degree {
            None => "zero".to_string(),
            Some(d) => d.to_string(),
        };
        out.push_str(&format!(
            "{:<9} {:<8} {:<15} {}\n",
            row.strategy.to_string(),
            times.join("/"),
            deg,
            row.peak_coeff_bits,
        ));
    }
    match outcome.residues_equal {
        Some(true) => out.push_str("residues: equal across strategies\n"),
        Some(false) => out.push_str("residues: MISMATCH across strategies\n"),
        None => {}
    }
    out
}
