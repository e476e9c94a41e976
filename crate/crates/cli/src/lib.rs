//! Sweep configuration, case-grid expansion, parallel execution and report
//! serialization behind the `qverify` binary.

pub mod bench;
pub mod config;
pub mod sweep;

pub use config::{Format, Range, StrategyArg, SweepConfig, TheoremArg, UsageError};
pub use sweep::{run_sweep, SweepSummary};
