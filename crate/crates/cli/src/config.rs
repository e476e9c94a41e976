//! Sweep configuration: theorem selection, inclusive parameter ranges,
//! strategy, parallelism and output format.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qcongruences::Theorem;
use serde::{Deserialize, Serialize};

/// Configuration rejected before any case ran (CLI exit code 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

/// Inclusive integer range, written `a..b` or as a single integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    pub lo: u64,
    pub hi: u64,
}

impl Range {
    pub fn single(v: u64) -> Self {
        Range { lo: v, hi: v }
    }

    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| format!("invalid integer `{t}` in range `{s}`"))
        };
        let r = match s.split_once("..") {
            Some((a, b)) => Range {
                lo: parse(a)?,
                hi: parse(b)?,
            },
            None => Range::single(parse(s)?),
        };
        if r.lo > r.hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(r)
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TheoremArg {
    Lucas,
    Ljunggren,
    Wolstenholme,
    Glaisher,
    #[value(name = "q-lucas")]
    QLucas,
    #[value(name = "q-vandermonde")]
    QVandermonde,
    Straub,
    #[value(name = "shi-pan")]
    ShiPan,
    Andrews,
    Pan,
}

impl TheoremArg {
    pub fn theorem(self) -> Theorem {
        match self {
            TheoremArg::Lucas => Theorem::Lucas,
            TheoremArg::Ljunggren => Theorem::Ljunggren,
            TheoremArg::Wolstenholme => Theorem::Wolstenholme,
            TheoremArg::Glaisher => Theorem::Glaisher,
            TheoremArg::QLucas => Theorem::QLucas,
            TheoremArg::QVandermonde => Theorem::QVandermonde,
            TheoremArg::Straub => Theorem::Straub,
            TheoremArg::ShiPan => Theorem::ShiPan,
            TheoremArg::Andrews => Theorem::Andrews,
            TheoremArg::Pan => Theorem::Pan,
        }
    }

    /// Smallest prime the statement admits.
    pub fn min_prime(self) -> u64 {
        match self {
            TheoremArg::Lucas | TheoremArg::QLucas | TheoremArg::QVandermonde => 2,
            TheoremArg::Andrews => 3,
            _ => 5,
        }
    }

    /// Modulus exponent stated by the source material.
    pub fn default_power(self) -> u32 {
        match self {
            TheoremArg::Straub | TheoremArg::Pan | TheoremArg::Ljunggren => 3,
            TheoremArg::Wolstenholme | TheoremArg::Glaisher => 3,
            _ => 1,
        }
    }

    pub fn uses_p(self) -> bool {
        !matches!(self, TheoremArg::QVandermonde)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum StrategyArg {
    #[default]
    Auto,
    Full,
    Modular,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub theorem: TheoremArg,
    pub p_range: Range,
    pub k_range: Range,
    pub s_range: Range,
    pub m_range: Range,
    pub power: Option<u32>,
    pub strategy: StrategyArg,
    pub jobs: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), UsageError> {
        if self.jobs == 0 {
            return Err(UsageError("--jobs must be >= 1".into()));
        }
        if self.power == Some(0) {
            return Err(UsageError("--power must be >= 1".into()));
        }
        // a single explicitly requested p that cannot generate cases is an
        // error; composites inside a wider range are skipped instead
        if self.theorem.uses_p() && self.p_range.is_single() {
            let p = self.p_range.lo;
            if !qcongruences::is_prime(p) {
                return Err(UsageError(format!("p = {p} is not prime")));
            }
            if p < self.theorem.min_prime() {
                return Err(UsageError(format!(
                    "p = {p} is below the smallest prime this statement admits ({})",
                    self.theorem.min_prime()
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!("5..13".parse::<Range>().unwrap(), Range { lo: 5, hi: 13 });
        assert_eq!("7".parse::<Range>().unwrap(), Range::single(7));
        assert!("13..5".parse::<Range>().is_err());
        assert!("a..b".parse::<Range>().is_err());
    }
}
