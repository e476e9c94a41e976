use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qverify::bench::{render_bench, run_bench};
use qverify::config::{Format, Range, StrategyArg, SweepConfig, TheoremArg, UsageError};
use qverify::sweep::{render, run_sweep};

#[derive(Parser, Debug)]
#[command(
    name = "qverify",
    about = "Exact verification sweeps for q-binomial congruences modulo powers of [p]_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// Congruence family to verify
    #[arg(long, value_enum)]
    theorem: TheoremArg,
    /// Primes to sweep, `a..b` inclusive or a single integer
    #[arg(long, value_parser = parse_range)]
    p: Option<Range>,
    #[arg(long, value_parser = parse_range, default_value = "0..4")]
    k: Range,
    #[arg(long, value_parser = parse_range, default_value = "0..4")]
    s: Range,
    #[arg(long, value_parser = parse_range, default_value = "1..3")]
    m: Range,
    /// Modulus exponent; defaults to the power each statement is made at
    #[arg(long)]
    power: Option<u32>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Worker count
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification sweep over a parameter grid
    Verify(VerifyArgs),
    /// Print a Gaussian binomial, optionally reduced mod [p]_q^e
    Show {
        n: u64,
        k: i64,
        #[arg(long = "mod-p")]
        mod_p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Time full vs modular strategies for binom(kp,sp)_q mod [p]_q^3
    Bench {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 3)]
        reps: u32,
    },
}

fn parse_range(s: &str) -> Result<Range, String> {
    s.parse()
}

fn cmd_verify(args: VerifyArgs) -> Result<bool, UsageError> {
    let p_range = args.p.unwrap_or(Range { lo: 2, hi: 13 });
    let config = SweepConfig {
        theorem: args.theorem,
        p_range,
        k_range: args.k,
        s_range: args.s,
        m_range: args.m,
        power: args.power,
        strategy: args.strategy,
        jobs: args.jobs,
        format: args.format,
        output: args.output,
    };
    let summary = run_sweep(&config)?;
    let rendered = render(&summary, config.format);
    match &config.output {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| UsageError(format!("cannot open {}: {e}", path.display())))?;
            f.write_all(rendered.as_bytes())
                .map_err(|e| UsageError(format!("write failed: {e}")))?;
        }
        None => print!("{rendered}"),
    }
    Ok(summary.failed == 0)
}

fn cmd_show(n: u64, k: i64, mod_p: Option<u64>, power: u32) -> Result<(), UsageError> {
    let poly = match mod_p {
        None => qcongruences::gaussian_binomial(n, k),
        Some(p) => {
            if !qcongruences::is_prime(p) {
                return Err(UsageError(format!("--mod-p {p} is not prime")));
            }
            if power == 0 {
                return Err(UsageError("--power must be >= 1".into()));
            }
            qcongruences::congruences::gaussian_binomial_mod_strategy(
                n,
                k,
                p,
                power,
                qcongruences::congruences::auto_strategy(n),
            )
        }
    };
    println!("{poly}");
    Ok(())
}

fn cmd_bench(p: u64, k: u64, s: u64, reps: u32) -> Result<(), UsageError> {
    let outcome = run_bench(p, k, s, reps)?;
    print!("{}", render_bench(p, k, s, &outcome));
    if outcome.residues_equal == Some(false) {
        return Err(UsageError("strategy residues disagree".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Show { n, k, mod_p, power } => cmd_show(n, k, mod_p, power).map(|()| true),
        Command::Bench { p, k, s, reps } => cmd_bench(p, k, s, reps).map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
