mod bench;
mod output;
mod verify;

use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use output::{FactorRecord, Format, RepeatRecord};
use subrep_core::{load_word, Finder, InputMode, RationalDelta, Word};

/// Maximal subrepetitions, runs and gapped repeats of a word.
#[derive(Parser)]
#[command(name = "subrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input file; stdin when absent or `-`.
    input: Option<PathBuf>,
    /// Read whitespace-separated integers instead of one line of bytes.
    #[arg(long)]
    ints: bool,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// All maximal delta-subrepetitions: `beg end period exponent`.
    Find {
        #[command(flatten)]
        input: Input,
        /// Decimal or `num/den`, strictly between 0 and 1.
        #[arg(long, value_parser = parse_delta)]
        delta: RationalDelta,
    },
    /// All runs: `beg end period exponent`.
    Runs {
        #[command(flatten)]
        input: Input,
    },
    /// Maximal alpha-gapped repeats: `beg period copylen end gapped`.
    Repeats {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_delta, conflicts_with = "alpha", required_unless_present = "alpha")]
        delta: Option<RationalDelta>,
        /// `alpha = 1/delta`, strictly greater than 1.
        #[arg(long, value_parser = parse_alpha)]
        alpha: Option<RationalDelta>,
    },
    /// Compares the fast path with the brute-force oracles.
    Verify {
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: verify::Mode,
        #[arg(long, default_value_t = 2)]
        sigma: u32,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Number of words in random mode.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated list of deltas.
        #[arg(long, value_delimiter = ',', value_parser = parse_delta, default_value = "1/2")]
        delta: Vec<RationalDelta>,
        /// Print one line per checked word and delta.
        #[arg(long)]
        verbose: bool,
        /// Drops one result from the fast path; checks that mismatches are caught.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// CSV timings per length.
    Bench {
        /// Comma-separated lengths; `2^k` is accepted.
        #[arg(long, value_delimiter = ',', value_parser = bench::parse_len, required = true)]
        len: Vec<usize>,
        #[arg(long, value_parser = parse_delta, default_value = "1/2")]
        delta: RationalDelta,
        #[arg(long, value_enum, default_value = "random")]
        gen: bench::Gen,
        #[arg(long, default_value_t = 2)]
        sigma: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_delta(text: &str) -> Result<RationalDelta, String> {
    RationalDelta::parse(text).map_err(|_| format!("delta must be a decimal or num/den in (0, 1), got {text:?}"))
}

fn parse_alpha(text: &str) -> Result<RationalDelta, String> {
    RationalDelta::parse_alpha(text).map_err(|_| format!("alpha must be a decimal or num/den above 1, got {text:?}"))
}

/// Failure with its exit status: 1 for I/O and input, 2 for usage, 3 for
/// a verification mismatch.
struct Failure(u8, anyhow::Error);

impl Input {
    fn word(&self) -> Result<Word, Failure> {
        let mut raw = Vec::new();
        match self.input.as_deref() {
            Some(p) if p.as_os_str() != "-" => {
                raw = std::fs::read(p)
                    .with_context(|| format!("cannot read {}", p.display()))
                    .map_err(|e| Failure(1, e))?;
            }
            _ => {
                io::stdin().read_to_end(&mut raw).context("cannot read stdin").map_err(|e| Failure(1, e))?;
            }
        }
        let mode = if self.ints { InputMode::Ints } else { InputMode::Bytes };
        load_word(&raw, mode).context("invalid input").map_err(|e| Failure(1, e))
    }
}

fn io_err(e: anyhow::Error) -> Failure {
    Failure(1, e)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Find { input, delta } => {
            let w = input.word()?;
            let finder = Finder::new(&w).map_err(|e| Failure(1, e.into()))?;
            let found = finder.find(&delta).map_err(|e| Failure(1, e.into()))?;
            let records: Vec<FactorRecord> = found.iter().map(FactorRecord::from).collect();
            output::write_factors(&mut out, &records, input.format).map_err(io_err)?;
        }
        Command::Runs { input } => {
            let w = input.word()?;
            let finder = Finder::new(&w).map_err(|e| Failure(1, e.into()))?;
            let mut records: Vec<FactorRecord> = finder.runs().iter().map(FactorRecord::from).collect();
            records.sort_by_key(|r| (r.beg, r.period));
            output::write_factors(&mut out, &records, input.format).map_err(io_err)?;
        }
        Command::Repeats { input, delta, alpha } => {
            let delta = delta.or(alpha).expect("clap requires one of --delta, --alpha");
            let w = input.word()?;
            let finder = Finder::new(&w).map_err(|e| Failure(1, e.into()))?;
            let records: Vec<RepeatRecord> = finder.gapped_repeats(&delta).iter().map(RepeatRecord::from).collect();
            output::write_repeats(&mut out, &records, input.format).map_err(io_err)?;
        }
        Command::Verify { mode, sigma, max_n, count, seed, delta, verbose, inject_fault } => {
            if sigma == 0 {
                return Err(Failure(2, anyhow::anyhow!("sigma must be at least 1")));
            }
            let cfg = verify::Config { mode, sigma, max_n, count, seed, deltas: delta, verbose, inject_fault };
            let ok = verify::run(&cfg, &mut out).map_err(|e| Failure(2, e))?;
            out.flush().map_err(|e| io_err(e.into()))?;
            if !ok {
                return Err(Failure(3, anyhow::anyhow!("fast path disagrees with the oracle")));
            }
        }
        Command::Bench { len, delta, gen, sigma, seed } => {
            bench::run(&len, &delta, gen, sigma, seed, &mut out).map_err(|e| Failure(2, e))?;
        }
    }
    out.flush().map_err(|e| io_err(e.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
