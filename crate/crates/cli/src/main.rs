use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use plcs_cli::bench::{run_bench, summarize};
use plcs_cli::config::{parse_sizes, BenchConfig, Mode};
use plcs_cli::selftest::run_selftest;
use plcs_cli::{resolve_threads, run_lcs_command, HarnessError, Result};

#[derive(Parser)]
#[command(name = "plcs", version, about = "Parallel longest common subsequence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Longest common subsequence of two inputs (file paths or literal strings).
    Lcs {
        a: String,
        b: String,
        /// Worker threads (default: $PLCS_NUM_THREADS, else all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Parse input files as FASTA and use the first record.
        #[arg(long)]
        fasta: bool,
    },
    /// Timing sweep over string sizes and thread counts, as CSV.
    Bench {
        /// Lengths of the fixed string, e.g. `2,4`.
        #[arg(long, default_value = "2,4")]
        fixed: String,
        /// Lengths of the swept string, e.g. `2..8192x2` or `16,32,64`.
        #[arg(long, default_value = "2..8192x2")]
        sweep: String,
        /// Thread counts, e.g. `8,32` (default: $PLCS_NUM_THREADS, else 8,32).
        #[arg(long)]
        threads: Option<String>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        alphabet: usize,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
        /// Rebuild sub-tables during path recovery instead of keeping them.
        #[arg(long)]
        low_memory: bool,
    },
    /// Run the built-in correctness checks.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Lcs { a, b, threads, fasta } => {
            let threads = resolve_threads(threads)?;
            run_lcs_command(&a, &b, threads, fasta, io::stdout().lock())?;
        }
        Command::Bench { fixed, sweep, threads, reps, seed, alphabet, csv, low_memory } => {
            let thread_counts = match threads {
                Some(list) => parse_sizes(&list)?,
                None if std::env::var_os(plcs_cli::THREADS_ENV).is_some() => vec![resolve_threads(None)?],
                None => vec![8, 32],
            };
            let cfg = BenchConfig {
                fixed_sizes: parse_sizes(&fixed)?,
                sweep_sizes: parse_sizes(&sweep)?,
                thread_counts,
                repetitions: reps,
                seed,
                alphabet_size: alphabet,
                low_memory,
                mode: Mode::Bench,
            };
            cfg.validate()?;
            let records = match csv {
                Some(path) => {
                    let file = File::create(&path)
                        .map_err(|source| HarnessError::Read { path: path.clone(), source })?;
                    run_bench(&cfg, BufWriter::new(file))?
                }
                None => run_bench(&cfg, io::stdout().lock())?,
            };
            eprint!("{}", summarize(&cfg, &records));
        }
        Command::Selftest { seed } => {
            let report = run_selftest(seed);
            let mut out = io::stdout().lock();
            writeln!(out, "{report}")?;
            if !report.passed() {
                return Err(HarnessError::SelftestFailed {
                    failed: report.failures(),
                    total: report.checks.len(),
                });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("plcs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
