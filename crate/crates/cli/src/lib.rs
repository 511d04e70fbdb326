//! Harness around `plcs-core`: input loading, the `lcs` command, benchmark
//! sweeps with CSV output, trend fitting and the built-in self-test.

pub mod bench;
pub mod config;
pub mod error;
pub mod fit;
pub mod ingest;
pub mod instance;
pub mod selftest;

use std::io::Write;

use plcs_core::{LcsResult, Sequence, Solver, SolverConfig};

pub use error::{HarnessError, Result};

/// Environment variable consulted for the worker count when `--threads` is
/// not given.
pub const THREADS_ENV: &str = "PLCS_NUM_THREADS";

/// Worker count: explicit flag, else the environment, else the host.
pub fn resolve_threads(flag: Option<usize>) -> Result<usize> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&t: &usize| t > 0)
            .ok_or_else(|| HarnessError::Usage(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn join_positions(p: &[usize]) -> String {
    p.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn write_lcs_result<W: Write>(mut out: W, r: &LcsResult) -> std::io::Result<()> {
    writeln!(out, "length: {}", r.length)?;
    writeln!(out, "lcs: {}", r.subsequence)?;
    writeln!(out, "positions_a: {}", join_positions(&r.row_positions))?;
    writeln!(out, "positions_b: {}", join_positions(&r.col_positions))
}

/// Load both operands, solve on `threads` workers and print the result.
pub fn run_lcs_command<W: Write>(
    input_a: &str,
    input_b: &str,
    threads: usize,
    fasta: bool,
    out: W,
) -> Result<LcsResult> {
    let a = Sequence::from(ingest::load_operand(input_a, fasta)?);
    let b = Sequence::from(ingest::load_operand(input_b, fasta)?);
    let solver = Solver::new(threads, SolverConfig::default())
        .map_err(|e| HarnessError::Usage(format!("thread pool: {e}")))?;
    let r = solver.lcs(&a, &b);
    write_lcs_result(out, &r)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_example_pair() {
        let mut out = Vec::new();
        let r = run_lcs_command("gatttatgcagg", "tcaggatt", 2, false, &mut out).unwrap();
        assert_eq!(r.length, 5);
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("length: 5\n"));
    }

    #[test]
    fn fasta_matches_inline() {
        let dir = tempfile::tempdir().unwrap();
        let fa = dir.path().join("a.fa");
        let fb = dir.path().join("b.fa");
        std::fs::write(&fa, ">a\ngatttat\ngcagg\n").unwrap();
        std::fs::write(&fb, ">b\ntcaggatt\n").unwrap();
        let mut from_files = Vec::new();
        run_lcs_command(fa.to_str().unwrap(), fb.to_str().unwrap(), 1, true, &mut from_files).unwrap();
        let mut inline = Vec::new();
        run_lcs_command("gatttatgcagg", "tcaggatt", 1, false, &mut inline).unwrap();
        assert_eq!(from_files, inline);
    }

    #[test]
    fn empty_file_gives_zero() {
        let dir = tempfile::tempdir().unwrap();
        let e = dir.path().join("empty");
        std::fs::write(&e, "").unwrap();
        let r = run_lcs_command(e.to_str().unwrap(), "acgt", 1, false, Vec::new()).unwrap();
        assert_eq!(r.length, 0);
    }

    #[test]
    fn explicit_threads_win() {
        assert_eq!(resolve_threads(Some(3)).unwrap(), 3);
    }
}
