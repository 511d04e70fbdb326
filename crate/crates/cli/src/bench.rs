//! Thread-scaling sweeps with CSV output.
//!
//! One record per (threads, size_a, size_b, repetition). The CSV starts with
//! `#` comment lines describing the run, then the fixed header row.

use std::collections::{BTreeMap, HashSet};
use std::io::{Read, Write};
use std::time::Instant;

use plcs_core::{Sequence, Solver, SolverConfig};

use crate::config::BenchConfig;
use crate::error::{HarnessError, Result};
use crate::fit::fit_log_linear;
use crate::instance::{generate_pair, PRNG_DESCRIPTION};

pub const CSV_HEADER: [&str; 6] = ["threads", "size_a", "size_b", "rep", "wall_seconds", "lcs_length"];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub threads: usize,
    pub size_a: usize,
    pub size_b: usize,
    pub repetition: usize,
    pub wall_seconds: f64,
    pub lcs_length: usize,
}

impl BenchRecord {
    fn to_fields(&self) -> [String; 6] {
        [
            self.threads.to_string(),
            self.size_a.to_string(),
            self.size_b.to_string(),
            self.repetition.to_string(),
            format!("{:.9}", self.wall_seconds),
            self.lcs_length.to_string(),
        ]
    }
}

/// Every (size_a, size_b) cell of the sweep: fixed against sweep, then the
/// transposed pair, each cell once.
pub fn sweep_cells(cfg: &BenchConfig) -> Vec<(usize, usize)> {
    let mut seen = HashSet::new();
    let mut cells = Vec::new();
    for &f in &cfg.fixed_sizes {
        for &s in &cfg.sweep_sizes {
            for cell in [(f, s), (s, f)] {
                if seen.insert(cell) {
                    cells.push(cell);
                }
            }
        }
    }
    cells
}

/// Run the sweep, streaming CSV to `out`. Only the solver call is timed.
pub fn run_bench<W: Write>(cfg: &BenchConfig, mut out: W) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let hw = std::thread::available_parallelism().map_or(1, |n| n.get());
    writeln!(
        out,
        "# plcs bench seed={} alphabet={} low_memory={}",
        cfg.seed, cfg.alphabet_size, cfg.low_memory
    )?;
    writeln!(out, "# prng: {PRNG_DESCRIPTION}")?;
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;

    let solver_cfg = SolverConfig {
        low_memory: cfg.low_memory,
        ..SolverConfig::default()
    };
    let cells = sweep_cells(cfg);
    let mut records = Vec::new();
    for &threads in &cfg.thread_counts {
        if threads > hw {
            eprintln!("warning: {threads} threads requested, host reports {hw}");
        }
        let solver = Solver::new(threads, solver_cfg)
            .map_err(|e| HarnessError::Usage(format!("thread pool: {e}")))?;
        for &(size_a, size_b) in &cells {
            for rep in 0..cfg.repetitions {
                let (a, b) = generate_pair(cfg.seed, size_a, size_b, rep, cfg.alphabet_size);
                let (a, b) = (Sequence::from(a), Sequence::from(b));
                let t = Instant::now();
                let result = solver.lcs(&a, &b);
                let wall_seconds = t.elapsed().as_secs_f64();
                let record = BenchRecord {
                    threads,
                    size_a,
                    size_b,
                    repetition: rep,
                    wall_seconds,
                    lcs_length: result.length,
                };
                writer.write_record(record.to_fields())?;
                writer.flush()?;
                records.push(record);
            }
        }
    }
    writer.flush()?;
    Ok(records)
}

/// Parse CSV produced by [`run_bench`], checking the header exactly.
pub fn read_records<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(true)
        .from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(HarnessError::Usage(format!("unexpected CSV header {header:?}")));
    }
    let bad = |what: &str, line: &csv::StringRecord| {
        HarnessError::Usage(format!("bad {what} in CSV record {line:?}"))
    };
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row?;
        if row.len() != CSV_HEADER.len() {
            return Err(bad("field count", &row));
        }
        let int = |i: usize| row[i].parse::<usize>().map_err(|_| bad(CSV_HEADER[i], &row));
        let wall = &row[4];
        if !wall.bytes().all(|b| b.is_ascii_digit() || b == b'.') {
            return Err(bad("wall_seconds", &row));
        }
        records.push(BenchRecord {
            threads: int(0)?,
            size_a: int(1)?,
            size_b: int(2)?,
            repetition: int(3)?,
            wall_seconds: wall.parse().map_err(|_| bad("wall_seconds", &row))?,
            lcs_length: int(5)?,
        });
    }
    Ok(records)
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Human-readable summary: median time per cell, speedups against the
/// smallest thread count, and an exponential trend per (threads, fixed size).
pub fn summarize(cfg: &BenchConfig, records: &[BenchRecord]) -> String {
    let mut cells: BTreeMap<(usize, usize, usize), Vec<f64>> = BTreeMap::new();
    for r in records {
        cells.entry((r.size_a, r.size_b, r.threads)).or_default().push(r.wall_seconds);
    }
    let medians: BTreeMap<_, f64> = cells.into_iter().map(|(k, mut v)| (k, median(&mut v))).collect();
    let base_threads = cfg.thread_counts.iter().copied().min().unwrap_or(1);

    let mut out = String::from("size_a,size_b,threads,median_seconds,speedup_vs_min_threads\n");
    for (&(a, b, t), &m) in &medians {
        let speedup = medians
            .get(&(a, b, base_threads))
            .map_or(String::from("-"), |&base| format!("{:.3}", base / m));
        out += &format!("{a},{b},{t},{m:.6},{speedup}\n");
    }
    for &threads in &cfg.thread_counts {
        for &fixed in &cfg.fixed_sizes {
            let points: Vec<(f64, f64)> = records
                .iter()
                .filter(|r| r.threads == threads && r.size_a == fixed)
                .map(|r| (r.size_b as f64, r.wall_seconds))
                .collect();
            out += &match fit_log_linear(&points) {
                Ok(f) => format!(
                    "fit threads={threads} fixed={fixed}: time = {:.3e} * e^({:.4} * size), R^2 = {:.4}\n",
                    f.coefficient, f.exponent, f.r2
                ),
                Err(e) => format!("fit threads={threads} fixed={fixed}: error: {e}\n"),
            };
        }
    }
    out
}
