//! Benchmark sweep configuration.

use crate::error::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Lcs,
    Bench,
    Selftest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    /// Lengths of the string held fixed.
    pub fixed_sizes: Vec<usize>,
    /// Lengths the other string sweeps through.
    pub sweep_sizes: Vec<usize>,
    pub thread_counts: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
    pub alphabet_size: usize,
    pub low_memory: bool,
    pub mode: Mode,
}

impl Default for BenchConfig {
    /// The grid of the reference scaling experiments: one string of length 2
    /// or 4 against 2, 4, ..., 8192, on 8 and 32 workers.
    fn default() -> Self {
        BenchConfig {
            fixed_sizes: vec![2, 4],
            sweep_sizes: parse_sizes("2..8192x2").expect("valid default"),
            thread_counts: vec![8, 32],
            repetitions: 3,
            seed: 42,
            alphabet_size: 4,
            low_memory: false,
            mode: Mode::Bench,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(HarnessError::Usage("repetitions must be at least 1".into()));
        }
        if !(2..=256).contains(&self.alphabet_size) {
            return Err(HarnessError::Usage("alphabet size must be in 2..=256".into()));
        }
        if self.thread_counts.contains(&0) {
            return Err(HarnessError::Usage("thread counts must be positive".into()));
        }
        Ok(())
    }
}

/// Parse a comma-separated list of sizes. Each item is a number `N`, a
/// geometric range `A..BxF` (A, A*F, ... up to B) or a unit-step range
/// `A..B`. Bounds are inclusive.
pub fn parse_sizes(spec: &str) -> Result<Vec<usize>> {
    let bad = |item: &str| HarnessError::Usage(format!("bad size list item {item:?}"));
    let num = |s: &str, item: &str| s.trim().parse::<usize>().map_err(|_| bad(item));
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((lo, rest)) = item.split_once("..") else {
            out.push(num(item, item)?);
            continue;
        };
        let lo = num(lo, item)?;
        if let Some((hi, factor)) = rest.split_once('x') {
            let (hi, factor) = (num(hi, item)?, num(factor, item)?);
            if factor < 2 || lo == 0 {
                return Err(bad(item));
            }
            let mut v = lo;
            while v <= hi {
                out.push(v);
                v = v.checked_mul(factor).ok_or_else(|| bad(item))?;
            }
        } else {
            let hi = num(rest, item)?;
            out.extend(lo..=hi);
        }
    }
    if out.is_empty() {
        return Err(HarnessError::Usage(format!("empty size list {spec:?}")));
    }
    Ok(out)
}
