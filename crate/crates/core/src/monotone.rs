//! Column minima of an implicitly defined monotone matrix by bisection.
//!
//! The middle column's minimum is found by a full scan of the current row
//! range; columns to its left can only have their minima at or above that
//! row, columns to its right at or below. The two halves are independent and
//! run as a fork-join pair.
//!
//! Matrices met here may contain INF cells. A column whose minimum is INF
//! is taken to be followed only by all-INF columns, which holds for breakout
//! matrices because breakouts are nondecreasing in weight.

use crate::breakout::{first_min, prefix_min_scan_index_with_cutoff, DEFAULT_SCAN_CUTOFF};
use crate::seqcore::Reach;

/// Below this many columns the bisection stops forking.
pub const DEFAULT_JOIN_CUTOFF: usize = 32;

/// Pure, repeatable cell evaluation for a matrix that is never materialized.
pub trait CellOracle: Sync {
    type Value: Copy + Ord + Send + Sync;

    fn cell(&self, row: usize, col: usize) -> Self::Value;

    fn is_inf(&self, value: Self::Value) -> bool;

    /// Rows outside this inclusive window are known to be INF in `col`.
    fn finite_rows(&self, _col: usize) -> (usize, usize) {
        (0, usize::MAX)
    }
}

/// Tunables for the parallel parts of the column-minima search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonotoneConfig {
    pub scan_cutoff: usize,
    pub join_cutoff: usize,
}

impl Default for MonotoneConfig {
    fn default() -> Self {
        MonotoneConfig {
            scan_cutoff: DEFAULT_SCAN_CUTOFF,
            join_cutoff: DEFAULT_JOIN_CUTOFF,
        }
    }
}

/// Per-column argmin rows and minimum values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColMins<V> {
    pub argmin_row: Vec<usize>,
    pub min_value: Vec<V>,
}

impl<V: Copy> ColMins<V> {
    pub fn new(cols: usize, fill: V) -> Self {
        ColMins {
            argmin_row: vec![0; cols],
            min_value: vec![fill; cols],
        }
    }
}

/// Row in `[top, bottom]` holding the minimum of column `col`, smallest row
/// on ties, together with that minimum.
pub fn find_min_index<O: CellOracle>(
    oracle: &O,
    col: usize,
    top: usize,
    bottom: usize,
) -> (usize, O::Value) {
    find_min_index_with(oracle, col, top, bottom, DEFAULT_SCAN_CUTOFF)
}

fn find_min_index_with<O: CellOracle>(
    oracle: &O,
    col: usize,
    top: usize,
    bottom: usize,
    scan_cutoff: usize,
) -> (usize, O::Value) {
    assert!(top <= bottom, "empty row range {top}..={bottom}");
    let (lo, hi) = oracle.finite_rows(col);
    let (lo, hi) = (lo.max(top), hi.min(bottom));
    if lo > hi {
        return (top, oracle.cell(top, col));
    }
    let len = hi - lo + 1;
    let (value, offset) = if len < scan_cutoff {
        first_min((lo..=hi).map(|row| oracle.cell(row, col)))
    } else {
        use rayon::prelude::*;
        let column: Vec<O::Value> = (lo..=hi)
            .into_par_iter()
            .map(|row| oracle.cell(row, col))
            .collect();
        prefix_min_scan_index_with_cutoff(&column, scan_cutoff)
    };
    if oracle.is_inf(value) {
        return (top, value);
    }
    (lo + offset, value)
}

/// Column minima for columns `left..=right` over rows `top..=bottom`.
///
/// `out` must hold exactly `right - left + 1` columns; entry 0 is column
/// `left`. All-INF columns report row `top`, the same answer a sequential
/// first-wins scan gives.
pub fn find_col_mins<O: CellOracle>(
    oracle: &O,
    left: usize,
    right: usize,
    top: usize,
    bottom: usize,
    out: &mut ColMins<O::Value>,
) {
    find_col_mins_with(oracle, left, right, top, bottom, out, MonotoneConfig::default());
}

pub fn find_col_mins_with<O: CellOracle>(
    oracle: &O,
    left: usize,
    right: usize,
    top: usize,
    bottom: usize,
    out: &mut ColMins<O::Value>,
    cfg: MonotoneConfig,
) {
    assert!(left <= right && top <= bottom, "empty matrix");
    let cols = right - left + 1;
    assert_eq!(out.argmin_row.len(), cols);
    assert_eq!(out.min_value.len(), cols);
    find_col_mins_slices(
        oracle,
        left,
        top,
        bottom,
        &mut out.argmin_row,
        &mut out.min_value,
        cfg,
    );
}

/// Slice form used by the solver. Column `left + c` is written to index `c`.
pub(crate) fn find_col_mins_slices<O: CellOracle>(
    oracle: &O,
    left: usize,
    top: usize,
    bottom: usize,
    argmin: &mut [usize],
    mins: &mut [O::Value],
    cfg: MonotoneConfig,
) {
    Bisect { oracle, origin: top, cfg }.run(left, top, bottom, argmin, mins);
}

struct Bisect<'a, O> {
    oracle: &'a O,
    origin: usize,
    cfg: MonotoneConfig,
}

impl<O: CellOracle> Bisect<'_, O> {
    fn run(
        &self,
        left: usize,
        top: usize,
        bottom: usize,
        argmin: &mut [usize],
        mins: &mut [O::Value],
    ) {
        let cols = argmin.len();
        if cols == 0 {
            return;
        }
        // ceil((left + right) / 2) relative to `left`.
        let mid = cols / 2;
        let (row, value) =
            find_min_index_with(self.oracle, left + mid, top, bottom, self.cfg.scan_cutoff);

        let (arg_lo, arg_rest) = argmin.split_at_mut(mid);
        let (min_lo, min_rest) = mins.split_at_mut(mid);
        let (arg_mid, arg_hi) = arg_rest.split_first_mut().expect("mid column");
        let (min_mid, min_hi) = min_rest.split_first_mut().expect("mid column");

        if self.oracle.is_inf(value) {
            // Nothing to the right is reachable either.
            *arg_mid = self.origin;
            *min_mid = value;
            arg_hi.fill(self.origin);
            min_hi.fill(value);
            self.run(left, top, bottom, arg_lo, min_lo);
            return;
        }

        *arg_mid = row;
        *min_mid = value;
        if cols > self.cfg.join_cutoff {
            rayon::join(
                || self.run(left, top, row, arg_lo, min_lo),
                || self.run(left + mid + 1, row, bottom, arg_hi, min_hi),
            );
        } else {
            self.run(left, top, row, arg_lo, min_lo);
            self.run(left + mid + 1, row, bottom, arg_hi, min_hi);
        }
    }
}

/// Anything that can answer "the j-th breakout of start column i".
pub trait BreakoutLookup {
    /// `start` is a 1-based top-row column in `1..=n + 1`.
    fn breakout(&self, start: usize, weight: usize) -> Reach;
}

/// One term of the combine formula: spend `k` of the weight `j` in the upper
/// slab, the rest in the lower slab.
///
/// `k == 0` is "no weight above the boundary" and `k == j` is "all of it",
/// both covered by the 0th-breakout identity.
pub fn compose_cell<L: BreakoutLookup>(
    upper: &crate::breakout::BreakoutRow,
    lower: &L,
    k: usize,
    j: usize,
) -> Reach {
    assert!(k <= j, "split weight {k} exceeds total {j}");
    match upper.reach.get(k).copied().unwrap_or(Reach::Inf) {
        Reach::Inf => Reach::Inf,
        Reach::Col(mid) => lower.breakout(mid as usize, j - k),
    }
}

/// Raw-storage composition matrix for one start column: rows are split
/// weights `k`, columns are total weights `j`.
pub(crate) struct ComposeOracle<'a> {
    /// Upper breakout row for the start column, `upper[k]` for `k` in
    /// `0..upper.len()`.
    pub upper: &'a [u32],
    /// Lower table, row-major with `lower_width` weights per start column.
    pub lower: &'a [u32],
    pub lower_width: usize,
    pub inf: u32,
}

impl CellOracle for ComposeOracle<'_> {
    type Value = u32;

    #[inline]
    fn cell(&self, k: usize, j: usize) -> u32 {
        if k > j {
            return self.inf;
        }
        let rest = j - k;
        if rest >= self.lower_width {
            return self.inf;
        }
        let mid = self.upper[k];
        if mid >= self.inf {
            return self.inf;
        }
        self.lower[(mid as usize - 1) * self.lower_width + rest]
    }

    #[inline]
    fn is_inf(&self, value: u32) -> bool {
        value >= self.inf
    }

    fn finite_rows(&self, j: usize) -> (usize, usize) {
        ((j + 1).saturating_sub(self.lower_width), j)
    }
}
