//! Reference implementations for differential testing.
//!
//! Nothing here shares code with the parallel solver beyond the types in
//! [`crate::seqcore`]. Both routines are quadratic and single-threaded.

use crate::seqcore::{GridModel, LcsResult, Reach, Sequence};

/// The classic `(m + 1) x (n + 1)` LCS length table.
#[derive(Clone, Debug)]
pub struct DpTable {
    cols: usize,
    cells: Vec<u32>,
}

impl DpTable {
    pub fn build(a: &[u8], b: &[u8]) -> Self {
        let cols = b.len() + 1;
        let mut cells = vec![0u32; (a.len() + 1) * cols];
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                cells[i * cols + j] = if a[i - 1] == b[j - 1] {
                    cells[(i - 1) * cols + j - 1] + 1
                } else {
                    cells[(i - 1) * cols + j].max(cells[i * cols + j - 1])
                };
            }
        }
        DpTable { cols, cells }
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.cells[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.cells.len() / self.cols
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// Exact LCS by dynamic programming. Backtracking prefers the diagonal, then
/// up, then left.
pub fn dp_lcs(a: &Sequence, b: &Sequence) -> LcsResult {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    let table = DpTable::build(a, b);
    let (mut i, mut j) = (a.len(), b.len());
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    while i > 0 && j > 0 {
        if a[i - 1] == b[j - 1] {
            rows.push(i);
            cols.push(j);
            i -= 1;
            j -= 1;
        } else if table.get(i - 1, j) == table.get(i, j) {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    rows.reverse();
    cols.reverse();
    let subsequence: Vec<u8> = rows.iter().map(|&r| a[r - 1]).collect();
    LcsResult {
        length: rows.len(),
        subsequence: subsequence.into(),
        row_positions: rows,
        col_positions: cols,
    }
}

/// LCS length only.
pub fn dp_lcs_length(a: &[u8], b: &[u8]) -> usize {
    // Two-row variant; the full table is only needed for backtracking.
    let mut prev = vec![0u32; b.len() + 1];
    let mut cur = vec![0u32; b.len() + 1];
    for &x in a {
        for j in 1..=b.len() {
            cur[j] = if x == b[j - 1] {
                prev[j - 1] + 1
            } else {
                prev[j].max(cur[j - 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()] as usize
}

/// Maximum path weight from `(top_row, start)` to every vertex of the bottom
/// row of the slab, or `None` where the vertex is unreachable. Index 0 of the
/// result is column 1.
fn slab_best_weights(
    g: &GridModel,
    top_row: usize,
    bottom_row: usize,
    start: usize,
) -> Vec<Option<u32>> {
    let n = g.n();
    let row = g.row_seq().as_bytes();
    let col = g.col_seq().as_bytes();
    // best[c - 1] for the current grid row.
    let mut best: Vec<Option<u32>> = (1..=n + 1)
        .map(|c| if c >= start { Some(0) } else { None })
        .collect();
    for r in top_row..bottom_row {
        let mut next: Vec<Option<u32>> = vec![None; n + 1];
        for c in 1..=n + 1 {
            let mut w = best[c - 1];
            if c > 1 {
                w = w.max(next[c - 2]);
                if row[r - 1] == col[c - 2] {
                    if let Some(d) = best[c - 2] {
                        w = w.max(Some(d + 1));
                    }
                }
            }
            next[c - 1] = w;
        }
        best = next;
    }
    best
}

/// Leftmost bottom-row column of the slab `[top_row, bottom_row]` reachable
/// from `(top_row, start)` by a path of weight at least `weight`.
///
/// Explicit per-vertex DP over the slab. Meant for small grids.
pub fn grid_reach_oracle(
    g: &GridModel,
    top_row: usize,
    bottom_row: usize,
    start: usize,
    weight: usize,
) -> Reach {
    assert!(top_row >= 1 && top_row <= bottom_row && bottom_row <= g.m() + 1);
    assert!(start >= 1 && start <= g.n() + 1);
    slab_best_weights(g, top_row, bottom_row, start)
        .iter()
        .position(|w| w.is_some_and(|w| w as usize >= weight))
        .map_or(Reach::Inf, |idx| Reach::Col(idx as u32 + 1))
}

/// [`grid_reach_oracle`] for every weight `0..=max_weight` at once.
pub fn grid_breakouts(
    g: &GridModel,
    top_row: usize,
    bottom_row: usize,
    start: usize,
    max_weight: usize,
) -> Vec<Reach> {
    let best = slab_best_weights(g, top_row, bottom_row, start);
    (0..=max_weight)
        .map(|weight| {
            best.iter()
                .position(|w| w.is_some_and(|w| w as usize >= weight))
                .map_or(Reach::Inf, |idx| Reach::Col(idx as u32 + 1))
        })
        .collect()
}
