//! Domain types shared by every stage of the solver.
//!
//! The LCS of two byte strings is the maximum-weight path through an implicit
//! grid graph with `m + 1` rows (one per boundary of the row string) and
//! `n + 1` columns (one per boundary of the column string). A vertex `(r, c)`
//! has a weight-0 edge to its right and bottom neighbours and a weight-1
//! diagonal edge to `(r + 1, c + 1)` exactly when `row[r] == col[c]`. Weight-0
//! diagonals are never modelled.
//!
//! Rows and columns are 1-based at the API, matching the usual textbook
//! presentation of the grid. Storage everywhere else in the crate is 0-based.

use std::fmt;

/// An input string, treated as raw octets.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequence {
    symbols: Vec<u8>,
}

impl Sequence {
    pub fn new(symbols: impl Into<Vec<u8>>) -> Self {
        Sequence {
            symbols: symbols.into(),
        }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> u8 {
        assert!(
            pos >= 1 && pos <= self.symbols.len(),
            "position {pos} outside 1..={}",
            self.symbols.len()
        );
        self.symbols[pos - 1]
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.symbols
    }
}

impl From<&str> for Sequence {
    fn from(s: &str) -> Self {
        Sequence::new(s.as_bytes())
    }
}

impl From<&[u8]> for Sequence {
    fn from(s: &[u8]) -> Self {
        Sequence::new(s)
    }
}

impl From<Vec<u8>> for Sequence {
    fn from(v: Vec<u8>) -> Self {
        Sequence::new(v)
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence({:?})", String::from_utf8_lossy(&self.symbols))
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.symbols))
    }
}

/// The implicit grid graph spanned by two sequences. Never materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridModel {
    row_seq: Sequence,
    col_seq: Sequence,
}

impl GridModel {
    pub fn new(row_seq: impl Into<Sequence>, col_seq: impl Into<Sequence>) -> Self {
        let row_seq = row_seq.into();
        let col_seq = col_seq.into();
        // Column values and the INF sentinel (n + 2) are stored as u32.
        assert!(
            col_seq.len() < (u32::MAX - 2) as usize && row_seq.len() < u32::MAX as usize,
            "sequence too long for 32-bit column indices"
        );
        GridModel { row_seq, col_seq }
    }

    pub fn row_seq(&self) -> &Sequence {
        &self.row_seq
    }

    pub fn col_seq(&self) -> &Sequence {
        &self.col_seq
    }

    /// Number of string rows, `m`. The grid has `m + 1` vertex rows.
    pub fn m(&self) -> usize {
        self.row_seq.len()
    }

    /// Number of string columns, `n`. The grid has `n + 1` vertex columns.
    pub fn n(&self) -> usize {
        self.col_seq.len()
    }

    /// Sentinel value standing for INF in flat reach storage.
    pub fn inf(&self) -> u32 {
        inf_for(self.n())
    }

    /// Weight of the diagonal edge leaving vertex `(r, c)`.
    pub fn diagonal_weight(&self, r: usize, c: usize) -> u32 {
        assert!(r >= 1 && r <= self.m(), "row {r} outside 1..={}", self.m());
        assert!(c >= 1 && c <= self.n(), "column {c} outside 1..={}", self.n());
        u32::from(self.row_seq.at(r) == self.col_seq.at(c))
    }
}

/// INF sentinel for a grid with `n` string columns: one past the last legal
/// column `n + 1`.
#[inline]
pub fn inf_for(n: usize) -> u32 {
    n as u32 + 2
}

/// A bottom-row column reached by some path, or INF when no path exists.
///
/// Only comparison is defined; `Inf` orders above every column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reach {
    Col(u32),
    Inf,
}

impl Reach {
    pub fn is_inf(self) -> bool {
        matches!(self, Reach::Inf)
    }

    pub fn col(self) -> Option<u32> {
        match self {
            Reach::Col(c) => Some(c),
            Reach::Inf => None,
        }
    }

    /// Decode a raw stored value against the instance sentinel.
    #[inline]
    pub fn from_raw(raw: u32, inf: u32) -> Reach {
        if raw >= inf {
            Reach::Inf
        } else {
            Reach::Col(raw)
        }
    }

    #[inline]
    pub fn to_raw(self, inf: u32) -> u32 {
        match self {
            Reach::Col(c) => {
                debug_assert!(c < inf);
                c
            }
            Reach::Inf => inf,
        }
    }
}

impl fmt::Display for Reach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reach::Col(c) => write!(f, "{c}"),
            Reach::Inf => f.write_str("INF"),
        }
    }
}

/// One longest common subsequence together with where it occurs.
///
/// Positions are 1-based. When produced by [`crate::lcs`], `row_positions`
/// index the first argument and `col_positions` the second.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LcsResult {
    pub length: usize,
    pub subsequence: Sequence,
    pub row_positions: Vec<usize>,
    pub col_positions: Vec<usize>,
}

impl LcsResult {
    pub fn empty() -> Self {
        LcsResult::default()
    }

    /// Checks every structural invariant against the inputs the result claims
    /// to describe. Returns a description of the first violation.
    pub fn validate(&self, row_seq: &[u8], col_seq: &[u8]) -> Result<(), String> {
        let k = self.length;
        if self.subsequence.len() != k
            || self.row_positions.len() != k
            || self.col_positions.len() != k
        {
            return Err(format!(
                "length mismatch: length={k} subsequence={} rows={} cols={}",
                self.subsequence.len(),
                self.row_positions.len(),
                self.col_positions.len()
            ));
        }
        for (name, positions, seq) in [
            ("row", &self.row_positions, row_seq),
            ("col", &self.col_positions, col_seq),
        ] {
            if positions.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("{name} positions not strictly increasing"));
            }
            if positions.iter().any(|&p| p == 0 || p > seq.len()) {
                return Err(format!("{name} position out of range"));
            }
        }
        let pairs = self.row_positions.iter().zip(&self.col_positions);
        for (idx, (&sym, (&r, &c))) in self.subsequence.as_bytes().iter().zip(pairs).enumerate() {
            if row_seq[r - 1] != sym || col_seq[c - 1] != sym {
                return Err(format!("symbol mismatch at subsequence index {idx}"));
            }
        }
        Ok(())
    }
}

/// All 1-based positions where `seq` holds `symbol`, in increasing order.
pub fn match_positions(seq: &[u8], symbol: u8) -> Vec<usize> {
    seq.iter()
        .enumerate()
        .filter(|&(_, &s)| s == symbol)
        .map(|(i, _)| i + 1)
        .collect()
}
