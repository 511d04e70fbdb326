//! Divide and conquer over grid rows.
//!
//! A slab of grid rows is split in half, both halves are solved recursively,
//! and every start column of the merged slab is combined with the monotone
//! column-minima search:
//!
//! ```text
//! D(i, j) = min over k in 0..=j of  D_lower(D_upper(i, k), j - k)
//! ```
//!
//! The argmin `k` of each cell is kept as a trace so that one optimal path,
//! and from it one LCS, can be read back top-down without a second search.

use rayon::prelude::*;

use crate::breakout::{base_case_raw, prefix_sum_with_cutoff, BreakoutRow, DEFAULT_SCAN_CUTOFF};
use crate::monotone::{
    find_col_mins_slices, BreakoutLookup, CellOracle, ComposeOracle, MonotoneConfig,
    DEFAULT_JOIN_CUTOFF,
};
use crate::seqcore::{match_positions, GridModel, LcsResult, Reach, Sequence};

/// Knobs for a solver run. None of them change the result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Prefix scans shorter than this run sequentially.
    pub scan_cutoff: usize,
    /// Column-minima subproblems narrower than this do not fork.
    pub join_cutoff: usize,
    /// Drop child tables and traces after each combine and rebuild them
    /// along the recovery path instead.
    pub low_memory: bool,
    /// Check every composition matrix for monotonicity by brute force before
    /// searching it. Quadratic per start column; for tests.
    pub verify_monotone: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            scan_cutoff: DEFAULT_SCAN_CUTOFF,
            join_cutoff: DEFAULT_JOIN_CUTOFF,
            low_memory: false,
            verify_monotone: false,
        }
    }
}

impl SolverConfig {
    fn monotone(&self) -> MonotoneConfig {
        MonotoneConfig {
            scan_cutoff: self.scan_cutoff,
            join_cutoff: self.join_cutoff,
        }
    }
}

/// Breakout table of a slab of grid rows `top_row..=bottom_row`.
///
/// Holds one row of `width()` breakouts for every start column `1..=n + 1`.
#[derive(Clone, Debug)]
pub struct CostTable {
    top_row: usize,
    bottom_row: usize,
    n: usize,
    width: usize,
    inf: u32,
    reach: Vec<u32>,
    trace: Option<Vec<u32>>,
    children: Option<Box<(CostTable, CostTable)>>,
}

impl CostTable {
    pub fn top_row(&self) -> usize {
        self.top_row
    }

    pub fn bottom_row(&self) -> usize {
        self.bottom_row
    }

    /// Highest weight stored per row; anything above is INF.
    pub fn max_weight(&self) -> usize {
        self.width - 1
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_base_case(&self) -> bool {
        self.bottom_row <= self.top_row + 1
    }

    /// `weight`-th breakout of 1-based start column `start`.
    pub fn get(&self, start: usize, weight: usize) -> Reach {
        assert!(start >= 1 && start <= self.n + 1, "start {start} outside 1..={}", self.n + 1);
        if weight >= self.width {
            return Reach::Inf;
        }
        Reach::from_raw(self.reach[(start - 1) * self.width + weight], self.inf)
    }

    pub fn row(&self, start: usize) -> BreakoutRow {
        assert!(start >= 1 && start <= self.n + 1);
        let w = self.width;
        BreakoutRow::from_raw(start, &self.reach[(start - 1) * w..start * w], self.inf)
    }

    /// Split weight chosen for cell `(start, weight)`, when this table came
    /// from a combine and traces were kept.
    pub fn trace(&self, start: usize, weight: usize) -> Option<usize> {
        let trace = self.trace.as_ref()?;
        if weight >= self.width || start == 0 || start > self.n + 1 {
            return None;
        }
        Some(trace[(start - 1) * self.width + weight] as usize)
    }

    /// Upper and lower halves, when retained.
    pub fn children(&self) -> Option<(&CostTable, &CostTable)> {
        self.children.as_deref().map(|(u, l)| (u, l))
    }

    fn raw_row(&self, idx: usize) -> &[u32] {
        &self.reach[idx * self.width..(idx + 1) * self.width]
    }

    /// Checks the stored-row invariants and, where traces exist, that each
    /// trace attains its cell.
    pub fn validate(&self) -> Result<(), String> {
        for start in 1..=self.n + 1 {
            self.row(start).validate().map_err(|e| format!("row {start}: {e}"))?;
        }
        if let (Some((upper, lower)), Some(_)) = (self.children(), &self.trace) {
            for start in 1..=self.n + 1 {
                for j in 0..self.width {
                    let k = self.trace(start, j).expect("trace");
                    if k > j {
                        return Err(format!("trace ({start},{j}) = {k} > {j}"));
                    }
                    let got = crate::monotone::compose_cell(&upper.row(start), lower, k, j);
                    if got != self.get(start, j) {
                        return Err(format!("trace ({start},{j}) = {k} does not attain the cell"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl BreakoutLookup for CostTable {
    fn breakout(&self, start: usize, weight: usize) -> Reach {
        self.get(start, weight)
    }
}

/// Positions of every symbol of the row string within the column string.
struct MatchIndex {
    by_symbol: Vec<Option<Vec<usize>>>,
}

impl MatchIndex {
    fn new(g: &GridModel) -> Self {
        let mut by_symbol: Vec<Option<Vec<usize>>> = vec![None; 256];
        for &s in g.row_seq().as_bytes() {
            by_symbol[s as usize]
                .get_or_insert_with(|| match_positions(g.col_seq().as_bytes(), s));
        }
        MatchIndex { by_symbol }
    }

    fn get(&self, symbol: u8) -> &[usize] {
        self.by_symbol[symbol as usize].as_deref().unwrap_or(&[])
    }
}

struct Builder<'a> {
    g: &'a GridModel,
    matches: MatchIndex,
    cfg: SolverConfig,
}

impl<'a> Builder<'a> {
    fn new(g: &'a GridModel, cfg: SolverConfig) -> Self {
        Builder {
            g,
            matches: MatchIndex::new(g),
            cfg,
        }
    }

    fn width_for(&self, top_row: usize, bottom_row: usize) -> usize {
        (bottom_row - top_row).min(self.g.n()) + 1
    }

    fn build(&self, top_row: usize, bottom_row: usize) -> CostTable {
        if bottom_row <= top_row + 1 {
            return self.base_case(top_row, bottom_row);
        }
        let mid = (top_row + bottom_row) / 2;
        let (upper, lower) = rayon::join(
            || self.build(top_row, mid),
            || self.build(mid, bottom_row),
        );
        let mut table = self.combine(&upper, &lower);
        if !self.cfg.low_memory {
            table.children = Some(Box::new((upper, lower)));
        } else {
            table.trace = None;
        }
        table
    }

    fn base_case(&self, top_row: usize, bottom_row: usize) -> CostTable {
        let n = self.g.n();
        let inf = self.g.inf();
        let width = self.width_for(top_row, bottom_row);
        let mut reach = vec![inf; (n + 1) * width];
        for (idx, row) in reach.chunks_mut(width).enumerate() {
            row[0] = idx as u32 + 1;
        }
        if width > 1 {
            let symbol = self.g.row_seq().at(top_row);
            let mut first = vec![inf; n];
            base_case_raw(self.matches.get(symbol), inf, self.cfg.scan_cutoff, &mut first);
            for (idx, &c) in first.iter().enumerate() {
                reach[idx * width + 1] = c;
            }
        }
        CostTable {
            top_row,
            bottom_row,
            n,
            width,
            inf,
            reach,
            trace: None,
            children: None,
        }
    }

    fn combine(&self, upper: &CostTable, lower: &CostTable) -> CostTable {
        debug_assert_eq!(upper.bottom_row, lower.top_row);
        let n = self.g.n();
        let inf = self.g.inf();
        let width = self.width_for(upper.top_row, lower.bottom_row);
        let mut reach = vec![inf; (n + 1) * width];
        let mut trace = vec![0u32; (n + 1) * width];
        reach
            .par_chunks_mut(width)
            .zip(trace.par_chunks_mut(width))
            .enumerate()
            .for_each_init(
                || vec![0usize; width],
                |argmin, (idx, (reach_row, trace_row))| {
                    combine_raw(
                        upper.raw_row(idx),
                        lower,
                        inf,
                        self.cfg,
                        reach_row,
                        argmin,
                    );
                    for (t, &a) in trace_row.iter_mut().zip(argmin.iter()) {
                        *t = a as u32;
                    }
                },
            );
        CostTable {
            top_row: upper.top_row,
            bottom_row: lower.bottom_row,
            n,
            width,
            inf,
            reach,
            trace: Some(trace),
            children: None,
        }
    }
}

/// Combine one upper breakout row against the lower table. Writes
/// `reach_out.len()` breakouts and their first-wins split weights.
fn combine_raw(
    upper: &[u32],
    lower: &CostTable,
    inf: u32,
    cfg: SolverConfig,
    reach_out: &mut [u32],
    argmin_out: &mut [usize],
) {
    let oracle = ComposeOracle {
        upper,
        lower: &lower.reach,
        lower_width: lower.width,
        inf,
    };
    if cfg.verify_monotone {
        assert_monotone(&oracle, upper.len(), reach_out.len());
    }
    // Split weights past the upper row's last finite breakout are INF cells,
    // and so is every total weight beyond what both halves can supply.
    let rows = upper.iter().take_while(|&&u| u < inf).count();
    let cols = (rows - 1 + lower.width).min(reach_out.len());
    reach_out[cols..].fill(inf);
    argmin_out[cols..].fill(0);
    find_col_mins_slices(
        &oracle,
        0,
        0,
        rows - 1,
        &mut argmin_out[..cols],
        &mut reach_out[..cols],
        cfg.monotone(),
    );
    debug_assert!(
        finite_prefix_nondecreasing(argmin_out, reach_out, inf),
        "argmin rows decrease across finite columns"
    );
}

fn finite_prefix_nondecreasing(argmin: &[usize], mins: &[u32], inf: u32) -> bool {
    let finite = mins.iter().take_while(|&&v| v < inf).count();
    mins[finite..].iter().all(|&v| v >= inf) && argmin[..finite].windows(2).all(|w| w[0] <= w[1])
}

/// Brute-force monotonicity check of a composition matrix.
fn assert_monotone<O: CellOracle<Value = u32>>(oracle: &O, rows: usize, cols: usize) {
    let mut prev_row = 0;
    let mut seen_inf = false;
    for col in 0..cols {
        let (value, row) = (0..rows)
            .map(|r| (oracle.cell(r, col), r))
            .min()
            .expect("non-empty column");
        if oracle.is_inf(value) {
            seen_inf = true;
            continue;
        }
        assert!(!seen_inf, "finite column {col} after an all-INF column");
        assert!(row >= prev_row, "column {col}: argmin {row} above {prev_row}");
        prev_row = row;
    }
}

/// Merge an upper breakout row with the table of the slab below it.
///
/// Returns the merged breakout row (weights `0..=max_weight`) and the split
/// weight chosen for each of them.
pub fn combine_row(
    upper: &BreakoutRow,
    lower: &CostTable,
    max_weight: usize,
) -> (BreakoutRow, Vec<usize>) {
    assert!(!upper.reach.is_empty() && upper.reach[0] == Reach::Col(upper.start as u32));
    let inf = lower.inf;
    let raw: Vec<u32> = upper.reach.iter().map(|r| r.to_raw(inf)).collect();
    let mut reach = vec![inf; max_weight + 1];
    let mut argmin = vec![0usize; max_weight + 1];
    combine_raw(&raw, lower, inf, SolverConfig::default(), &mut reach, &mut argmin);
    (BreakoutRow::from_raw(upper.start, &reach, inf), argmin)
}

/// Breakout table of the slab `top_row..=bottom_row` (1-based grid rows).
pub fn build_cost_table(g: &GridModel, top_row: usize, bottom_row: usize) -> CostTable {
    build_cost_table_with(g, top_row, bottom_row, SolverConfig::default())
}

pub fn build_cost_table_with(
    g: &GridModel,
    top_row: usize,
    bottom_row: usize,
    cfg: SolverConfig,
) -> CostTable {
    assert!(
        top_row >= 1 && top_row <= bottom_row && bottom_row <= g.m() + 1,
        "slab {top_row}..={bottom_row} outside 1..={}",
        g.m() + 1
    );
    Builder::new(g, cfg).build(top_row, bottom_row)
}

/// LCS length read off the full-grid table: the heaviest weight with a
/// finite breakout from the source.
pub fn lcs_length(table: &CostTable) -> usize {
    assert_eq!(table.top_row, 1, "table must start at the first grid row");
    table.row(1).max_finite_weight()
}

/// Column of the leftmost vertex of a path on every grid row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossVertexPath {
    cols: Vec<usize>,
}

impl CrossVertexPath {
    /// `cols[r - 1]` is the column on grid row `r`.
    pub fn new(cols: Vec<usize>) -> Self {
        CrossVertexPath { cols }
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// Column of the cross vertex on 1-based grid row `r`.
    pub fn col(&self, r: usize) -> usize {
        self.cols[r - 1]
    }

    pub fn validate(&self, g: &GridModel) -> Result<(), String> {
        if self.cols.len() != g.m() + 1 {
            return Err(format!("{} rows, grid has {}", self.cols.len(), g.m() + 1));
        }
        if self.cols[0] != 1 {
            return Err("path does not start at the source".into());
        }
        if self.cols.windows(2).any(|w| w[1] < w[0]) {
            return Err("columns decrease".into());
        }
        if self.cols.iter().any(|&c| c == 0 || c > g.n() + 1) {
            return Err("column out of range".into());
        }
        Ok(())
    }
}

/// One path of weight `weight` from the source to the leftmost possible
/// bottom-row vertex, recovered from the traces in `table`.
pub fn recover_cross_vertices(g: &GridModel, table: &CostTable, weight: usize) -> CrossVertexPath {
    recover_cross_vertices_with(g, table, weight, SolverConfig::default())
}

pub fn recover_cross_vertices_with(
    g: &GridModel,
    table: &CostTable,
    weight: usize,
    cfg: SolverConfig,
) -> CrossVertexPath {
    assert!(table.top_row == 1 && table.bottom_row == g.m() + 1, "need the full-grid table");
    assert!(
        !table.get(1, weight).is_inf(),
        "no path of weight {weight}; LCS length is {}",
        lcs_length(table)
    );
    let mut cols = vec![0usize; g.m() + 1];
    let builder = Builder::new(g, SolverConfig { low_memory: true, ..cfg });
    recover(&builder, table, 1, weight, &mut cols);
    CrossVertexPath { cols }
}

fn recover(builder: &Builder<'_>, table: &CostTable, start: usize, weight: usize, cols: &mut [usize]) {
    let (top, bottom) = (table.top_row, table.bottom_row);
    let end = table.get(start, weight).col().expect("finite cell on recovery path") as usize;
    cols[top - 1] = start;
    cols[bottom - 1] = end;
    if table.is_base_case() {
        return;
    }
    match (table.children(), table.trace.as_ref()) {
        (Some((upper, lower)), Some(_)) => {
            let k = table.trace(start, weight).expect("trace");
            descend(builder, upper, lower, start, weight, k, cols);
        }
        _ => {
            // Low-memory table: rebuild the halves and redo this one combine.
            let mid = (top + bottom) / 2;
            let (upper, lower) = rayon::join(
                || builder.build(top, mid),
                || builder.build(mid, bottom),
            );
            let mut reach = vec![table.inf; weight + 1];
            let mut argmin = vec![0usize; weight + 1];
            let urow = upper.raw_row(start - 1);
            combine_raw(urow, &lower, table.inf, builder.cfg, &mut reach, &mut argmin);
            debug_assert_eq!(reach[weight] as usize, end);
            descend(builder, &upper, &lower, start, weight, argmin[weight], cols);
        }
    }
}

fn descend(
    builder: &Builder<'_>,
    upper: &CostTable,
    lower: &CostTable,
    start: usize,
    weight: usize,
    k: usize,
    cols: &mut [usize],
) {
    let cross = upper.get(start, k).col().expect("finite split") as usize;
    recover(builder, upper, start, k, cols);
    recover(builder, lower, cross, weight - k, cols);
}

/// Read the LCS off a cross-vertex path: grid row `r` contributes
/// `row[r]` when the path moves right on that row and the last step is the
/// matching diagonal into `(r + 1, cols[r + 1])`.
pub fn assemble_lcs(g: &GridModel, path: &CrossVertexPath) -> LcsResult {
    assemble_lcs_with(g, path, DEFAULT_SCAN_CUTOFF)
}

fn assemble_lcs_with(g: &GridModel, path: &CrossVertexPath, scan_cutoff: usize) -> LcsResult {
    debug_assert!(path.validate(g).is_ok());
    let row = g.row_seq().as_bytes();
    let col = g.col_seq().as_bytes();
    let marked: Vec<u32> = (0..g.m())
        .map(|r| {
            let (here, next) = (path.cols[r], path.cols[r + 1]);
            u32::from(next > here && row[r] == col[next - 2])
        })
        .collect();
    let offsets = prefix_sum_with_cutoff(&marked, scan_cutoff);
    let length = offsets.last().copied().unwrap_or(0) as usize;
    let mut subsequence = vec![0u8; length];
    let mut row_positions = vec![0usize; length];
    let mut col_positions = vec![0usize; length];
    for r in 0..g.m() {
        if marked[r] == 1 {
            let slot = offsets[r] as usize - 1;
            subsequence[slot] = row[r];
            row_positions[slot] = r + 1;
            col_positions[slot] = path.cols[r + 1] - 1;
        }
    }
    LcsResult {
        length,
        subsequence: subsequence.into(),
        row_positions,
        col_positions,
    }
}

/// Full pipeline on an explicit grid orientation.
pub fn solve_grid(g: &GridModel, cfg: SolverConfig) -> LcsResult {
    if g.m() == 0 || g.n() == 0 {
        return LcsResult::empty();
    }
    let table = build_cost_table_with(g, 1, g.m() + 1, cfg);
    let length = lcs_length(&table);
    let path = recover_cross_vertices_with(g, &table, length, cfg);
    let result = assemble_lcs_with(g, &path, cfg.scan_cutoff);
    debug_assert_eq!(result.length, length);
    result
}

/// Longest common subsequence of `a` and `b`.
///
/// The shorter input indexes the grid rows. Positions in the result refer to
/// `a` (`row_positions`) and `b` (`col_positions`) regardless.
pub fn lcs(a: &Sequence, b: &Sequence) -> LcsResult {
    lcs_with(a, b, SolverConfig::default())
}

pub fn lcs_with(a: &Sequence, b: &Sequence, cfg: SolverConfig) -> LcsResult {
    if a.len() <= b.len() {
        solve_grid(&GridModel::new(a.clone(), b.clone()), cfg)
    } else {
        let r = solve_grid(&GridModel::new(b.clone(), a.clone()), cfg);
        LcsResult {
            length: r.length,
            subsequence: r.subsequence,
            row_positions: r.col_positions,
            col_positions: r.row_positions,
        }
    }
}

/// Runs the solver on a dedicated worker pool of a fixed size.
pub struct Solver {
    cfg: SolverConfig,
    pool: rayon::ThreadPool,
}

impl Solver {
    pub fn new(threads: usize, cfg: SolverConfig) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()?;
        Ok(Solver { cfg, pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn config(&self) -> SolverConfig {
        self.cfg
    }

    pub fn lcs(&self, a: &Sequence, b: &Sequence) -> LcsResult {
        self.pool.install(|| lcs_with(a, b, self.cfg))
    }

    /// Run an arbitrary closure on this solver's pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }
}
