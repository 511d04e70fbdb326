//! Parallel longest common subsequence over the LCS grid graph.
//!
//! The LCS of two strings is the heaviest source-to-sink path in a grid whose
//! diagonal edges mark matching symbols. This crate computes, for every start
//! column of the top row, the leftmost bottom-row column reachable with each
//! path weight (its *breakouts*), merging row slabs pairwise with a monotone
//! column-minima search, and then reads one optimal path back from the
//! recorded split weights.
//!
//! ```
//! use plcs_core::{lcs, Sequence};
//!
//! let r = lcs(&Sequence::from("gatttatgcagg"), &Sequence::from("tcaggatt"));
//! assert_eq!(r.length, 5);
//! ```

pub mod breakout;
pub mod monotone;
pub mod oracle;
pub mod seqcore;
pub mod solver;

pub use breakout::{base_case_row, prefix_min_scan_index, prefix_sum, BreakoutRow};
pub use monotone::{compose_cell, find_col_mins, find_min_index, CellOracle, ColMins};
pub use seqcore::{match_positions, GridModel, LcsResult, Reach, Sequence};
pub use solver::{
    assemble_lcs, build_cost_table, combine_row, lcs, lcs_length, lcs_with,
    recover_cross_vertices, CostTable, CrossVertexPath, Solver, SolverConfig,
};
