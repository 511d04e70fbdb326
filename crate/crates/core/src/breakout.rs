//! Two-row base case and the parallel prefix primitives.
//!
//! For a slab made of grid rows `h` and `h + 1`, the first breakout of top-row
//! column `i` is one past the first column `c >= i` whose symbol matches
//! `row[h]`: the path walks right to `(h, c)` and takes the diagonal. Columns
//! past the last match cannot gain weight and get INF.

use rayon::prelude::*;

use crate::seqcore::{GridModel, Reach};

/// Below this many elements the prefix primitives run sequentially.
pub const DEFAULT_SCAN_CUTOFF: usize = 4096;

/// Breakout columns of one top-row start column, indexed by path weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakoutRow {
    /// 1-based top-row column.
    pub start: usize,
    /// `reach[j]` is the j-th breakout; `reach[0] == start`.
    pub reach: Vec<Reach>,
}

impl BreakoutRow {
    pub fn from_raw(start: usize, raw: &[u32], inf: u32) -> Self {
        BreakoutRow {
            start,
            reach: raw.iter().map(|&r| Reach::from_raw(r, inf)).collect(),
        }
    }

    /// Largest weight with a finite breakout.
    pub fn max_finite_weight(&self) -> usize {
        self.reach.iter().take_while(|r| !r.is_inf()).count().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.reach.first() != Some(&Reach::Col(self.start as u32)) {
            return Err(format!("reach[0] != start {}", self.start));
        }
        let mut seen_inf = false;
        for w in self.reach.windows(2) {
            if w[0].is_inf() {
                seen_inf = true;
            }
            if seen_inf && !w[1].is_inf() {
                return Err("finite breakout after INF".into());
            }
            if w[1] < w[0] {
                return Err("breakouts decrease with weight".into());
            }
        }
        Ok(())
    }
}

/// First breakout of every top-row column `1..=n` of the slab `(h, h + 1)`.
///
/// `match_idx` must be the 1-based positions in the column string of
/// `row[h]`. Built by scattering gaps between consecutive matches, taking a
/// prefix sum and filling the tail with INF.
pub fn base_case_row(g: &GridModel, h: usize, match_idx: &[usize]) -> Vec<Reach> {
    assert!(h >= 1 && h <= g.m(), "row {h} outside 1..={}", g.m());
    debug_assert!(match_idx
        .iter()
        .all(|&c| g.col_seq().at(c) == g.row_seq().at(h)));
    let inf = g.inf();
    let mut raw = vec![0u32; g.n()];
    base_case_raw(match_idx, inf, DEFAULT_SCAN_CUTOFF, &mut raw);
    raw.into_iter().map(|r| Reach::from_raw(r, inf)).collect()
}

/// Raw form of [`base_case_row`], writing `out.len() == n` entries.
pub(crate) fn base_case_raw(match_idx: &[usize], inf: u32, cutoff: usize, out: &mut [u32]) {
    let Some(&last) = match_idx.last() else {
        out.fill(inf);
        return;
    };
    let mut gaps = vec![0u32; last];
    gaps[0] = match_idx[0] as u32 + 1;
    for w in match_idx.windows(2) {
        gaps[w[0]] = (w[1] - w[0]) as u32;
    }
    let sums = prefix_sum_with_cutoff(&gaps, cutoff);
    out[..last].copy_from_slice(&sums);
    // Column `last` itself has no match at or after `last + 1`.
    out[last..].fill(inf);
}

/// Inclusive prefix sums.
pub fn prefix_sum<T>(values: &[T]) -> Vec<T>
where
    T: Copy + Default + Send + Sync + std::ops::Add<Output = T>,
{
    prefix_sum_with_cutoff(values, DEFAULT_SCAN_CUTOFF)
}

pub fn prefix_sum_with_cutoff<T>(values: &[T], cutoff: usize) -> Vec<T>
where
    T: Copy + Default + Send + Sync + std::ops::Add<Output = T>,
{
    let mut out = values.to_vec();
    if out.len() < cutoff.max(2) {
        scan_in_place(&mut out);
        return out;
    }
    let chunk = out
        .len()
        .div_ceil(rayon::current_num_threads() * 4)
        .max(cutoff / 4)
        .max(1);
    let totals: Vec<T> = out
        .par_chunks_mut(chunk)
        .map(|c| {
            scan_in_place(c);
            *c.last().expect("non-empty chunk")
        })
        .collect();
    let mut offsets = Vec::with_capacity(totals.len());
    let mut acc = T::default();
    for t in totals {
        offsets.push(acc);
        acc = acc + t;
    }
    out.par_chunks_mut(chunk)
        .zip(offsets)
        .skip(1)
        .for_each(|(c, off)| c.iter_mut().for_each(|v| *v = off + *v));
    out
}

fn scan_in_place<T: Copy + std::ops::Add<Output = T>>(values: &mut [T]) {
    for k in 1..values.len() {
        values[k] = values[k - 1] + values[k];
    }
}

/// Minimum of `values` and the smallest index attaining it.
pub fn prefix_min_scan_index<T>(values: &[T]) -> (T, usize)
where
    T: Copy + Ord + Send + Sync,
{
    prefix_min_scan_index_with_cutoff(values, DEFAULT_SCAN_CUTOFF)
}

pub fn prefix_min_scan_index_with_cutoff<T>(values: &[T], cutoff: usize) -> (T, usize)
where
    T: Copy + Ord + Send + Sync,
{
    assert!(!values.is_empty(), "minimum of an empty sequence");
    if values.len() < cutoff {
        return first_min(values.iter().copied());
    }
    // Doubling scan. In round `exp`, every element whose index has bit `exp`
    // set folds in the running minimum ending just below its block, i.e. the
    // last element of the lower half of its 2*exp block. Earlier elements win
    // ties.
    let mut prefix: Vec<(T, usize)> = values.iter().copied().zip(0..).collect();
    let mut exp = 1;
    while exp < prefix.len() {
        prefix.par_chunks_mut(2 * exp).for_each(|block| {
            if block.len() <= exp {
                return;
            }
            let (lower, upper) = block.split_at_mut(exp);
            let carry = lower[exp - 1];
            for slot in upper {
                if carry.0 <= slot.0 {
                    *slot = carry;
                }
            }
        });
        exp <<= 1;
    }
    prefix[prefix.len() - 1]
}

/// Sequential first-wins argmin over a non-empty iterator.
#[inline]
pub(crate) fn first_min<T: Ord + Copy>(mut it: impl Iterator<Item = T>) -> (T, usize) {
    let mut best = it.next().expect("non-empty");
    let mut best_idx = 0;
    for (idx, v) in it.enumerate() {
        if v < best {
            best = v;
            best_idx = idx + 1;
        }
    }
    (best, best_idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::match_positions;
    use proptest::prelude::*;

    const INF: Reach = Reach::Inf;
    fn c(v: u32) -> Reach {
        Reach::Col(v)
    }

    /// Direct reading of the breakout definition: one past the first match at
    /// or after `i`.
    fn base_case_by_formula(col: &[u8], symbol: u8) -> Vec<Reach> {
        let matches = match_positions(col, symbol);
        (1..=col.len())
            .map(|i| {
                matches
                    .iter()
                    .find(|&&j| j >= i)
                    .map_or(INF, |&j| c(j as u32 + 1))
            })
            .collect()
    }

    #[test]
    fn base_case_worked_example() {
        let g = GridModel::new("tcaggatt", "gatttatgcagg");
        let idx = match_positions(g.col_seq().as_bytes(), g.row_seq().at(1));
        assert_eq!(idx, vec![3, 4, 5, 7]);
        assert_eq!(
            base_case_row(&g, 1, &idx),
            vec![c(4), c(4), c(4), c(5), c(6), c(8), c(8), INF, INF, INF, INF, INF]
        );
    }

    #[test]
    fn base_case_trivial() {
        let g = GridModel::new("z", "abcd");
        assert_eq!(base_case_row(&g, 1, &[]), vec![INF; 4]);
        let g = GridModel::new("t", "ttt");
        assert_eq!(base_case_row(&g, 1, &[1, 2, 3]), vec![c(2), c(3), c(4)]);
    }

    #[test]
    fn base_case_parallel_path() {
        let col: Vec<u8> = (0..20_000u32).map(|i| (i * 7 % 5) as u8).collect();
        let idx = match_positions(&col, 3);
        let mut raw = vec![0u32; col.len()];
        base_case_raw(&idx, col.len() as u32 + 2, 64, &mut raw);
        let inf = col.len() as u32 + 2;
        let got: Vec<Reach> = raw.iter().map(|&r| Reach::from_raw(r, inf)).collect();
        assert_eq!(got, base_case_by_formula(&col, 3));
    }

    #[test]
    fn prefix_sum_examples() {
        assert_eq!(prefix_sum(&[4u32, 0, 0, 1, 1, 2]), vec![4, 4, 4, 5, 6, 8]);
        assert!(prefix_sum::<u32>(&[]).is_empty());
        assert_eq!(prefix_sum(&[1u64, 1, 1, 1]), vec![1, 2, 3, 4]);
    }

    #[test]
    fn prefix_sum_large_matches_fold() {
        let values: Vec<u64> = (0..100_000u64).map(|i| (i * 2654435761) % 17).collect();
        let mut acc = 0;
        let fold: Vec<u64> = values
            .iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect();
        assert_eq!(prefix_sum(&values), fold);
        assert_eq!(prefix_sum_with_cutoff(&values, 8), fold);
    }

    #[test]
    fn prefix_min_examples() {
        assert_eq!(prefix_min_scan_index(&[c(5), c(3), c(7)]), (c(3), 1));
        assert_eq!(prefix_min_scan_index(&[c(2), c(2), c(5)]), (c(2), 0));
        assert_eq!(prefix_min_scan_index(&[INF, INF]), (INF, 0));
        // Same cases through the doubling scan.
        assert_eq!(prefix_min_scan_index_with_cutoff(&[c(5), c(3), c(7)], 1), (c(3), 1));
        assert_eq!(prefix_min_scan_index_with_cutoff(&[c(2), c(2), c(5)], 1), (c(2), 0));
        assert_eq!(prefix_min_scan_index_with_cutoff(&[INF, INF], 1), (INF, 0));
    }

    #[test]
    #[should_panic]
    fn prefix_min_empty() {
        prefix_min_scan_index::<u32>(&[]);
    }

    #[test]
    fn breakout_row_validate() {
        assert!(BreakoutRow { start: 2, reach: vec![c(2), c(4), INF] }.validate().is_ok());
        assert!(BreakoutRow { start: 2, reach: vec![c(3)] }.validate().is_err());
        assert!(BreakoutRow { start: 2, reach: vec![c(2), INF, c(5)] }.validate().is_err());
        assert_eq!(BreakoutRow { start: 2, reach: vec![c(2), c(4), INF] }.max_finite_weight(), 1);
    }

    fn reach_strategy() -> impl Strategy<Value = Reach> {
        prop_oneof![1 => Just(INF), 4 => (0u32..6).prop_map(c)]
    }

    proptest! {
        #[test]
        fn base_case_constructions_agree(col in proptest::collection::vec(0u8..4, 0..80), sym in 0u8..4) {
            let g = GridModel::new(vec![sym], col.clone());
            let idx = match_positions(&col, sym);
            let row = base_case_row(&g, 1, &idx);
            prop_assert_eq!(&row, &base_case_by_formula(&col, sym));
            // Nondecreasing and INF-terminal.
            prop_assert!(row.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn prefix_sum_matches_fold(values in proptest::collection::vec(0u32..1000, 0..600), cutoff in 1usize..64) {
            let mut acc = 0u32;
            let fold: Vec<u32> = values.iter().map(|v| { acc += v; acc }).collect();
            prop_assert_eq!(prefix_sum_with_cutoff(&values, cutoff), fold);
        }

        #[test]
        fn prefix_min_matches_argmin(values in proptest::collection::vec(reach_strategy(), 1..300), cutoff in 1usize..64) {
            let mut best = 0;
            for k in 1..values.len() {
                if values[k] < values[best] {
                    best = k;
                }
            }
            prop_assert_eq!(prefix_min_scan_index_with_cutoff(&values, cutoff), (values[best], best));
            prop_assert_eq!(prefix_min_scan_index(&values), (values[best], best));
        }
    }
}
