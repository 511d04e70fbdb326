//! Built-in correctness sweep: worked-example goldens, an exhaustive binary
//! alphabet sweep and seeded random pairs, all checked against the DP oracle.

use std::fmt;
use std::panic::{self, AssertUnwindSafe};

use plcs_core::oracle::{dp_lcs_length, grid_breakouts};
use plcs_core::{
    base_case_row, build_cost_table, lcs, lcs_length, match_positions, GridModel, Reach, Sequence,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{instance_seed, random_sequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed={}", self.seed)?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.name, c.detail)?;
        }
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{verdict}: {} of {} checks passed", self.checks.len() - self.failures(), self.checks.len())
    }
}

type CheckFn = fn(u64) -> Result<String, String>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("match_positions golden", golden_match_positions),
    ("base_case_row golden", golden_base_case),
    ("breakouts golden", golden_breakouts),
    ("lcs golden", golden_lcs),
    ("exhaustive binary sweep", exhaustive_binary),
    ("random pairs vs dp", random_pairs),
    ("cost table vs grid oracle", cost_table_vs_grid),
];

pub fn run_selftest(seed: u64) -> SelftestReport {
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let checks = CHECKS
        .iter()
        .map(|&(name, check)| {
            let outcome = panic::catch_unwind(AssertUnwindSafe(|| check(seed)))
                .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
            match outcome {
                Ok(detail) => CheckOutcome { name, passed: true, detail },
                Err(detail) => CheckOutcome { name, passed: false, detail },
            }
        })
        .collect();
    panic::set_hook(hook);
    SelftestReport { seed, checks }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".into())
}

fn example_grid() -> GridModel {
    GridModel::new("tcaggatt", "gatttatgcagg")
}

fn golden_match_positions(_: u64) -> Result<String, String> {
    let got = match_positions(b"gatttatgcagg", b't');
    if got != [3, 4, 5, 7] {
        return Err(format!("got {got:?}"));
    }
    Ok("(3,4,5,7)".into())
}

fn golden_base_case(_: u64) -> Result<String, String> {
    let g = example_grid();
    let idx = match_positions(g.col_seq().as_bytes(), g.row_seq().at(1));
    let got = base_case_row(&g, 1, &idx);
    let expect: Vec<Reach> = [4, 4, 4, 5, 6, 8, 8]
        .into_iter()
        .map(Reach::Col)
        .chain(std::iter::repeat_n(Reach::Inf, 5))
        .collect();
    let shown = got.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
    if got != expect {
        return Err(format!("got ({shown})"));
    }
    Ok(format!("({shown})"))
}

fn golden_breakouts(_: u64) -> Result<String, String> {
    let g = example_grid();
    let table = build_cost_table(&g, 1, 9);
    let row = table.row(1);
    let expect = [1, 2, 3, 4, 5, 13].map(Reach::Col);
    if row.reach[..6] != expect || row.reach[6..].iter().any(|r| !r.is_inf()) {
        return Err(format!("got {:?}", row.reach));
    }
    if lcs_length(&table) != 5 {
        return Err(format!("lcs length {}", lcs_length(&table)));
    }
    Ok("(1,2,3,4,5,13,INF...), length 5".into())
}

fn golden_lcs(_: u64) -> Result<String, String> {
    let (a, b) = (b"gatttatgcagg", b"tcaggatt");
    let r = lcs(&Sequence::from(&a[..]), &Sequence::from(&b[..]));
    r.validate(a, b)?;
    if r.length != 5 {
        return Err(format!("length {}", r.length));
    }
    Ok(format!("length 5, {}", r.subsequence))
}

fn check_pair(a: &[u8], b: &[u8]) -> Result<(), String> {
    let r = lcs(&Sequence::from(a), &Sequence::from(b));
    let expect = dp_lcs_length(a, b);
    if r.length != expect {
        return Err(format!("length {} != dp {expect}", r.length));
    }
    r.validate(a, b)
}

fn binary_string(bits: u32, len: usize) -> Vec<u8> {
    (0..len).map(|i| if bits >> i & 1 == 1 { b'b' } else { b'a' }).collect()
}

fn exhaustive_binary(_: u64) -> Result<String, String> {
    let mut pairs = 0usize;
    for la in 0..=6 {
        for lb in 0..=6 {
            for ma in 0..1u32 << la {
                for mb in 0..1u32 << lb {
                    let (a, b) = (binary_string(ma, la), binary_string(mb, lb));
                    check_pair(&a, &b).map_err(|e| {
                        format!("{:?} vs {:?}: {e}", String::from_utf8_lossy(&a), String::from_utf8_lossy(&b))
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn random_pairs(seed: u64) -> Result<String, String> {
    const PAIRS: usize = 1000;
    for idx in 0..PAIRS {
        let pair_seed = instance_seed(seed, 200, 200, idx, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(pair_seed);
        let la = rng.gen_range(0..=200);
        let lb = rng.gen_range(0..=200);
        let a = random_sequence(&mut rng, la, 4);
        let b = random_sequence(&mut rng, lb, 4);
        check_pair(&a, &b).map_err(|e| format!("pair {idx} (instance seed {pair_seed:#x}): {e}"))?;
    }
    Ok(format!("{PAIRS} pairs, lengths <= 200, alphabet 4"))
}

fn cost_table_vs_grid(seed: u64) -> Result<String, String> {
    const INSTANCES: usize = 200;
    for idx in 0..INSTANCES {
        let inst_seed = instance_seed(seed, 8, 8, idx, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(inst_seed);
        let m = rng.gen_range(1..=8);
        let n = rng.gen_range(1..=8);
        let g = GridModel::new(random_sequence(&mut rng, m, 3), random_sequence(&mut rng, n, 3));
        let table = build_cost_table(&g, 1, m + 1);
        for start in 1..=n + 1 {
            if table.row(start).reach != grid_breakouts(&g, 1, m + 1, start, table.max_weight()) {
                return Err(format!("instance {idx} (seed {inst_seed:#x}) start {start}"));
            }
        }
    }
    Ok(format!("{INSTANCES} instances up to 8x8"))
}
