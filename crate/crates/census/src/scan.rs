use std::ops::Range;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CensusError;
use crate::table::{
    check_n, entry_bits, is_commutative, left_packed, left_packed_if_symmetric, op_count, right_packed, TernaryMapKey,
};

/// Which counts to compute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Which {
    pub left: bool,
    pub lr: bool,
    pub sym: bool,
    pub sym_comm: bool,
}

impl Which {
    pub fn all() -> Self {
        Self {
            left: true,
            lr: true,
            sym: true,
            sym_comm: true,
        }
    }

    pub fn symmetric_only() -> Self {
        Self {
            sym: true,
            sym_comm: true,
            ..Self::default()
        }
    }

    /// The left (and right) sets are stored whole, which bounds the feasible `n`.
    pub fn needs_full_sets(&self) -> bool {
        self.left || self.lr
    }
}

impl FromStr for Which {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = Which::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "left" => w.left = true,
                "lr" => w.lr = true,
                "sym" => w.sym = true,
                "symcomm" | "sym_comm" | "comm" => w.sym_comm = true,
                "all" => w = Which::all(),
                other => return Err(CensusError::BadFlag(other.into())),
            }
        }
        if w == Which::default() {
            return Err(CensusError::BadFlag(s.into()));
        }
        Ok(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    /// 1 selects the single-threaded path.
    pub threads: usize,
    /// Upper bound on keys held in memory at once.
    pub key_budget: u64,
}

impl Default for CensusConfig {
    fn default() -> Self {
        Self {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            key_budget: 1 << 28,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_left: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_lr: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_sym: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_sym_comm: Option<u64>,
    pub ops_enumerated: u64,
    /// Wall time; kept out of the JSON so equal runs give equal bytes.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CensusResult {
    /// `t_left ≤ t_lr ≤ 2·t_left`, `t_sym ≤ t_left`, `t_sym_comm ≤ t_sym` where both sides are present.
    pub fn bounds_violation(&self) -> Option<String> {
        let le = |a: Option<u64>, b: Option<u64>| matches!((a, b), (Some(x), Some(y)) if x > y);
        if le(self.t_left, self.t_lr) {
            return Some("t_left > t_lr".into());
        }
        if le(self.t_lr, self.t_left.map(|t| 2 * t)) {
            return Some("t_lr > 2 t_left".into());
        }
        if le(self.t_sym, self.t_left) {
            return Some("t_sym > t_left".into());
        }
        if le(self.t_sym_comm, self.t_sym) {
            return Some("t_sym_comm > t_sym".into());
        }
        None
    }
}

const LEFT: usize = 0;
const RIGHT: usize = 1;
const SYM: usize = 2;
const SYM_COMM: usize = 3;

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Need {
    pub left: bool,
    pub right: bool,
    pub sym: bool,
    pub sym_comm: bool,
}

/// Keys split by their lowest bits (the first table entries), each shard sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ShardedSet {
    shards: Vec<Vec<u128>>,
}

impl ShardedSet {
    pub fn len(&self) -> u64 {
        self.shards.iter().map(|s| s.len() as u64).sum()
    }

    pub fn union_len(&self, other: &ShardedSet) -> u64 {
        self.len() + other.len() - self.intersection_len(other)
    }

    pub fn intersection_len(&self, other: &ShardedSet) -> u64 {
        self.shards
            .iter()
            .zip(&other.shards)
            .map(|(a, b)| sorted_intersection(a, b))
            .sum()
    }

    /// Smallest key of `self` missing from `other`.
    pub fn first_missing_from(&self, other: &ShardedSet) -> Option<u128> {
        self.shards
            .iter()
            .zip(&other.shards)
            .filter_map(|(a, b)| a.iter().find(|k| b.binary_search(k).is_err()).copied())
            .min()
    }

    pub fn sorted_keys(&self) -> Vec<u128> {
        let mut all: Vec<u128> = self.shards.concat();
        all.sort_unstable();
        all
    }
}

fn sorted_intersection(a: &[u128], b: &[u128]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

pub(crate) fn shard_bits(n: usize) -> u32 {
    (entry_bits(n) * (n * n * n) as u32).min(6)
}

type Partial = [Vec<Vec<u128>>; 4];

fn empty_partial(shards: usize) -> Partial {
    std::array::from_fn(|_| vec![Vec::new(); shards])
}

/// Walks ops `range` of the base-`n` counter and bins every requested key.
fn process_range(n: usize, range: Range<u64>, need: Need, bits: u32) -> Partial {
    let shards = 1usize << bits;
    let mask = (shards - 1) as u128;
    let mut out = empty_partial(shards);
    let mut op = vec![0u8; n * n];
    let mut idx = range.start;
    for d in op.iter_mut() {
        *d = (idx % n as u64) as u8;
        idx /= n as u64;
    }
    for _ in range {
        if need.left {
            let k = left_packed(n, &op);
            out[LEFT][(k & mask) as usize].push(k);
        }
        if need.right {
            let k = right_packed(n, &op);
            out[RIGHT][(k & mask) as usize].push(k);
        }
        if need.sym || need.sym_comm {
            if let Some(k) = left_packed_if_symmetric(n, &op) {
                if need.sym {
                    out[SYM][(k & mask) as usize].push(k);
                }
                if need.sym_comm && is_commutative(n, &op) {
                    out[SYM_COMM][(k & mask) as usize].push(k);
                }
            }
        }
        // odometer step
        for d in op.iter_mut() {
            *d += 1;
            if (*d as usize) < n {
                break;
            }
            *d = 0;
        }
    }
    for cat in out.iter_mut() {
        for s in cat.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
    }
    out
}

fn merge_shard(parts: &[Partial], cat: usize, shard: usize) -> Vec<u128> {
    let mut v: Vec<u128> = parts.iter().flat_map(|p| p[cat][shard].iter().copied()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn to_sets(parts: Vec<Partial>, shards: usize) -> [ShardedSet; 4] {
    std::array::from_fn(|cat| ShardedSet {
        shards: (0..shards).map(|s| merge_shard(&parts, cat, s)).collect(),
    })
}

pub(crate) fn build_pool(threads: usize) -> Result<rayon::ThreadPool, CensusError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CensusError::ThreadPool(e.to_string()))
}

/// Collects the requested key sets over `range`. With one thread this is a plain loop;
/// otherwise the range is split into chunks and each shard is merged by its own task.
pub(crate) fn collect_sets(n: usize, range: Range<u64>, need: Need, threads: usize) -> Result<[ShardedSet; 4], CensusError> {
    let bits = shard_bits(n);
    let shards = 1usize << bits;
    if threads <= 1 {
        return Ok(to_sets(vec![process_range(n, range, need, bits)], shards));
    }
    let pool = build_pool(threads)?;
    let len = range.end - range.start;
    let chunk = (len / (threads as u64 * 8)).max(1024);
    let starts: Vec<u64> = (range.start..range.end).step_by(chunk as usize).collect();
    Ok(pool.install(|| {
        let parts: Vec<Partial> = starts
            .par_iter()
            .map(|&lo| process_range(n, lo..(lo + chunk).min(range.end), need, bits))
            .collect();
        let merged: Vec<Vec<Vec<u128>>> = (0..4)
            .into_par_iter()
            .map(|cat| (0..shards).into_par_iter().map(|s| merge_shard(&parts, cat, s)).collect())
            .collect();
        let mut it = merged.into_iter().map(|shards| ShardedSet { shards });
        std::array::from_fn(|_| it.next().expect("four categories"))
    }))
}

/// Exact deduplicated counts of ternary maps `(x*y)*z`, `x*(y*z)` over all binary ops on `{0..n-1}`.
pub fn census(n: usize, which: Which, cfg: &CensusConfig) -> Result<CensusResult, CensusError> {
    check_n(n)?;
    let total = op_count(n);
    if which.needs_full_sets() && total > cfg.key_budget {
        return Err(CensusError::ResourceBudget {
            n,
            needed: total,
            budget: cfg.key_budget,
        });
    }
    let start = Instant::now();
    let need = Need {
        left: which.left || which.lr,
        right: which.lr,
        sym: which.sym,
        sym_comm: which.sym_comm,
    };
    let sets = collect_sets(n, 0..total, need, cfg.threads)?;
    Ok(CensusResult {
        n,
        t_left: which.left.then(|| sets[LEFT].len()),
        t_lr: which.lr.then(|| sets[LEFT].union_len(&sets[RIGHT])),
        t_sym: which.sym.then(|| sets[SYM].len()),
        t_sym_comm: which.sym_comm.then(|| sets[SYM_COMM].len()),
        ops_enumerated: total,
        elapsed: start.elapsed(),
    })
}

/// All four key sets, each sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusSets {
    pub n: usize,
    pub left: Vec<TernaryMapKey>,
    pub right: Vec<TernaryMapKey>,
    pub sym: Vec<TernaryMapKey>,
    pub sym_comm: Vec<TernaryMapKey>,
}

pub fn census_sets(n: usize, cfg: &CensusConfig) -> Result<CensusSets, CensusError> {
    check_n(n)?;
    let total = op_count(n);
    if total > cfg.key_budget {
        return Err(CensusError::ResourceBudget {
            n,
            needed: total,
            budget: cfg.key_budget,
        });
    }
    let need = Need {
        left: true,
        right: true,
        sym: true,
        sym_comm: true,
    };
    let sets = collect_sets(n, 0..total, need, cfg.threads)?;
    let keys = |s: &ShardedSet| s.sorted_keys().into_iter().map(|packed| TernaryMapKey { n, packed }).collect();
    Ok(CensusSets {
        n,
        left: keys(&sets[LEFT]),
        right: keys(&sets[RIGHT]),
        sym: keys(&sets[SYM]),
        sym_comm: keys(&sets[SYM_COMM]),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrReport {
    pub n: usize,
    pub t_left: u64,
    pub t_right: u64,
    pub t_lr: u64,
    pub overlap: u64,
}

/// Left, right, union and intersection sizes, each counted directly.
pub fn lr_report(n: usize, cfg: &CensusConfig) -> Result<LrReport, CensusError> {
    check_n(n)?;
    let total = op_count(n);
    if total > cfg.key_budget {
        return Err(CensusError::ResourceBudget {
            n,
            needed: total,
            budget: cfg.key_budget,
        });
    }
    let need = Need {
        left: true,
        right: true,
        ..Need::default()
    };
    let sets = collect_sets(n, 0..total, need, cfg.threads)?;
    Ok(LrReport {
        n,
        t_left: sets[LEFT].len(),
        t_right: sets[RIGHT].len(),
        t_lr: sets[LEFT].union_len(&sets[RIGHT]),
        overlap: sets[LEFT].intersection_len(&sets[RIGHT]),
    })
}

/// `|left set ∩ right set|`.
pub fn lr_overlap(n: usize, cfg: &CensusConfig) -> Result<u64, CensusError> {
    Ok(lr_report(n, cfg)?.overlap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureOutcome {
    pub n: usize,
    pub equal_sets: bool,
    pub t_sym: u64,
    pub t_sym_comm: u64,
    /// A symmetric map of the form `(x*y)*z` that no commutative `*` produces.
    pub witness: Option<TernaryMapKey>,
}

/// Compares the symmetric left-representable maps with those reachable from commutative ops, as sets.
pub fn conjecture_check(n: usize, cfg: &CensusConfig) -> Result<ConjectureOutcome, CensusError> {
    check_n(n)?;
    let need = Need {
        sym: true,
        sym_comm: true,
        ..Need::default()
    };
    let sets = collect_sets(n, 0..op_count(n), need, cfg.threads)?;
    let witness = sets[SYM]
        .first_missing_from(&sets[SYM_COMM])
        .map(|packed| TernaryMapKey { n, packed });
    // commutative ops are ops, so the comm set sits inside the sym set; check anyway
    let extra = sets[SYM_COMM].first_missing_from(&sets[SYM]);
    Ok(ConjectureOutcome {
        n,
        equal_sets: witness.is_none() && extra.is_none(),
        t_sym: sets[SYM].len(),
        t_sym_comm: sets[SYM_COMM].len(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> CensusConfig {
        CensusConfig {
            threads: 1,
            ..CensusConfig::default()
        }
    }

    #[test]
    fn which_parsing() {
        assert_eq!("left,lr,sym,symcomm".parse::<Which>().unwrap(), Which::all());
        assert_eq!(
            "left".parse::<Which>().unwrap(),
            Which {
                left: true,
                ..Which::default()
            }
        );
        assert!("".parse::<Which>().is_err());
        assert!("left,bogus".parse::<Which>().is_err());
    }

    #[test]
    fn tiny_counts() {
        let r = census(1, Which::all(), &single()).unwrap();
        assert_eq!((r.t_left, r.t_lr, r.t_sym, r.t_sym_comm), (Some(1), Some(1), Some(1), Some(1)));
        let r = census(2, Which::all(), &single()).unwrap();
        assert_eq!((r.t_left, r.t_lr, r.t_sym), (Some(14), Some(21), Some(5)));
        assert_eq!(r.ops_enumerated, 16);
        assert!(r.bounds_violation().is_none());
    }

    #[test]
    fn brute_force_oracle_n2() {
        use std::collections::HashSet;
        let mut left = HashSet::new();
        let mut right = HashSet::new();
        for idx in 0..16u64 {
            let op: Vec<usize> = (0..4).map(|i| ((idx >> i) & 1) as usize).collect();
            let m = |x: usize, y: usize| op[x * 2 + y];
            let mut l = Vec::new();
            let mut r = Vec::new();
            for x in 0..2 {
                for y in 0..2 {
                    for z in 0..2 {
                        l.push(m(m(x, y), z));
                        r.push(m(x, m(y, z)));
                    }
                }
            }
            left.insert(l);
            right.insert(r);
        }
        let r = lr_report(2, &single()).unwrap();
        assert_eq!(r.t_left, left.len() as u64);
        assert_eq!(r.t_right, right.len() as u64);
        assert_eq!(r.t_lr, left.union(&right).count() as u64);
        assert_eq!(r.overlap, 7);
    }

    #[test]
    fn budget_guard() {
        let cfg = CensusConfig {
            threads: 1,
            key_budget: 100,
        };
        assert!(matches!(census(3, Which::all(), &cfg), Err(CensusError::ResourceBudget { .. })));
        assert!(matches!(census(4, Which::all(), &CensusConfig::default()), Err(CensusError::ResourceBudget { .. })));
        assert!(matches!(census(5, Which::all(), &single()), Err(CensusError::UnsupportedSize(5))));
        assert!(matches!(census(0, Which::all(), &single()), Err(CensusError::UnsupportedSize(0))));
    }

    #[test]
    fn parallel_matches_single_threaded_n2() {
        let par = CensusConfig {
            threads: 3,
            ..CensusConfig::default()
        };
        for n in 1..=2 {
            let a = census(n, Which::all(), &single()).unwrap();
            let b = census(n, Which::all(), &par).unwrap();
            assert_eq!((a.t_left, a.t_lr, a.t_sym, a.t_sym_comm), (b.t_left, b.t_lr, b.t_sym, b.t_sym_comm));
        }
    }
}
