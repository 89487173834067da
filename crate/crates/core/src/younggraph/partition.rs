use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, Error> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..cols).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect(),
        }
    }

    /// All partitions of `n` in increasing lexicographic order, so `(1^n)` comes first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=left.min(max)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Cycle type of a permutation given as images `perm[i]`.
    pub fn cycle_type(perm: &[usize]) -> Partition {
        let mut seen = vec![false; perm.len()];
        let mut parts = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `(-1)^(n - len)`, the sign of any permutation of this cycle type.
    pub fn class_sign(&self) -> i64 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `z_μ = Π i^(m_i) m_i!`, the centralizer order.
    pub fn centralizer_order(&self) -> u128 {
        let mut counts: HashMap<usize, u32> = HashMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|(i, m)| (i as u128).pow(m) * factorial(m as usize))
            .product()
    }

    /// `n!/z_μ`.
    pub fn class_size(&self) -> u128 {
        factorial(self.size()) / self.centralizer_order()
    }

    /// Dimension of the Schur functor `S_λ V` for `dim V = d` (hook-content formula).
    pub fn schur_dim(&self, d: usize) -> u128 {
        let t = self.transpose();
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let content = j as i128 - i as i128;
                num *= d as i128 + content;
                let hook = (row - j) + (t.parts[j] - i) - 1;
                den *= hook as i128;
            }
        }
        if num <= 0 {
            0
        } else {
            (num / den) as u128
        }
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.is_empty() {
            return Ok(Partition { parts: Vec::new() });
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("partition {s:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self, Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Murnaghan–Nakayama evaluation on beta-sets, memoized per instance.
#[derive(Default)]
pub struct CharacterCache {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl CharacterCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn character(&mut self, lambda: &Partition, mu: &Partition) -> Result<i64, Error> {
        if lambda.size() != mu.size() {
            return Err(Error::DimensionMismatch {
                expected: lambda.size(),
                found: mu.size(),
            });
        }
        let k = lambda.len();
        let beta: Vec<usize> = lambda.parts.iter().enumerate().map(|(i, &p)| p + (k - 1 - i)).collect();
        Ok(self.eval(beta, &mu.parts))
    }

    fn eval(&mut self, mut beta: Vec<usize>, mu: &[usize]) -> i64 {
        let Some((&r, rest)) = mu.split_first() else {
            return 1;
        };
        beta.sort_unstable();
        let key = (beta.clone(), mu.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for idx in 0..beta.len() {
            let b = beta[idx];
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            // removing a rim hook of length r: b -> b - r, height = #beta strictly between
            let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
            let mut next = beta.clone();
            next[idx] = b - r;
            let sign = if between % 2 == 0 { 1 } else { -1 };
            total += sign * self.eval(next, rest);
        }
        self.memo.insert(key, total);
        total
    }
}

/// `χ_λ(μ)`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64, Error> {
    CharacterCache::new().character(lambda, mu)
}

/// Character table of `S_n`: rows irreducibles, columns classes, both in [`Partition::all`] order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
    pub class_sizes: Vec<u128>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        let partitions = Partition::all(n);
        let mut cache = CharacterCache::new();
        let values = partitions
            .iter()
            .map(|l| {
                partitions
                    .iter()
                    .map(|m| cache.character(l, m).expect("same size"))
                    .collect()
            })
            .collect();
        let class_sizes = partitions.iter().map(Partition::class_size).collect();
        CharacterTable {
            n,
            partitions,
            values,
            class_sizes,
        }
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }

    /// `χ_λ(1)`; the identity class `(1^n)` is column 0.
    pub fn degree(&self, lambda: usize) -> i64 {
        self.values[lambda][0]
    }
}
