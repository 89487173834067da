use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CensusError;

/// Largest supported set size.
pub const MAX_N: usize = 4;

pub(crate) fn check_n(n: usize) -> Result<(), CensusError> {
    if n == 0 || n > MAX_N {
        return Err(CensusError::UnsupportedSize(n));
    }
    Ok(())
}

/// Bits per packed table entry: `ceil(log2 n)`.
pub fn entry_bits(n: usize) -> u32 {
    usize::BITS - n.saturating_sub(1).leading_zeros()
}

/// Number of binary operations on an `n`-element set, `n^(n^2)`.
pub fn op_count(n: usize) -> u64 {
    (n as u64).pow((n * n) as u32)
}

/// Binary operation `x*y = table[x*n + y]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryOpTable {
    n: usize,
    table: Vec<u8>,
}

impl BinaryOpTable {
    pub fn new(n: usize, table: Vec<u8>) -> Result<Self, CensusError> {
        check_n(n)?;
        if table.len() != n * n {
            return Err(CensusError::InvalidTable(format!("expected {} entries, got {}", n * n, table.len())));
        }
        if let Some(bad) = table.iter().find(|&&v| v as usize >= n) {
            return Err(CensusError::InvalidTable(format!("entry {bad} out of range for n = {n}")));
        }
        Ok(Self { n, table })
    }

    /// Decodes a position of the base-`n` counter (entry 0 is the least significant digit).
    pub fn from_index(n: usize, mut index: u64) -> Result<Self, CensusError> {
        check_n(n)?;
        if index >= op_count(n) {
            return Err(CensusError::InvalidTable(format!("op index {index} out of range for n = {n}")));
        }
        let mut table = vec![0u8; n * n];
        for t in table.iter_mut() {
            *t = (index % n as u64) as u8;
            index /= n as u64;
        }
        Ok(Self { n, table })
    }

    pub fn index(&self) -> u64 {
        self.table.iter().rev().fold(0, |acc, &d| acc * self.n as u64 + d as u64)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn apply(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    pub fn is_commutative(&self) -> bool {
        is_commutative(self.n, &self.table)
    }

    /// `x *' y = y * x`.
    pub fn reversed(&self) -> Self {
        let n = self.n;
        let table = (0..n * n).map(|i| self.table[(i % n) * n + i / n]).collect();
        Self { n, table }
    }
}

/// Packed ternary table: entry `(x,y,z)` sits at bit `(x*n*n + y*n + z) * entry_bits(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryMapKey {
    pub n: usize,
    pub packed: u128,
}

impl TernaryMapKey {
    pub fn encode(n: usize, table: &[u8]) -> Result<Self, CensusError> {
        check_n(n)?;
        if table.len() != n * n * n || table.iter().any(|&v| v as usize >= n) {
            return Err(CensusError::InvalidTable("ternary table has wrong size or entries".into()));
        }
        Ok(Self { n, packed: pack(n, table) })
    }

    pub fn decode(&self) -> Vec<u8> {
        let w = entry_bits(self.n);
        let mask = (1u128 << w) - 1;
        (0..self.n.pow(3)).map(|i| ((self.packed >> (i as u32 * w)) & mask) as u8).collect()
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> usize {
        let w = entry_bits(self.n);
        let i = (x * self.n * self.n + y * self.n + z) as u32;
        ((self.packed >> (i * w)) & ((1u128 << w) - 1)) as usize
    }

    /// Invariant under all six permutations of the arguments.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let v = self.get(x, y, z);
                    v == self.get(y, x, z) && v == self.get(x, z, y)
                })
            })
        })
    }
}

impl fmt::Display for TernaryMapKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.decode() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct KeyRepr {
    n: usize,
    packed: String,
    table: String,
}

impl Serialize for TernaryMapKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        KeyRepr {
            n: self.n,
            packed: format!("{:x}", self.packed),
            table: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TernaryMapKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = KeyRepr::deserialize(d)?;
        let packed = u128::from_str_radix(&r.packed, 16).map_err(D::Error::custom)?;
        let key = TernaryMapKey { n: r.n, packed };
        check_n(r.n).map_err(D::Error::custom)?;
        if key.to_string() != r.table {
            return Err(D::Error::custom("packed value and table disagree"));
        }
        Ok(key)
    }
}

pub(crate) fn pack(n: usize, table: &[u8]) -> u128 {
    let w = entry_bits(n);
    table.iter().enumerate().fold(0u128, |acc, (i, &v)| acc | (v as u128) << (i as u32 * w))
}

pub(crate) fn is_commutative(n: usize, op: &[u8]) -> bool {
    (0..n).all(|x| (x + 1..n).all(|y| op[x * n + y] == op[y * n + x]))
}

/// `(x*y)*z` packed, for a raw row-major op table.
pub(crate) fn left_packed(n: usize, op: &[u8]) -> u128 {
    let w = entry_bits(n);
    let mut acc = 0u128;
    let mut i = 0u32;
    for xy in 0..n * n {
        let row = op[xy] as usize * n;
        for z in 0..n {
            acc |= (op[row + z] as u128) << (i * w);
            i += 1;
        }
    }
    acc
}

/// `x*(y*z)` packed.
pub(crate) fn right_packed(n: usize, op: &[u8]) -> u128 {
    let w = entry_bits(n);
    let mut acc = 0u128;
    let mut i = 0u32;
    for x in 0..n {
        for yz in 0..n * n {
            acc |= (op[x * n + op[yz] as usize] as u128) << (i * w);
            i += 1;
        }
    }
    acc
}

/// `(x*y)*z` packed when it is symmetric, checked before packing so most ops exit early.
pub(crate) fn left_packed_if_symmetric(n: usize, op: &[u8]) -> Option<u128> {
    let f = |x: usize, y: usize, z: usize| op[op[x * n + y] as usize * n + z];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let v = f(x, y, z);
                if v != f(y, x, z) || v != f(x, z, y) {
                    return None;
                }
            }
        }
    }
    Some(left_packed(n, op))
}

pub fn left_table(op: &BinaryOpTable) -> TernaryMapKey {
    TernaryMapKey {
        n: op.n,
        packed: left_packed(op.n, &op.table),
    }
}

pub fn right_table(op: &BinaryOpTable) -> TernaryMapKey {
    TernaryMapKey {
        n: op.n,
        packed: right_packed(op.n, &op.table),
    }
}
