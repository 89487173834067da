//! Long symmetric-only scans with on-disk progress.
//!
//! Checkpoint layout (little endian): magic `MLCENSUS`, version `u16`, `n: u8`,
//! `next: u64`, `total: u64`, then two key lists (`count: u64` followed by
//! `count` sorted `u128` keys) for the symmetric and symmetric-commutative sets.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use serde::{Deserialize, Serialize};

use crate::error::CensusError;
use crate::scan::{collect_sets, CensusConfig, Need};
use crate::table::{check_n, op_count, TernaryMapKey};

pub const CHECKPOINT_MAGIC: &[u8; 8] = b"MLCENSUS";
pub const CHECKPOINT_VERSION: u16 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: usize,
    /// Next op index of the base-`n` counter still to be scanned.
    pub next: u64,
    pub total: u64,
    pub sym: Vec<u128>,
    pub sym_comm: Vec<u128>,
}

impl Checkpoint {
    pub fn fresh(n: usize) -> Self {
        Self {
            n,
            next: 0,
            total: op_count(n),
            sym: Vec::new(),
            sym_comm: Vec::new(),
        }
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<(), CensusError> {
        w.write_all(CHECKPOINT_MAGIC)?;
        w.write_u16::<LittleEndian>(CHECKPOINT_VERSION)?;
        w.write_u8(self.n as u8)?;
        w.write_u64::<LittleEndian>(self.next)?;
        w.write_u64::<LittleEndian>(self.total)?;
        for keys in [&self.sym, &self.sym_comm] {
            w.write_u64::<LittleEndian>(keys.len() as u64)?;
            for &k in keys {
                w.write_u128::<LittleEndian>(k)?;
            }
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self, CensusError> {
        let bad = |m: &str| CensusError::Checkpoint(m.into());
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic).map_err(|_| bad("truncated header"))?;
        if &magic != CHECKPOINT_MAGIC {
            return Err(bad("bad magic"));
        }
        let version = r.read_u16::<LittleEndian>()?;
        if version != CHECKPOINT_VERSION {
            return Err(CensusError::Checkpoint(format!("unsupported version {version}")));
        }
        let n = r.read_u8()? as usize;
        check_n(n)?;
        let next = r.read_u64::<LittleEndian>()?;
        let total = r.read_u64::<LittleEndian>()?;
        if total != op_count(n) || next > total {
            return Err(bad("counter out of range"));
        }
        let mut lists = [Vec::new(), Vec::new()];
        for list in lists.iter_mut() {
            let count = r.read_u64::<LittleEndian>()?;
            if count > total {
                return Err(bad("key count out of range"));
            }
            for _ in 0..count {
                list.push(r.read_u128::<LittleEndian>().map_err(|_| bad("truncated key list"))?);
            }
            if !list.windows(2).all(|p| p[0] < p[1]) {
                return Err(bad("key list not strictly sorted"));
            }
        }
        let mut rest = [0u8; 1];
        if r.read(&mut rest)? != 0 {
            return Err(bad("trailing bytes"));
        }
        let [sym, sym_comm] = lists;
        Ok(Self {
            n,
            next,
            total,
            sym,
            sym_comm,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CensusError> {
        Self::read_from(&mut BufReader::new(File::open(path)?))
    }

    /// Writes beside `path` and renames, so an interrupted save leaves the old file intact.
    pub fn save(&self, path: &Path) -> Result<(), CensusError> {
        let tmp = path.with_extension("tmp");
        {
            let mut w = BufWriter::new(File::create(&tmp)?);
            self.write_to(&mut w)?;
            w.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct StretchOptions {
    pub checkpoint: PathBuf,
    /// Ops scanned between checkpoint saves.
    pub chunk: u64,
    /// Stop after this many chunks (the run can be resumed later).
    pub max_chunks: Option<u64>,
}

impl StretchOptions {
    pub fn new(checkpoint: impl Into<PathBuf>) -> Self {
        Self {
            checkpoint: checkpoint.into(),
            chunk: 1 << 24,
            max_chunks: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StretchOutcome {
    pub n: usize,
    pub complete: bool,
    pub ops_enumerated: u64,
    pub total_ops: u64,
    pub t_sym: u64,
    pub t_sym_comm: u64,
    /// Only known once the scan is complete.
    pub equal_sets: Option<bool>,
    pub witness: Option<TernaryMapKey>,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn merge_sorted(a: &[u128], b: Vec<u128>) -> Vec<u128> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend(b);
    v.sort_unstable();
    v.dedup();
    v
}

/// Scans all ops for symmetric `(x*y)*z` maps, resuming from and saving to the checkpoint file.
pub fn run_symmetric(n: usize, cfg: &CensusConfig, opts: &StretchOptions) -> Result<StretchOutcome, CensusError> {
    check_n(n)?;
    if opts.chunk == 0 {
        return Err(CensusError::Checkpoint("chunk size must be positive".into()));
    }
    let start = Instant::now();
    let mut cp = if opts.checkpoint.exists() {
        let cp = Checkpoint::load(&opts.checkpoint)?;
        if cp.n != n {
            return Err(CensusError::Checkpoint(format!("checkpoint is for n = {}, not {n}", cp.n)));
        }
        cp
    } else {
        Checkpoint::fresh(n)
    };
    let need = Need {
        sym: true,
        sym_comm: true,
        ..Need::default()
    };
    let mut done = 0u64;
    while cp.next < cp.total && opts.max_chunks.is_none_or(|m| done < m) {
        let hi = (cp.next + opts.chunk).min(cp.total);
        let [_, _, sym, sym_comm] = collect_sets(n, cp.next..hi, need, cfg.threads)?;
        cp.sym = merge_sorted(&cp.sym, sym.sorted_keys());
        cp.sym_comm = merge_sorted(&cp.sym_comm, sym_comm.sorted_keys());
        cp.next = hi;
        cp.save(&opts.checkpoint)?;
        done += 1;
    }
    let complete = cp.next == cp.total;
    let witness = complete
        .then(|| cp.sym.iter().find(|k| cp.sym_comm.binary_search(k).is_err()))
        .flatten()
        .map(|&packed| TernaryMapKey { n, packed });
    Ok(StretchOutcome {
        n,
        complete,
        ops_enumerated: cp.next,
        total_ops: cp.total,
        t_sym: cp.sym.len() as u64,
        t_sym_comm: cp.sym_comm.len() as u64,
        equal_sets: complete.then(|| cp.sym == cp.sym_comm),
        witness,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoint_round_trip_and_corruption() {
        let cp = Checkpoint {
            n: 3,
            next: 100,
            total: op_count(3),
            sym: vec![1, 5, 9],
            sym_comm: vec![5],
        };
        let mut buf = Vec::new();
        cp.write_to(&mut buf).unwrap();
        assert_eq!(&buf[..8], CHECKPOINT_MAGIC);
        assert_eq!(Checkpoint::read_from(&mut buf.as_slice()).unwrap(), cp);

        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(Checkpoint::read_from(&mut bad.as_slice()).is_err());
        let mut bad = buf.clone();
        bad[8] = 9;
        assert!(Checkpoint::read_from(&mut bad.as_slice()).is_err());
        assert!(Checkpoint::read_from(&mut &buf[..buf.len() - 3]).is_err());
        let mut long = buf.clone();
        long.push(0);
        assert!(Checkpoint::read_from(&mut long.as_slice()).is_err());
    }
}
