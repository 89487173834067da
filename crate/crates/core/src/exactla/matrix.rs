use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{FieldSpec, Fp, Scalar};
use super::subspace::Subspace;
use crate::error::Error;

/// Row storage specialized per field: packed words over GF(2), one byte per
/// entry over GF(p), reduced fractions over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage {
    Bits(Vec<Vec<u64>>),
    Bytes(Vec<Vec<u8>>),
    Rat(Vec<Vec<BigRational>>),
}

/// Dense matrix over an exact field. Acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Storage,
}

/// Output of [`ExactMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn words(cols: usize) -> usize {
    cols.div_ceil(64)
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let data = match field {
            FieldSpec::Prime(2) => Storage::Bits(vec![vec![0; words(cols)]; rows]),
            FieldSpec::Prime(_) => Storage::Bytes(vec![vec![0; cols]; rows]),
            FieldSpec::Rationals => Storage::Rat(vec![vec![BigRational::zero(); cols]; rows]),
        };
        ExactMatrix { field, rows, cols, data }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        let one = field.one();
        for i in 0..n {
            m.set(i, i, &one);
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if !v.is_zero() {
                    m.set(i, j, &v);
                }
            }
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self, Error> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for (j, v) in r.iter().enumerate() {
                if !field.owns(v) {
                    return Err(Error::FieldMismatch);
                }
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match &self.data {
            Storage::Bits(r) => Scalar::Mod(Fp {
                value: ((r[i][j / 64] >> (j % 64)) & 1) as u8,
                modulus: 2,
            }),
            Storage::Bytes(r) => Scalar::Mod(Fp {
                value: r[i][j],
                modulus: self.field.characteristic() as u8,
            }),
            Storage::Rat(r) => Scalar::Rat(r[i][j].clone()),
        }
    }

    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        match &self.data {
            Storage::Bits(r) => (r[i][j / 64] >> (j % 64)) & 1 == 0,
            Storage::Bytes(r) => r[i][j] == 0,
            Storage::Rat(r) => r[i][j].is_zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: &Scalar) {
        match (&mut self.data, v) {
            (Storage::Bits(r), Scalar::Mod(x)) => {
                let bit = 1u64 << (j % 64);
                if x.value & 1 == 1 {
                    r[i][j / 64] |= bit;
                } else {
                    r[i][j / 64] &= !bit;
                }
            }
            (Storage::Bytes(r), Scalar::Mod(x)) => r[i][j] = x.value,
            (Storage::Rat(r), Scalar::Rat(q)) => r[i][j] = q.clone(),
            _ => panic!("scalar from a different field"),
        }
    }

    /// `self[i][j] += v`.
    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        match (&mut self.data, v) {
            (Storage::Bits(r), Scalar::Mod(_)) => r[i][j / 64] ^= 1u64 << (j % 64),
            (Storage::Bytes(r), Scalar::Mod(x)) => {
                let p = x.modulus as u16;
                r[i][j] = ((r[i][j] as u16 + x.value as u16) % p) as u8;
            }
            (Storage::Rat(r), Scalar::Rat(q)) => r[i][j] += q,
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Bits(r) => r.iter().all(|w| w.iter().all(|&x| x == 0)),
            Storage::Bytes(r) => r.iter().all(|w| w.iter().all(|&x| x == 0)),
            Storage::Rat(r) => r.iter().all(|w| w.iter().all(Zero::is_zero)),
        }
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        match &self.data {
            Storage::Bits(r) => r[i].iter().all(|&x| x == 0),
            Storage::Bytes(r) => r[i].iter().all(|&x| x == 0),
            Storage::Rat(r) => r[i].iter().all(Zero::is_zero),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.is_zero_at(i, j) {
                    t.set(j, i, &self.get(i, j));
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        match (&self.data, &other.data, &mut out.data) {
            (Storage::Bits(a), Storage::Bits(b), Storage::Bits(c)) => {
                for (ai, ci) in a.iter().zip(c.iter_mut()) {
                    for (w, &word) in ai.iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let l = w * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            for (x, y) in ci.iter_mut().zip(&b[l]) {
                                *x ^= y;
                            }
                        }
                    }
                }
            }
            (Storage::Bytes(a), Storage::Bytes(b), Storage::Bytes(c)) => {
                let p = self.field.characteristic();
                for (ai, ci) in a.iter().zip(c.iter_mut()) {
                    let mut acc = vec![0u32; other.cols];
                    for (l, &x) in ai.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (s, &y) in acc.iter_mut().zip(&b[l]) {
                            *s = (*s + x as u32 * y as u32) % p;
                        }
                    }
                    for (dst, s) in ci.iter_mut().zip(acc) {
                        *dst = s as u8;
                    }
                }
            }
            (Storage::Rat(a), Storage::Rat(b), Storage::Rat(c)) => {
                for (ai, ci) in a.iter().zip(c.iter_mut()) {
                    for (l, x) in ai.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (s, y) in ci.iter_mut().zip(&b[l]) {
                            if !y.is_zero() {
                                *s += x * y;
                            }
                        }
                    }
                }
            }
            _ => unreachable!("storage follows field"),
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let col = ExactMatrix::from_rows(self.field, 1, &v.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>())?;
        Ok(self.mul(&col)?.column(0))
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(
        &self,
        other: &ExactMatrix,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<ExactMatrix, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        if let (Storage::Bits(a), Storage::Bits(b)) = (&self.data, &other.data) {
            let rows = a
                .iter()
                .zip(b)
                .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u ^ v).collect())
                .collect();
            return Ok(ExactMatrix { data: Storage::Bits(rows), ..self.clone() });
        }
        Ok(ExactMatrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            f(&self.get(i, j), &other.get(i, j))
        }))
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.rows, self.cols, |i, j| s * &self.get(i, j))
    }

    /// Entries in row-major order.
    pub fn flatten(&self) -> Vec<Scalar> {
        (0..self.rows).flat_map(|i| self.row(i)).collect()
    }

    pub fn from_flat(field: FieldSpec, rows: usize, cols: usize, v: &[Scalar]) -> ExactMatrix {
        assert_eq!(v.len(), rows * cols);
        ExactMatrix::from_fn(field, rows, cols, |i, j| v[i * cols + j].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        let data = match &self.data {
            Storage::Bits(r) => Storage::Bits(idx.iter().map(|&i| r[i].clone()).collect()),
            Storage::Bytes(r) => Storage::Bytes(idx.iter().map(|&i| r[i].clone()).collect()),
            Storage::Rat(r) => Storage::Rat(idx.iter().map(|&i| r[i].clone()).collect()),
        };
        ExactMatrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let data = match (&self.data, &other.data) {
            (Storage::Bits(a), Storage::Bits(b)) => Storage::Bits([a.clone(), b.clone()].concat()),
            (Storage::Bytes(a), Storage::Bytes(b)) => Storage::Bytes([a.clone(), b.clone()].concat()),
            (Storage::Rat(a), Storage::Rat(b)) => Storage::Rat([a.clone(), b.clone()].concat()),
            _ => unreachable!(),
        };
        Ok(ExactMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    /// Reduced row-echelon form, rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = match &mut m.data {
            Storage::Bits(r) => rref_bits(r, self.cols),
            Storage::Bytes(r) => rref_bytes(r, self.cols, self.field.characteristic() as u8),
            Storage::Rat(r) => rref_rat(r, self.cols),
        };
        Rref { reduced: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Null space `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let Rref { reduced, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<Vec<Scalar>> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = self.field.unit_vector(self.cols, f);
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, f);
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.field, self.cols, &basis).expect("kernel vectors have ambient length")
    }

    /// Some `x` with `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let col = ExactMatrix::from_rows(self.field, 1, &b.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>())?;
        let aug = self.hstack(&col)?;
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = self.field.zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(r, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&ExactMatrix::identity(self.field, n)).ok()?;
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn determinant(&self) -> Result<Scalar, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inv().expect("nonzero pivot");
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= &t;
                }
            }
        }
        Ok(det)
    }
}

fn rref_bits(r: &mut [Vec<u64>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top == r.len() {
            break;
        }
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(i) = (top..r.len()).find(|&i| r[i][w] & bit != 0) else {
            continue;
        };
        r.swap(i, top);
        let pivot = r[top].clone();
        for (k, row) in r.iter_mut().enumerate() {
            if k != top && row[w] & bit != 0 {
                for (x, y) in row[w..].iter_mut().zip(&pivot[w..]) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        top += 1;
    }
    pivots
}

fn rref_bytes(r: &mut [Vec<u8>], cols: usize, p: u8) -> Vec<usize> {
    let p16 = p as u16;
    let inv = |x: u8| Fp { value: x, modulus: p }.inv().expect("nonzero pivot").value;
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top == r.len() {
            break;
        }
        let Some(i) = (top..r.len()).find(|&i| r[i][c] != 0) else {
            continue;
        };
        r.swap(i, top);
        let s = inv(r[top][c]) as u16;
        for x in r[top][c..].iter_mut() {
            *x = ((*x as u16 * s) % p16) as u8;
        }
        let pivot = r[top].clone();
        for (k, row) in r.iter_mut().enumerate() {
            let f = row[c] as u16;
            if k != top && f != 0 {
                for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = ((*x as u16 + p16 * p16 - f * y as u16) % p16) as u8;
                }
            }
        }
        pivots.push(c);
        top += 1;
    }
    pivots
}

fn rref_rat(r: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top == r.len() {
            break;
        }
        let Some(i) = (top..r.len()).find(|&i| !r[i][c].is_zero()) else {
            continue;
        };
        r.swap(i, top);
        let s = r[top][c].recip();
        if !s.is_one() {
            for x in r[top][c..].iter_mut() {
                *x *= &s;
            }
        }
        let pivot = r[top].clone();
        for (k, row) in r.iter_mut().enumerate() {
            if k != top && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        top += 1;
    }
    pivots
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(field: FieldSpec, rows: &[&[i64]]) -> ExactMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        ExactMatrix::from_rows(field, cols, &rows).unwrap()
    }

    #[test]
    fn rref_identity_gf2() {
        let r = ExactMatrix::identity(FieldSpec::GF2, 3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_all_ones_gf2() {
        let a = m(FieldSpec::GF2, &[&[1, 1], &[1, 1]]);
        let r = a.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.reduced, m(FieldSpec::GF2, &[&[1, 1], &[0, 0]]));
    }

    #[test]
    fn rref_proportional_rationals() {
        assert_eq!(m(FieldSpec::Rationals, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_cases() {
        let f = FieldSpec::GF2;
        assert_eq!(ExactMatrix::zeros(f, 2, 2).kernel().dim(), 2);
        let k = m(f, &[&[1, 1], &[1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().row(0), vec![f.one(), f.one()]);
        assert_eq!(m(FieldSpec::Rationals, &[&[1, 2], &[3, 4]]).kernel().dim(), 0);
    }

    #[test]
    fn multiplication_agrees_across_storages() {
        for f in [FieldSpec::GF2, FieldSpec::Prime(5), FieldSpec::Rationals] {
            let a = m(f, &[&[1, 2, 3], &[0, 1, 4]]);
            let b = m(f, &[&[1, 0], &[2, 1], &[1, 1]]);
            let c = a.mul(&b).unwrap();
            let expect = m(f, &[&[8, 5], &[6, 5]]);
            assert_eq!(c, expect, "{f}");
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let f = FieldSpec::Prime(7);
        let a = m(f, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(f, 2));
        assert_eq!(a.determinant().unwrap(), f.one());
        let q = FieldSpec::Rationals;
        let b = m(q, &[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        assert_eq!(b.determinant().unwrap(), q.from_i64(-1));
        assert!(m(q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = FieldSpec::Rationals;
        let a = m(f, &[&[1, 2], &[2, 4]]);
        let x = a.solve(&[f.from_i64(3), f.from_i64(6)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![f.from_i64(3), f.from_i64(6)]);
        assert!(a.solve(&[f.from_i64(1), f.from_i64(1)]).unwrap().is_none());
    }

    #[test]
    fn wide_gf2_rows_cross_word_boundaries() {
        let f = FieldSpec::GF2;
        let n = 130;
        let a = ExactMatrix::from_fn(f, n, n, |i, j| f.from_i64((j == i || j == (i + 1) % n) as i64));
        // cycle incidence: rank n-1 over GF(2)
        assert_eq!(a.rank(), n - 1);
        let k = a.kernel();
        assert_eq!(k.dim(), 1);
        assert!(a.mul_vec(&k.basis().row(0)).unwrap().iter().all(Scalar::is_zero));
    }
}
