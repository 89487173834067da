use serde::{Deserialize, Serialize};

use super::matrix::ExactMatrix;
use super::scalar::{FieldSpec, Scalar};
use crate::error::Error;

/// A subspace of `field^ambient_dim`, stored as a reduced row-echelon basis so
/// that equal subspaces compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SubspaceJson", into = "SubspaceJson")]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: ExactMatrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: ExactMatrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_vectors(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self, Error> {
        Ok(Self::from_rows(&ExactMatrix::from_rows(field, ambient_dim, vectors)?))
    }

    /// Row space of `m`.
    pub fn from_rows(m: &ExactMatrix) -> Self {
        let r = m.rref();
        let keep: Vec<usize> = (0..r.rank).collect();
        Subspace {
            field: m.field(),
            ambient_dim: m.cols(),
            basis: r.reduced.select_rows(&keep),
            pivots: r.pivots,
        }
    }

    /// Column space of `m`.
    pub fn column_space(m: &ExactMatrix) -> Self {
        Self::from_rows(&m.transpose())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Basis rows in reduced row-echelon form.
    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, len: usize) -> Result<(), Error> {
        if len != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: len,
            });
        }
        Ok(())
    }

    /// `v` minus its projection along the echelon basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        self.check(v.len())?;
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for j in p..self.ambient_dim {
                if !self.basis.is_zero_at(r, j) {
                    out[j] -= &(&f * &self.basis.get(r, j));
                }
            }
        }
        Ok(out)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool, Error> {
        Ok(self.reduce(v)?.iter().all(Scalar::is_zero))
    }

    /// Coordinates of `v` with respect to [`Self::basis`], or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
        if !self.contains_vector(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field.zeros(self.ambient_dim);
        for (r, c) in coords.iter().enumerate() {
            super::scalar::axpy(&mut out, c, &self.basis.row(r));
        }
        out
    }

    fn compatible(&self, other: &Subspace) -> Result<(), Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        self.check(other.ambient_dim)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, Error> {
        self.compatible(other)?;
        for v in other.vectors() {
            if !self.contains_vector(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.compatible(other)?;
        Ok(Self::from_rows(&self.basis.vstack(&other.basis)?))
    }

    pub fn add_vectors(&self, vectors: &[Vec<Scalar>]) -> Result<Subspace, Error> {
        let extra = ExactMatrix::from_rows(self.field, self.ambient_dim, vectors)?;
        Ok(Self::from_rows(&self.basis.vstack(&extra)?))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.compatible(other)?;
        // (x, y) with x·A = y·B, i.e. the kernel of [A^T | -B^T]
        let stacked = self.basis.transpose().hstack(&other.basis.scale(&-self.field.one()).transpose())?;
        let ker = stacked.kernel();
        let da = self.dim();
        let vectors: Vec<Vec<Scalar>> = ker
            .vectors()
            .iter()
            .map(|k| self.combine(&k[..da]))
            .collect();
        Subspace::from_vectors(self.field, self.ambient_dim, &vectors)
    }

    /// Image of the subspace under `m` (acting on column vectors).
    pub fn image(&self, m: &ExactMatrix) -> Result<Subspace, Error> {
        let mut out = Vec::with_capacity(self.dim());
        for v in self.vectors() {
            out.push(m.mul_vec(&v)?);
        }
        Subspace::from_vectors(self.field, m.rows(), &out)
    }
}

/// Sum, intersection and containment of two subspaces in one call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOps {
    pub sum: Subspace,
    pub intersection: Subspace,
    /// True iff `b ⊆ a`.
    pub contains: bool,
}

pub fn subspace_ops(a: &Subspace, b: &Subspace) -> Result<SubspaceOps, Error> {
    Ok(SubspaceOps {
        sum: a.sum(b)?,
        intersection: a.intersection(b)?,
        contains: a.contains(b)?,
    })
}

#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<Vec<serde_json::Value>>,
}

impl From<Subspace> for SubspaceJson {
    fn from(s: Subspace) -> Self {
        SubspaceJson {
            field: s.field,
            ambient_dim: s.ambient_dim,
            basis: s
                .vectors()
                .iter()
                .map(|v| v.iter().map(|x| s.field.scalar_to_json(x)).collect())
                .collect(),
        }
    }
}

impl TryFrom<SubspaceJson> for Subspace {
    type Error = Error;
    fn try_from(j: SubspaceJson) -> Result<Self, Error> {
        let rows = j
            .basis
            .iter()
            .map(|r| r.iter().map(|x| j.field.scalar_from_json(x)).collect())
            .collect::<Result<Vec<Vec<Scalar>>, Error>>()?;
        Subspace::from_vectors(j.field, j.ambient_dim, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(f: FieldSpec, n: usize, vs: &[&[i64]]) -> Subspace {
        let rows: Vec<Vec<Scalar>> = vs.iter().map(|v| v.iter().map(|&x| f.from_i64(x)).collect()).collect();
        Subspace::from_vectors(f, n, &rows).unwrap()
    }

    #[test]
    fn complementary_lines() {
        let f = FieldSpec::GF2;
        let ops = subspace_ops(&span(f, 2, &[&[1, 0]]), &span(f, 2, &[&[0, 1]])).unwrap();
        assert_eq!(ops.sum.dim(), 2);
        assert_eq!(ops.intersection.dim(), 0);
        assert!(!ops.contains);
    }

    #[test]
    fn identical_subspaces() {
        let f = FieldSpec::Rationals;
        let a = span(f, 3, &[&[1, 2, 0], &[0, 1, 1]]);
        let b = span(f, 3, &[&[1, 3, 1], &[2, 5, 1]]);
        assert_eq!(a, b);
        let ops = subspace_ops(&a, &b).unwrap();
        assert_eq!(ops.sum, a);
        assert_eq!(ops.intersection, a);
        assert!(ops.contains);
    }

    #[test]
    fn plane_meets_diagonal() {
        let f = FieldSpec::GF2;
        let a = span(f, 2, &[&[1, 0], &[0, 1]]);
        let b = span(f, 2, &[&[1, 1]]);
        assert_eq!(a.intersection(&b).unwrap(), b);
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let f = FieldSpec::GF2;
        assert!(matches!(
            span(f, 2, &[&[1, 0]]).sum(&span(f, 3, &[&[1, 0, 0]])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coordinates_round_trip() {
        let f = FieldSpec::Prime(5);
        let s = span(f, 4, &[&[1, 2, 0, 3], &[0, 0, 1, 4]]);
        let v = s.combine(&[f.from_i64(3), f.from_i64(2)]);
        assert_eq!(s.coordinates(&v).unwrap().unwrap(), vec![f.from_i64(3), f.from_i64(2)]);
        assert!(s.coordinates(&f.unit_vector(4, 1)).unwrap().is_none());
    }

    #[test]
    fn json_round_trip() {
        let s = span(FieldSpec::Rationals, 3, &[&[2, 1, 0], &[0, 3, 1]]);
        let text = serde_json::to_string(&s).unwrap();
        let back: Subspace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
