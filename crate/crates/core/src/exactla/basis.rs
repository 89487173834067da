use super::matrix::ExactMatrix;
use super::scalar::{FieldSpec, Scalar};
use super::subspace::Subspace;
use crate::error::Error;

/// An ordered, linearly independent list of vectors with fast coordinate lookup.
///
/// For a full-row-rank `B` with pivot columns `P`, the square block `B[:, P]`
/// is invertible and the coordinates of `v = x·B` are `x = v_P · B[:, P]^{-1}`.
#[derive(Clone, Debug)]
pub struct OrderedBasis {
    vectors: Vec<Vec<Scalar>>,
    span: Subspace,
    pivot_inverse_t: ExactMatrix,
}

impl OrderedBasis {
    pub fn new(field: FieldSpec, ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let rows = ExactMatrix::from_rows(field, ambient_dim, &vectors)?;
        let span = Subspace::from_rows(&rows);
        if span.dim() != vectors.len() {
            return Err(Error::InvalidParameter(format!(
                "{} vectors span only a {}-dimensional space",
                vectors.len(),
                span.dim()
            )));
        }
        let block = rows.select_cols(span.pivots());
        let inv = block.inverse().expect("pivot block of a full-rank matrix is invertible");
        Ok(OrderedBasis {
            vectors,
            span,
            pivot_inverse_t: inv.transpose(),
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
        if !self.span.contains_vector(v)? {
            return Ok(None);
        }
        if self.vectors.is_empty() {
            return Ok(Some(Vec::new()));
        }
        let vp: Vec<Scalar> = self.span.pivots().iter().map(|&p| v[p].clone()).collect();
        Ok(Some(self.pivot_inverse_t.mul_vec(&vp)?))
    }

    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.span.field().zeros(self.span.ambient_dim());
        for (c, v) in coords.iter().zip(&self.vectors) {
            super::scalar::axpy(&mut out, c, v);
        }
        out
    }
}
