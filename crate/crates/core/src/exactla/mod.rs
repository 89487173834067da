//! Exact linear algebra over GF(p) and the rationals.
//!
//! GF(2) matrices pack rows into machine words, GF(p) rows use one byte per
//! entry and rational entries are arbitrary-precision fractions. No floating
//! point is used anywhere.

mod basis;
mod matrix;
mod scalar;
mod subspace;

pub use basis::OrderedBasis;
pub use matrix::{ExactMatrix, Rref};
pub use scalar::{axpy, is_zero_vector, signum, FieldSpec, Fp, Scalar, MAX_PRIME};
pub use subspace::{subspace_ops, Subspace, SubspaceOps};

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub type Vector = Vec<Scalar>;

/// `{field, rows, cols, entries}`; rational entries are `"a/b"` strings.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<serde_json::Value>>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let f = self.field();
        MatrixJson {
            field: f,
            rows: self.rows(),
            cols: self.cols(),
            entries: self
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| f.scalar_to_json(x)).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        matrix_from_json(j).map_err(serde::de::Error::custom)
    }
}

fn matrix_from_json(j: MatrixJson) -> Result<ExactMatrix, Error> {
    if j.entries.len() != j.rows {
        return Err(Error::DimensionMismatch {
            expected: j.rows,
            found: j.entries.len(),
        });
    }
    let rows = j
        .entries
        .iter()
        .map(|r| r.iter().map(|x| j.field.scalar_from_json(x)).collect())
        .collect::<Result<Vec<Vector>, Error>>()?;
    ExactMatrix::from_rows(j.field, j.cols, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_shape() {
        let f = FieldSpec::Rationals;
        let m = ExactMatrix::from_rows(f, 2, &[vec![f.from_ratio(1, 2).unwrap(), f.from_i64(-3)]]).unwrap();
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"field": "Q", "rows": 1, "cols": 2, "entries": [["1/2", "-3/1"]]})
        );
        let back: ExactMatrix = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);
        let g: ExactMatrix = serde_json::from_value(
            serde_json::json!({"field": "gfp:3", "rows": 1, "cols": 2, "entries": [[4, 2]]}),
        )
        .unwrap();
        assert_eq!(g.row(0), vec![FieldSpec::Prime(3).one(), FieldSpec::Prime(3).from_i64(2)]);
    }
}
