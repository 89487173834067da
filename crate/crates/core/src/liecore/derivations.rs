use super::algebra::StructureAlgebra;
use crate::error::Error;
use crate::exactla::{ExactMatrix, FieldSpec, OrderedBasis, Scalar};

/// Derivation algebra realized by `dim × dim` matrices (column `s` is the image of `e_s`).
#[derive(Clone, Debug)]
pub struct DerivationAlgebra {
    pub algebra: StructureAlgebra,
    pub matrices: Vec<ExactMatrix>,
}

/// Commutator `XY - YX`.
pub fn commutator(x: &ExactMatrix, y: &ExactMatrix) -> Result<ExactMatrix, Error> {
    x.mul(y)?.sub(&y.mul(x)?)
}

/// The Lie algebra spanned by linearly independent square matrices under the
/// commutator; fails if the span is not closed.
pub fn linear_lie_algebra(
    field: FieldSpec,
    size: usize,
    matrices: &[ExactMatrix],
    names: Vec<String>,
) -> Result<StructureAlgebra, Error> {
    let ob = OrderedBasis::new(field, size * size, matrices.iter().map(ExactMatrix::flatten).collect())?;
    let mut out = StructureAlgebra::zero(field, names);
    for (a, x) in matrices.iter().enumerate() {
        for (b, y) in matrices.iter().enumerate() {
            if a == b {
                continue;
            }
            let c = commutator(x, y)?.flatten();
            let coords = ob.coordinates(&c)?.ok_or(Error::NotASubalgebra {
                part: "matrix span".into(),
                witness: (a, b),
            })?;
            out.set_product(a, b, &coords)?;
        }
    }
    Ok(out)
}

/// First basis pair `(i, j)` where `m(e_i e_j) != m(e_i) e_j + e_i m(e_j)`.
pub fn leibniz_failure(a: &StructureAlgebra, m: &ExactMatrix) -> Result<Option<(usize, usize)>, Error> {
    if m.rows() != a.dim() || m.cols() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: m.rows(),
        });
    }
    let images: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| m.column(i)).collect();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = m.mul_vec(&a.product(&a.basis_vector(i), &a.basis_vector(j))?)?;
            let r1 = a.times_basis(&images[i], j);
            let r2 = a.basis_times(i, &images[j]);
            if lhs.iter().zip(r1.iter().zip(&r2)).any(|(l, (x, y))| *l != x + y) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_derivation(a: &StructureAlgebra, m: &ExactMatrix) -> Result<bool, Error> {
    Ok(leibniz_failure(a, m)?.is_none())
}

/// Solves the Leibniz system `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` for all basis pairs.
pub fn derivations(a: &StructureAlgebra) -> DerivationAlgebra {
    let d = a.dim();
    let f = a.field();
    let var = |r: usize, s: usize| r * d + s;
    let mut sys = ExactMatrix::zeros(f, d * d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let row0 = (i * d + j) * d;
            // Σ_k c_ij^k D[m][k]
            for (k, c) in a.basis_product(i, j) {
                for m in 0..d {
                    sys.add_at(row0 + m, var(m, *k), c);
                }
            }
            // - Σ_k c_kj^m D[k][i]
            for k in 0..d {
                for (m, c) in a.basis_product(k, j) {
                    sys.add_at(row0 + m, var(k, i), &-c);
                }
            }
            // - Σ_k c_ik^m D[k][j]
            for k in 0..d {
                for (m, c) in a.basis_product(i, k) {
                    sys.add_at(row0 + m, var(k, j), &-c);
                }
            }
        }
    }
    let ker = sys.kernel();
    let matrices: Vec<ExactMatrix> = ker
        .vectors()
        .iter()
        .map(|v| ExactMatrix::from_flat(f, d, d, v))
        .collect();
    let names = (0..matrices.len()).map(|i| format!("D{i}")).collect();
    let algebra = linear_lie_algebra(f, d, &matrices, names).expect("derivations form a Lie algebra");
    DerivationAlgebra { algebra, matrices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{validate, Identity};
    use crate::zoo;

    #[test]
    fn abelian_derivations_are_all_maps() {
        for d in 1..4 {
            assert_eq!(derivations(&zoo::abelian(d, FieldSpec::Prime(3))).matrices.len(), d * d);
        }
    }

    #[test]
    fn ess_has_five_derivations() {
        let der = derivations(&zoo::ess());
        assert_eq!(der.matrices.len(), 5);
        assert!(validate(&der.algebra, Identity::Lie).passed);
        let a = zoo::ess();
        for m in &der.matrices {
            assert!(is_derivation(&a, m).unwrap());
        }
    }

    #[test]
    fn inner_derivations_pass_leibniz() {
        let a = zoo::zassenhaus(3).unwrap();
        for i in 0..a.dim() {
            assert!(is_derivation(&a, &a.ad_basis(i)).unwrap());
        }
        let f = a.field();
        let mut bad = ExactMatrix::zeros(f, a.dim(), a.dim());
        bad.set(0, 1, &f.one());
        assert!(!is_derivation(&a, &bad).unwrap());
    }
}
