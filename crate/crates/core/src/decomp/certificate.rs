use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{FieldSpec, Subspace};
use crate::liecore::{is_solvable, series, two_envelope, SeriesKind, StructureAlgebra};
use crate::zoo;

/// A verified decomposition `L = N + M` into nilpotent subalgebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    pub algebra: StructureAlgebra,
    pub n_part: Subspace,
    pub m_part: Subspace,
    pub n_nilpotency_index: usize,
    pub m_nilpotency_index: usize,
    pub is_direct: bool,
    pub ambient_solvable: bool,
}

impl DecompositionCertificate {
    /// Runs [`verify`] again on the stored data.
    pub fn recheck(&self) -> Result<DecompositionCertificate, Error> {
        verify(&self.algebra, &self.n_part, &self.m_part)
    }
}

fn nilpotency(l: &StructureAlgebra, part: &Subspace, label: &str) -> Result<usize, Error> {
    if let Some(w) = l.closure_witness(part)? {
        return Err(Error::NotASubalgebra {
            part: label.into(),
            witness: w,
        });
    }
    series(l, part, SeriesKind::LowerCentral)?
        .index
        .ok_or_else(|| Error::DecompositionFailed(format!("{label} is not nilpotent")))
}

pub fn verify(l: &StructureAlgebra, n: &Subspace, m: &Subspace) -> Result<DecompositionCertificate, Error> {
    for part in [n, m] {
        if part.field() != l.field() {
            return Err(Error::FieldMismatch);
        }
        if part.ambient_dim() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                found: part.ambient_dim(),
            });
        }
    }
    let n_index = nilpotency(l, n, "N")?;
    let m_index = nilpotency(l, m, "M")?;
    let sum = n.sum(m)?;
    if !sum.is_full() {
        return Err(Error::DecompositionFailed(format!(
            "N + M has dimension {} < {}",
            sum.dim(),
            l.dim()
        )));
    }
    Ok(DecompositionCertificate {
        algebra: l.clone(),
        n_part: n.clone(),
        m_part: m.clone(),
        n_nilpotency_index: n_index,
        m_nilpotency_index: m_index,
        is_direct: n.dim() + m.dim() == l.dim(),
        ambient_solvable: is_solvable(l),
    })
}

/// The 5-dimensional 2-envelope of `ess` (basis `e-1, e0, e1, e-1^[2], e1^[2]`) with
/// `N = <e0+e-1+e-1^[2], e0+e1+e1^[2]>` and `M = <e-1^[2], e0, e1^[2]>`.
pub fn petravchuk_fixture() -> (StructureAlgebra, Subspace, Subspace) {
    let env = two_envelope(&zoo::ess()).expect("ess is centerless over GF(2)");
    let f = FieldSpec::GF2;
    let v = |bits: [i64; 5]| bits.map(|b| f.from_i64(b)).to_vec();
    let n = Subspace::from_vectors(f, 5, &[v([1, 1, 0, 1, 0]), v([0, 1, 1, 0, 1])]).expect("length 5");
    let m = Subspace::from_vectors(f, 5, &[v([0, 0, 0, 1, 0]), v([0, 1, 0, 0, 0]), v([0, 0, 0, 0, 1])])
        .expect("length 5");
    (env.algebra, n, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_verifies() {
        let (l, n, m) = petravchuk_fixture();
        assert_eq!(l.dim(), 5);
        let c = verify(&l, &n, &m).unwrap();
        assert_eq!(c.n_nilpotency_index, 1);
        assert!(c.m_nilpotency_index >= 1);
        assert!(c.is_direct);
        assert!(!c.ambient_solvable);
        assert!(n.intersection(&m).unwrap().is_zero());
    }

    #[test]
    fn verify_is_symmetric() {
        let (l, n, m) = petravchuk_fixture();
        let a = verify(&l, &n, &m).unwrap();
        let b = verify(&l, &m, &n).unwrap();
        assert_eq!(a.n_nilpotency_index, b.m_nilpotency_index);
        assert_eq!(a.m_nilpotency_index, b.n_nilpotency_index);
        assert_eq!((a.is_direct, a.ambient_solvable), (b.is_direct, b.ambient_solvable));
    }

    #[test]
    fn failures() {
        let (l, n, _) = petravchuk_fixture();
        let full = Subspace::full(l.field(), 5);
        assert!(matches!(verify(&l, &full, &full), Err(Error::DecompositionFailed(_))));
        assert!(matches!(verify(&l, &n, &n), Err(Error::DecompositionFailed(_))));
        let f = l.field();
        let open = Subspace::from_vectors(f, 5, &[f.unit_vector(5, 0), f.unit_vector(5, 2)]).unwrap();
        assert!(matches!(verify(&l, &open, &n), Err(Error::NotASubalgebra { .. })));
    }

    #[test]
    fn certificate_json_round_trip() {
        let (l, n, m) = petravchuk_fixture();
        let c = verify(&l, &n, &m).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: DecompositionCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.recheck().unwrap(), c);
    }
}
