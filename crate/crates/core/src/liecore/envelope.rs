use super::algebra::StructureAlgebra;
use super::derivations::{commutator, linear_lie_algebra};
use crate::error::Error;
use crate::exactla::{ExactMatrix, OrderedBasis, Vector};

/// The 2-envelope of a centerless Lie algebra in characteristic 2, realized
/// inside `gl(L)` as the smallest subalgebra containing `ad L` and closed
/// under squaring.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub algebra: StructureAlgebra,
    /// `dim(envelope) × dim(L)`: column `i` holds the coordinates of `ad e_i`.
    pub embedding: ExactMatrix,
    /// Coordinates of `x^[2]` for each basis element `x` of the envelope.
    pub square_map: Vec<Vector>,
    /// Matrix realization of each envelope basis element.
    pub matrices: Vec<ExactMatrix>,
}

fn square_name(name: &str) -> String {
    if let Some((base, rest)) = name.rsplit_once("^[") {
        if let Some(Ok(k)) = rest.strip_suffix(']').map(str::parse::<u64>) {
            return format!("{base}^[{}]", 2 * k);
        }
    }
    format!("{name}^[2]")
}

pub fn two_envelope(a: &StructureAlgebra) -> Result<Envelope, Error> {
    let f = a.field();
    if f.characteristic() != 2 {
        return Err(Error::WrongCharacteristic {
            needed: 2,
            found: f.characteristic(),
        });
    }
    let center = a.center();
    if !center.is_zero() {
        return Err(Error::UnsupportedCenter(center.dim()));
    }
    let d = a.dim();
    let mut matrices: Vec<ExactMatrix> = (0..d).map(|i| a.ad_basis(i)).collect();
    let mut names: Vec<String> = a.basis_names().to_vec();
    let mut grades: Option<Vec<i64>> = a.grading().map(<[i64]>::to_vec);
    let mut span = OrderedBasis::new(f, d * d, matrices.iter().map(ExactMatrix::flatten).collect())?;

    let mut squared = 0;
    loop {
        let mut grew = false;
        while squared < matrices.len() {
            let sq = matrices[squared].mul(&matrices[squared])?;
            if span.coordinates(&sq.flatten())?.is_none() {
                names.push(square_name(&names[squared]));
                if let Some(g) = grades.as_mut() {
                    g.push(2 * g[squared]);
                }
                matrices.push(sq);
                span = OrderedBasis::new(f, d * d, matrices.iter().map(ExactMatrix::flatten).collect())?;
                grew = true;
            }
            squared += 1;
        }
        let n = matrices.len();
        'pairs: for x in 0..n {
            for y in x + 1..n {
                let c = commutator(&matrices[x], &matrices[y])?;
                if span.coordinates(&c.flatten())?.is_none() {
                    names.push(format!("[{},{}]", names[x], names[y]));
                    if let Some(g) = grades.as_mut() {
                        g.push(g[x] + g[y]);
                    }
                    matrices.push(c);
                    span = OrderedBasis::new(f, d * d, matrices.iter().map(ExactMatrix::flatten).collect())?;
                    grew = true;
                    break 'pairs;
                }
            }
        }
        if !grew {
            break;
        }
    }

    let mut algebra = linear_lie_algebra(f, d, &matrices, names)?;
    algebra.set_grading(grades)?;
    let n = matrices.len();
    let embedding = ExactMatrix::from_fn(f, n, d, |r, c| if r == c { f.one() } else { f.zero() });
    let square_map = matrices
        .iter()
        .map(|m| {
            let sq = m.mul(m)?.flatten();
            Ok(span.coordinates(&sq)?.expect("closed under squaring"))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Envelope {
        algebra,
        embedding,
        square_map,
        matrices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{FieldSpec, Subspace};
    use crate::liecore::{derivations, validate, Identity};
    use crate::zoo;

    #[test]
    fn ess_envelope_is_five_dimensional() {
        let env = two_envelope(&zoo::ess()).unwrap();
        assert_eq!(env.algebra.dim(), 5);
        assert_eq!(
            env.algebra.basis_names(),
            &["e-1", "e0", "e1", "e-1^[2]", "e1^[2]"].map(String::from)
        );
        assert!(validate(&env.algebra, Identity::Lie).passed);
    }

    #[test]
    fn envelope_rejects_bad_inputs() {
        assert!(matches!(
            two_envelope(&zoo::abelian(2, FieldSpec::GF2)),
            Err(Error::UnsupportedCenter(2))
        ));
        assert!(matches!(
            two_envelope(&zoo::sl2(FieldSpec::Prime(3))),
            Err(Error::WrongCharacteristic { needed: 2, found: 3 })
        ));
    }

    #[test]
    fn zassenhaus_envelope_extra_elements() {
        for n in 2..=4u32 {
            let a = zoo::zassenhaus(n).unwrap();
            let env = two_envelope(&a).unwrap();
            assert_eq!(env.algebra.dim(), (1usize << n) + n as usize - 1);
            assert!(validate(&env.algebra, Identity::Lie).passed);
            // squares stay inside, embedding is the identity block
            for (m, sq) in env.matrices.iter().zip(&env.square_map) {
                let rebuilt = sq
                    .iter()
                    .zip(&env.matrices)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(ExactMatrix::zeros(a.field(), a.dim(), a.dim()), |acc, (_, x)| acc.add(x).unwrap());
                assert_eq!(rebuilt, m.mul(m).unwrap());
            }
            // the span equals ad L + {(ad e_-1)^(2^k)} + {(ad e_(2^(n-1)-1))^2}
            let f = a.field();
            let mut expected: Vec<Vec<_>> = (0..a.dim()).map(|i| a.ad_basis(i).flatten()).collect();
            let mut p = a.ad_basis(0);
            for _ in 1..n {
                p = p.mul(&p).unwrap();
                expected.push(p.flatten());
            }
            let top = a.ad_basis((1usize << (n - 1)) - 1 + 1);
            expected.push(top.mul(&top).unwrap().flatten());
            let want = Subspace::from_vectors(f, a.dim() * a.dim(), &expected).unwrap();
            let got = Subspace::from_vectors(f, a.dim() * a.dim(), &env.matrices.iter().map(|m| m.flatten()).collect::<Vec<_>>()).unwrap();
            assert_eq!(want, got, "n = {n}");
            // and it coincides with the derivation algebra
            let der = derivations(&a);
            let der_span = Subspace::from_vectors(f, a.dim() * a.dim(), &der.matrices.iter().map(|m| m.flatten()).collect::<Vec<_>>()).unwrap();
            assert_eq!(der_span, got);
        }
    }
}
