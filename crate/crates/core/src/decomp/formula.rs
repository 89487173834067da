use serde::Serialize;

use crate::error::Error;
use crate::exactla::{ExactMatrix, OrderedBasis, Subspace, Vector};
use crate::liecore::{commutator, series, SeriesKind, StructureAlgebra};
use crate::zoo::semidirect_current;

/// One term of the lower central series of `L = S ⊗ A + D` next to the span
/// `S^n⊗A + Σ_{i+j=n, i>1, j>=1} S^i⊗A·D^j(A) + S⊗D^(n-1)(A) + D^n`.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaTerm {
    pub n: usize,
    pub computed: Subspace,
    pub predicted: Subspace,
    pub equal: bool,
}

fn tensor(u: &Subspace, v: &Subspace, ambient: usize) -> Result<Vec<Vector>, Error> {
    let f = u.field();
    let db = v.ambient_dim();
    let mut out = Vec::new();
    for x in u.vectors() {
        for y in v.vectors() {
            let mut w = f.zeros(ambient);
            for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                    w[i * db + j] = a * b;
                }
            }
            out.push(w);
        }
    }
    Ok(out)
}

/// `i`-th lower central term (1-based), repeating the last term once stable.
fn term(terms: &[Subspace], i: usize) -> &Subspace {
    &terms[(i - 1).min(terms.len() - 1)]
}

/// Compares the lower central series of `S ⊗ A + D` inside
/// `semidirect_current(s, a, dlist)` with the formula spans for `n = 1..=max_n`.
/// `sub` is the subalgebra `S` of `s`.
pub fn current_extension_series(
    s: &StructureAlgebra,
    sub: &Subspace,
    a: &StructureAlgebra,
    dlist: &[ExactMatrix],
    max_n: usize,
) -> Result<Vec<FormulaTerm>, Error> {
    let f = s.field();
    let amb = semidirect_current(s, a, dlist)?;
    let da = a.dim();
    let core = s.dim() * da;
    let dim = amb.dim();
    let full_a = Subspace::full(f, da);

    // L = S ⊗ A + D
    let mut lgens = tensor(sub, &full_a, dim)?;
    lgens.extend((0..dlist.len()).map(|r| f.unit_vector(dim, core + r)));
    let l = Subspace::from_vectors(f, dim, &lgens)?;
    let computed = series(&amb, &l, SeriesKind::LowerCentral)?.terms;
    let s_terms = series(s, sub, SeriesKind::LowerCentral)?.terms;

    // D^j(A)
    let mut dj = vec![full_a.clone()];
    for j in 1..max_n {
        let prev = &dj[j - 1];
        let mut imgs = Vec::new();
        for m in dlist {
            for v in prev.vectors() {
                imgs.push(m.mul_vec(&v)?);
            }
        }
        dj.push(Subspace::from_vectors(f, da, &imgs)?);
    }
    // D^n as a Lie algebra, in ambient coordinates
    let dspan = if dlist.is_empty() {
        None
    } else {
        Some(OrderedBasis::new(f, da * da, dlist.iter().map(ExactMatrix::flatten).collect())?)
    };
    let mut dlie: Vec<Vec<ExactMatrix>> = vec![dlist.to_vec()];
    for n in 1..max_n {
        let mut next = Vec::new();
        for x in dlist {
            for y in &dlie[n - 1] {
                next.push(commutator(x, y)?);
            }
        }
        dlie.push(next);
    }
    let to_ambient = |ms: &[ExactMatrix]| -> Result<Vec<Vector>, Error> {
        let Some(span) = &dspan else { return Ok(Vec::new()) };
        ms.iter()
            .map(|m| {
                let c = span.coordinates(&m.flatten())?.ok_or(Error::NotASubalgebra {
                    part: "derivation list".into(),
                    witness: (0, 0),
                })?;
                let mut w = f.zeros(dim);
                for (r, x) in c.into_iter().enumerate() {
                    w[core + r] = x;
                }
                Ok(w)
            })
            .collect()
    };

    let mut out = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let mut gens = tensor(term(&s_terms, n), &full_a, dim)?;
        for i in 2..n {
            let j = n - i;
            let ad = a.product_space(&full_a, &dj[j])?;
            gens.extend(tensor(term(&s_terms, i), &ad, dim)?);
        }
        gens.extend(tensor(sub, &dj[n - 1], dim)?);
        gens.extend(to_ambient(&dlie[n - 1])?);
        let predicted = Subspace::from_vectors(f, dim, &gens)?;
        let computed_n = term(&computed, n).clone();
        out.push(FormulaTerm {
            n,
            equal: computed_n == predicted,
            computed: computed_n,
            predicted,
        });
    }
    Ok(out)
}

/// `(S ⊗ A + D, N ⊗ A + D, M ⊗ A)` for a decomposition `S = N + M`: the ambient
/// `semidirect_current(s, a, dlist)` and its two candidate nilpotent parts.
pub fn current_extension_parts(
    s: &StructureAlgebra,
    n: &Subspace,
    m: &Subspace,
    a: &StructureAlgebra,
    dlist: &[ExactMatrix],
) -> Result<(StructureAlgebra, Subspace, Subspace), Error> {
    let f = s.field();
    let amb = semidirect_current(s, a, dlist)?;
    let dim = amb.dim();
    let core = s.dim() * a.dim();
    let full_a = Subspace::full(f, a.dim());
    let mut ngens = tensor(n, &full_a, dim)?;
    ngens.extend((0..dlist.len()).map(|r| f.unit_vector(dim, core + r)));
    let np = Subspace::from_vectors(f, dim, &ngens)?;
    let mp = Subspace::from_vectors(f, dim, &tensor(m, &full_a, dim)?)?;
    Ok((amb, np, mp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::petravchuk_fixture;
    use crate::exactla::FieldSpec;
    use crate::zoo;

    #[test]
    fn current_extension_decomposes() {
        let f = FieldSpec::GF2;
        let (env, n, m) = petravchuk_fixture();
        let a2 = zoo::truncated_poly(2, f).unwrap();
        let (amb, np, mp) = current_extension_parts(&env, &n, &m, &a2, &[zoo::d_dt(2, f)]).unwrap();
        assert_eq!(amb.dim(), 11);
        assert_eq!((np.dim(), mp.dim()), (5, 6));
        let cert = crate::decomp::verify(&amb, &np, &mp).unwrap();
        assert!(cert.is_direct);
        assert!(!cert.ambient_solvable);
    }

    #[test]
    fn formula_misses_derivative_of_nilpotent_part() {
        // S = M nilpotent with M^2 != 0: [D, M^2 ⊗ A] = M^2 ⊗ 1 survives into L^4
        let f = FieldSpec::GF2;
        let (env, _, m) = petravchuk_fixture();
        let a2 = zoo::truncated_poly(2, f).unwrap();
        let terms = current_extension_series(&env, &m, &a2, &[zoo::d_dt(2, f)], 5).unwrap();
        let bad: Vec<usize> = terms.iter().filter(|t| !t.equal).map(|t| t.n).collect();
        assert_eq!(bad, vec![4]);
        assert_eq!((terms[3].computed.dim(), terms[3].predicted.dim()), (1, 0));
        let m2 = series(&env, &m, SeriesKind::LowerCentral).unwrap().terms[1].clone();
        assert_eq!(m2.dim(), 1);
        let amb = semidirect_current(&env, &a2, &[zoo::d_dt(2, f)]).unwrap();
        let mut v = amb.zero_vector();
        for (i, x) in m2.vectors()[0].iter().enumerate() {
            v[i * 2] = x.clone();
        }
        assert!(terms[3].computed.contains_vector(&v).unwrap());
    }

    #[test]
    fn formula_matches_on_small_instances() {
        let f = FieldSpec::GF2;
        let (env, n, m) = petravchuk_fixture();
        let a2 = zoo::truncated_poly(2, f).unwrap();
        let a4 = zoo::truncated_poly(4, f).unwrap();
        let ess = zoo::ess();
        let cases: Vec<(StructureAlgebra, Subspace, StructureAlgebra, Vec<ExactMatrix>)> = vec![
            (ess.clone(), Subspace::full(f, 3), a2.clone(), vec![zoo::d_dt(2, f)]),
            (env.clone(), Subspace::full(f, 5), a2.clone(), vec![zoo::d_dt(2, f)]),
            (env.clone(), n.clone(), a2.clone(), vec![zoo::d_dt(2, f)]),
            (env.clone(), m.clone(), a2.clone(), vec![]),
            (env.clone(), n, a4.clone(), vec![zoo::d_dt(4, f)]),
            (ess, Subspace::full(f, 3), a4, vec![]),
        ];
        for (s, sub, a, ds) in cases {
            for t in current_extension_series(&s, &sub, &a, &ds, 5).unwrap() {
                assert!(t.equal, "n = {}: computed {} predicted {}", t.n, t.computed.dim(), t.predicted.dim());
            }
        }
    }
}
