//! Chevalley–Eilenberg cochain complexes, alternating or symmetric (char 2),
//! with trivial, adjoint or matrix-given coefficients.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{ExactMatrix, FieldSpec, Scalar, Subspace, Vector};
use crate::liecore::{commutator, satisfies, Identity, StructureAlgebra};

/// Largest cochain degree computed unless the caller raises it.
pub const DEFAULT_DEGREE_BUDGET: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Alternating,
    Symmetric,
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "alternating" | "alt" => Ok(Flavor::Alternating),
            "symmetric" | "sym" => Ok(Flavor::Symmetric),
            other => Err(Error::InvalidParameter(format!("unknown cochain flavor {other:?}"))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Alternating => "alternating",
            Flavor::Symmetric => "symmetric",
        })
    }
}

/// Cochains of one degree: functions on basis tuples with values in the module.
/// A cochain vector has entry `tuple_index * coeff_dim + coord`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CochainSpace {
    pub flavor: Flavor,
    pub degree: usize,
    pub algebra_dim: usize,
    /// Strictly increasing tuples (alternating) or non-decreasing ones (symmetric), lexicographic.
    pub basis_index: Vec<Vec<usize>>,
    pub coeff_dim: usize,
    #[serde(skip)]
    lookup: HashMap<Vec<usize>, usize>,
}

impl CochainSpace {
    pub fn new(flavor: Flavor, degree: usize, algebra_dim: usize, coeff_dim: usize) -> Self {
        let basis_index: Vec<Vec<usize>> = match flavor {
            Flavor::Alternating => (0..algebra_dim).combinations(degree).collect(),
            Flavor::Symmetric => (0..algebra_dim).combinations_with_replacement(degree).collect(),
        };
        let lookup = basis_index.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        CochainSpace {
            flavor,
            degree,
            algebra_dim,
            basis_index,
            coeff_dim,
            lookup,
        }
    }

    pub fn tuple_count(&self) -> usize {
        self.basis_index.len()
    }

    pub fn dim(&self) -> usize {
        self.tuple_count() * self.coeff_dim
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.lookup.get(tuple).copied()
    }

    /// Value of the cochain vector `phi` on a basis tuple, as a module vector.
    pub fn evaluate(&self, phi: &[Scalar], tuple: &[usize]) -> Option<Vec<Scalar>> {
        let t = self.index_of(tuple)?;
        Some(phi[t * self.coeff_dim..(t + 1) * self.coeff_dim].to_vec())
    }
}

/// A representation `ρ: L → gl(V)` given by the matrices `ρ(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientModule {
    pub dim: usize,
    pub action: Vec<ExactMatrix>,
}

impl CoefficientModule {
    /// The one-dimensional module with zero action.
    pub fn trivial(l: &StructureAlgebra) -> Self {
        CoefficientModule {
            dim: 1,
            action: vec![ExactMatrix::zeros(l.field(), 1, 1); l.dim()],
        }
    }

    pub fn adjoint(l: &StructureAlgebra) -> Self {
        CoefficientModule {
            dim: l.dim(),
            action: (0..l.dim()).map(|i| l.ad_basis(i)).collect(),
        }
    }

    /// Checks `ρ([e_i,e_j]) = [ρ(e_i), ρ(e_j)]` on every basis pair.
    pub fn new(l: &StructureAlgebra, action: Vec<ExactMatrix>) -> Result<Self, Error> {
        if action.len() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                found: action.len(),
            });
        }
        let dim = action.first().map_or(0, ExactMatrix::rows);
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.rows().max(m.cols()),
                });
            }
            if m.field() != l.field() {
                return Err(Error::FieldMismatch);
            }
        }
        let module = CoefficientModule { dim, action };
        if let Some(w) = module.representation_failure(l)? {
            return Err(Error::NotARepresentation(w));
        }
        Ok(module)
    }

    /// `ρ(x)` for a vector `x` of the algebra.
    pub fn act(&self, field: FieldSpec, x: &[Scalar]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(field, self.dim, self.dim);
        for (c, m) in x.iter().zip(&self.action) {
            if !c.is_zero() {
                out = out.add(&m.scale(c)).expect("square of module dim");
            }
        }
        out
    }

    pub fn representation_failure(&self, l: &StructureAlgebra) -> Result<Option<(usize, usize)>, Error> {
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                let lhs = self.act(l.field(), &l.product(&l.basis_vector(i), &l.basis_vector(j))?);
                if lhs != commutator(&self.action[i], &self.action[j])? {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }
}

fn check_inputs(l: &StructureAlgebra, m: &CoefficientModule, flavor: Flavor) -> Result<(), Error> {
    if flavor == Flavor::Symmetric && l.field().characteristic() != 2 {
        return Err(Error::WrongCharacteristic {
            needed: 2,
            found: l.field().characteristic(),
        });
    }
    if !satisfies(l, Identity::Lie) {
        return Err(Error::NotALieAlgebra("cochain complexes need a Lie algebra".into()));
    }
    if m.action.len() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: m.action.len(),
        });
    }
    Ok(())
}

fn sign(f: FieldSpec, odd: bool) -> Scalar {
    if odd {
        -f.one()
    } else {
        f.one()
    }
}

/// Inserts `k` into the sorted `rest`; returns the sorted tuple and whether the
/// alternating sign flips, or `None` when an alternating cochain vanishes.
fn insert(flavor: Flavor, rest: &[usize], k: usize) -> Option<(Vec<usize>, bool)> {
    let pos = rest.partition_point(|&x| x < k);
    if flavor == Flavor::Alternating && rest.get(pos) == Some(&k) {
        return None;
    }
    let mut t = Vec::with_capacity(rest.len() + 1);
    t.extend_from_slice(&rest[..pos]);
    t.push(k);
    t.extend_from_slice(&rest[pos..]);
    Some((t, flavor == Flavor::Alternating && pos % 2 == 1))
}

fn without(t: &[usize], skip: &[usize]) -> Vec<usize> {
    t.iter()
        .enumerate()
        .filter(|(p, _)| !skip.contains(p))
        .map(|(_, &x)| x)
        .collect()
}

/// The coboundary `d_n: C^n → C^(n+1)` as a matrix acting on cochain vectors.
pub fn differential(l: &StructureAlgebra, m: &CoefficientModule, n: usize, flavor: Flavor) -> Result<ExactMatrix, Error> {
    differential_with_budget(l, m, n, flavor, DEFAULT_DEGREE_BUDGET)
}

pub fn differential_with_budget(
    l: &StructureAlgebra,
    m: &CoefficientModule,
    n: usize,
    flavor: Flavor,
    budget: usize,
) -> Result<ExactMatrix, Error> {
    check_inputs(l, m, flavor)?;
    if n + 1 > budget + 1 {
        return Err(Error::DegreeBudget { degree: n, budget });
    }
    let src = CochainSpace::new(flavor, n, l.dim(), m.dim);
    let dst = CochainSpace::new(flavor, n + 1, l.dim(), m.dim);
    Ok(assemble(l, m, &src, &dst))
}

fn assemble(l: &StructureAlgebra, m: &CoefficientModule, src: &CochainSpace, dst: &CochainSpace) -> ExactMatrix {
    let f = l.field();
    let md = m.dim;
    let flavor = src.flavor;
    let mut d = ExactMatrix::zeros(f, dst.dim(), src.dim());
    for (ti, t) in dst.basis_index.iter().enumerate() {
        let row0 = ti * md;
        // Σ_i (−1)^i ρ(x_i) φ(.. x̂_i ..)
        for i in 0..t.len() {
            let rho = &m.action[t[i]];
            if rho.is_zero() {
                continue;
            }
            let s = sign(f, i % 2 == 1);
            let col0 = src.index_of(&without(t, &[i])).expect("sub-tuple of a basis tuple") * md;
            for r in 0..md {
                for c in 0..md {
                    if !rho.is_zero_at(r, c) {
                        d.add_at(row0 + r, col0 + c, &(&rho.get(r, c) * &s));
                    }
                }
            }
        }
        // Σ_{i<j} (−1)^(i+j) φ([x_i,x_j], .. x̂_i .. x̂_j ..)
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let bracket = l.basis_product(t[i], t[j]);
                if bracket.is_empty() {
                    continue;
                }
                let rest = without(t, &[i, j]);
                let s = sign(f, (i + j) % 2 == 1);
                for (k, c) in bracket {
                    let Some((tuple, flip)) = insert(flavor, &rest, *k) else {
                        continue;
                    };
                    let coeff = &(c * &s) * &sign(f, flip);
                    let col0 = src.index_of(&tuple).expect("sorted tuple") * md;
                    for r in 0..md {
                        d.add_at(row0 + r, col0 + r, &coeff);
                    }
                }
            }
        }
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub degree: usize,
    pub flavor: Flavor,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
    /// Basis of the cocycle space (reduced row-echelon).
    pub cocycle_basis: Vec<Vector>,
    /// Cocycles whose classes form a basis of `H^n`.
    pub representatives: Vec<Vector>,
}

fn coboundary_space(l: &StructureAlgebra, m: &CoefficientModule, n: usize, flavor: Flavor, budget: usize) -> Result<(Subspace, Option<ExactMatrix>), Error> {
    let dim_n = CochainSpace::new(flavor, n, l.dim(), m.dim).dim();
    if n == 0 {
        return Ok((Subspace::zero(l.field(), dim_n), None));
    }
    let prev = differential_with_budget(l, m, n - 1, flavor, budget)?;
    Ok((Subspace::column_space(&prev), Some(prev)))
}

pub fn cohomology(l: &StructureAlgebra, m: &CoefficientModule, n: usize, flavor: Flavor) -> Result<CohomologyReport, Error> {
    cohomology_with_budget(l, m, n, flavor, DEFAULT_DEGREE_BUDGET)
}

pub fn cohomology_with_budget(
    l: &StructureAlgebra,
    m: &CoefficientModule,
    n: usize,
    flavor: Flavor,
    budget: usize,
) -> Result<CohomologyReport, Error> {
    if n > budget {
        return Err(Error::DegreeBudget { degree: n, budget });
    }
    let d = differential_with_budget(l, m, n, flavor, budget)?;
    let (boundaries, prev) = coboundary_space(l, m, n, flavor, budget)?;
    if let Some(prev) = &prev {
        if !d.mul(prev)?.is_zero() {
            return Err(Error::NotAComplex(n));
        }
    }
    let cocycles = d.kernel();
    let mut representatives = Vec::new();
    let mut span = boundaries.clone();
    for v in cocycles.vectors() {
        if !span.contains_vector(&v)? {
            span = span.add_vectors(std::slice::from_ref(&v))?;
            representatives.push(v);
        }
    }
    Ok(CohomologyReport {
        degree: n,
        flavor,
        dim_cochains: d.cols(),
        dim_cocycles: cocycles.dim(),
        dim_coboundaries: boundaries.dim(),
        dim_h: cocycles.dim() - boundaries.dim(),
        cocycle_basis: cocycles.vectors(),
        representatives,
    })
}

fn check_cochain(l: &StructureAlgebra, m: &CoefficientModule, n: usize, flavor: Flavor, phi: &[Scalar]) -> Result<(), Error> {
    let expected = CochainSpace::new(flavor, n, l.dim(), m.dim).dim();
    if phi.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: phi.len(),
        });
    }
    Ok(())
}

pub fn is_cocycle(l: &StructureAlgebra, m: &CoefficientModule, n: usize, flavor: Flavor, phi: &[Scalar]) -> Result<bool, Error> {
    check_cochain(l, m, n, flavor, phi)?;
    let d = differential_with_budget(l, m, n, flavor, n.max(DEFAULT_DEGREE_BUDGET))?;
    Ok(d.mul_vec(phi)?.iter().all(Scalar::is_zero))
}

/// A preimage `ψ` with `dψ = φ`, or `None` if `φ` is not a coboundary.
pub fn is_coboundary(
    l: &StructureAlgebra,
    m: &CoefficientModule,
    n: usize,
    flavor: Flavor,
    phi: &[Scalar],
) -> Result<Option<Vector>, Error> {
    check_cochain(l, m, n, flavor, phi)?;
    if n == 0 {
        check_inputs(l, m, flavor)?;
        return Ok(phi.iter().all(Scalar::is_zero).then(Vec::new));
    }
    let prev = differential_with_budget(l, m, n - 1, flavor, n.max(DEFAULT_DEGREE_BUDGET))?;
    prev.solve(phi)
}

/// The `n` symmetric 2-cocycles of the Zassenhaus algebra `W_1'(n)` with trivial
/// coefficients: for `k = 0..n`, value 1 on `e_i ∨ e_j` when `i = j = 2^k − 2` or
/// `{i, j} = {−1, 2^(k+1) − 3}`.
pub fn zassenhaus_commutative_cocycles(n: u32) -> Result<Vec<Vector>, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let dim = (1usize << n) - 1;
    let space = CochainSpace::new(Flavor::Symmetric, 2, dim, 1);
    let f = FieldSpec::GF2;
    let pos = |i: i64| (i + 1) as usize;
    Ok((0..n)
        .map(|k| {
            let mut v = f.zeros(space.dim());
            let diag = (1i64 << k) - 2;
            let top = (1i64 << (k + 1)) - 3;
            for pair in [[pos(diag), pos(diag)], [pos(-1), pos(top)]] {
                let idx = space.index_of(&pair).expect("indices in range");
                v[idx] = f.one();
            }
            v
        })
        .collect())
}

/// A basis of the symmetric `H^2(W_1'(n), K)` by homogeneous cocycles: `e_-1 ∨ e_-1`,
/// and for `k = 1..n` the sum of all `e_i ∨ e_j` (`i <= j`, both in range) with
/// `i + j = 2^n − 4 + 2^k`.
pub fn zassenhaus_commutative_h2_basis(n: u32) -> Result<Vec<Vector>, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let top = (1i64 << n) - 3;
    let dim = (top + 2) as usize;
    let space = CochainSpace::new(Flavor::Symmetric, 2, dim, 1);
    let f = FieldSpec::GF2;
    let pos = |i: i64| (i + 1) as usize;
    let mut out = Vec::with_capacity(n as usize);
    let mut first = f.zeros(space.dim());
    first[space.index_of(&[0, 0]).expect("in range")] = f.one();
    out.push(first);
    for k in 1..n {
        let total = (1i64 << n) - 4 + (1i64 << k);
        let mut v = f.zeros(space.dim());
        for i in (total - top).max(-1)..=total / 2 {
            let idx = space.index_of(&[pos(i), pos(total - i)]).expect("in range");
            v[idx] = f.one();
        }
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn cochain_space_dimensions() {
        for d in 1..5 {
            for n in 0..5 {
                assert_eq!(CochainSpace::new(Flavor::Alternating, n, d, 2).dim(), 2 * binom(d, n));
                assert_eq!(CochainSpace::new(Flavor::Symmetric, n, d, 1).dim(), binom(d + n - 1, n));
            }
        }
        let dims: Vec<usize> = (1..=8).map(|n| CochainSpace::new(Flavor::Symmetric, n, 3, 1).dim()).collect();
        assert!(dims.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(CochainSpace::new(Flavor::Alternating, 4, 3, 1).dim(), 0);
    }

    #[test]
    fn ess_d2_vanishes() {
        let l = zoo::ess();
        let d = differential(&l, &CoefficientModule::trivial(&l), 2, Flavor::Alternating).unwrap();
        assert_eq!((d.rows(), d.cols()), (1, 3));
        assert!(d.is_zero());
    }

    #[test]
    fn degree_zero_and_abelian_are_zero_maps() {
        let l = zoo::zassenhaus(3).unwrap();
        assert!(differential(&l, &CoefficientModule::trivial(&l), 0, Flavor::Symmetric).unwrap().is_zero());
        let a = zoo::abelian(3, FieldSpec::GF2);
        for flavor in [Flavor::Alternating, Flavor::Symmetric] {
            for n in 0..4 {
                assert!(differential(&a, &CoefficientModule::trivial(&a), n, flavor).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn zassenhaus_second_cohomology() {
        for n in 2..=3u32 {
            let l = zoo::zassenhaus(n).unwrap();
            let triv = CoefficientModule::trivial(&l);
            assert_eq!(cohomology(&l, &triv, 2, Flavor::Alternating).unwrap().dim_h, 0);
            let sym = cohomology(&l, &triv, 2, Flavor::Symmetric).unwrap();
            assert_eq!(sym.dim_h, n as usize);
            assert_eq!(sym.representatives.len(), n as usize);
        }
    }

    #[test]
    fn explicit_cocycles() {
        let c = zassenhaus_commutative_cocycles(2).unwrap();
        let space = CochainSpace::new(Flavor::Symmetric, 2, 3, 1);
        let support = |v: &Vector| -> Vec<Vec<usize>> {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, _)| space.basis_index[i].clone())
                .collect()
        };
        assert_eq!(support(&c[0]), vec![vec![0, 0]]);
        assert_eq!(support(&c[1]), vec![vec![0, 2], vec![1, 1]]);
        // only the k = 0 cochain of the formula is closed
        for n in 2..=4u32 {
            let l = zoo::zassenhaus(n).unwrap();
            let triv = CoefficientModule::trivial(&l);
            let cs = zassenhaus_commutative_cocycles(n).unwrap();
            assert_eq!(cs.len(), n as usize);
            assert!(is_cocycle(&l, &triv, 2, Flavor::Symmetric, &cs[0]).unwrap());
            for phi in &cs[1..] {
                assert!(!is_cocycle(&l, &triv, 2, Flavor::Symmetric, phi).unwrap());
            }
        }
    }

    #[test]
    fn homogeneous_h2_basis() {
        for n in 2..=4u32 {
            let l = zoo::zassenhaus(n).unwrap();
            let triv = CoefficientModule::trivial(&l);
            let cs = zassenhaus_commutative_h2_basis(n).unwrap();
            assert_eq!(cs.len(), n as usize);
            for phi in &cs {
                assert!(is_cocycle(&l, &triv, 2, Flavor::Symmetric, phi).unwrap());
                assert!(is_coboundary(&l, &triv, 2, Flavor::Symmetric, phi).unwrap().is_none());
            }
            let prev = differential(&l, &triv, 1, Flavor::Symmetric).unwrap();
            let b = Subspace::column_space(&prev);
            let all = b.add_vectors(&cs).unwrap();
            assert_eq!(all.dim(), b.dim() + n as usize);
            let z = differential(&l, &triv, 2, Flavor::Symmetric).unwrap().kernel();
            assert_eq!(all, z);
        }
    }

    #[test]
    fn coboundary_preimages() {
        let l = zoo::zassenhaus(3).unwrap();
        let f = l.field();
        let adj = CoefficientModule::adjoint(&l);
        let d1 = differential(&l, &adj, 1, Flavor::Alternating).unwrap();
        let psi: Vec<Scalar> = (0..d1.cols()).map(|i| f.from_i64((i % 3 == 0) as i64)).collect();
        let phi = d1.mul_vec(&psi).unwrap();
        let pre = is_coboundary(&l, &adj, 2, Flavor::Alternating, &phi).unwrap().unwrap();
        assert_eq!(d1.mul_vec(&pre).unwrap(), phi);
        let zero = f.zeros(phi.len());
        assert!(is_cocycle(&l, &adj, 2, Flavor::Alternating, &zero).unwrap());
        assert!(is_coboundary(&l, &adj, 2, Flavor::Alternating, &zero).unwrap().is_some());
        assert!(matches!(
            is_cocycle(&l, &adj, 2, Flavor::Alternating, &zero[1..]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn first_cohomology_is_abelianization() {
        let f = FieldSpec::Rationals;
        for l in [zoo::heisenberg(f), zoo::sl2(f), zoo::abelian(2, f)] {
            let triv = CoefficientModule::trivial(&l);
            let h1 = cohomology(&l, &triv, 1, Flavor::Alternating).unwrap().dim_h;
            let derived = l.product_space(&Subspace::full(f, l.dim()), &Subspace::full(f, l.dim())).unwrap();
            assert_eq!(h1, l.dim() - derived.dim());
        }
    }

    #[test]
    fn rational_d_squared_vanishes() {
        let f = FieldSpec::Rationals;
        for l in [zoo::sl2(f), zoo::heisenberg(f)] {
            for m in [CoefficientModule::trivial(&l), CoefficientModule::adjoint(&l)] {
                for n in 0..3 {
                    let d0 = differential(&l, &m, n, Flavor::Alternating).unwrap();
                    let d1 = differential(&l, &m, n + 1, Flavor::Alternating).unwrap();
                    assert!(d1.mul(&d0).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn input_errors() {
        let q = zoo::sl2(FieldSpec::Rationals);
        assert!(matches!(
            differential(&q, &CoefficientModule::trivial(&q), 1, Flavor::Symmetric),
            Err(Error::WrongCharacteristic { .. })
        ));
        let l = zoo::ess();
        assert!(matches!(
            cohomology(&l, &CoefficientModule::trivial(&l), 7, Flavor::Symmetric),
            Err(Error::DegreeBudget { .. })
        ));
        let f = l.field();
        let mut bad = vec![ExactMatrix::zeros(f, 2, 2); 3];
        bad[0].set(0, 1, &f.one());
        bad[1].set(1, 0, &f.one());
        assert!(matches!(CoefficientModule::new(&l, bad), Err(Error::NotARepresentation(_))));
        assert!(CoefficientModule::new(&l, CoefficientModule::adjoint(&l).action).is_ok());
    }
}
