use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::partition::{factorial, CharacterCache, Partition};
use crate::error::Error;
use crate::exactla::{ExactMatrix, FieldSpec, Scalar, Subspace};

/// Isotypic piece `S_λ A ⊗ S_λ~ B` of `Λ^n(A ⊗ B)`.
#[derive(Clone, Debug, Serialize)]
pub struct CauchyComponent {
    pub lambda: Partition,
    /// Image of the projector in wedge coordinates (sorted index tuples of `A ⊗ B`,
    /// where `e_α ⊗ f_β` has index `α·b + β`).
    pub chains: Subspace,
    /// The projector `P_λ` on `Λ^n(A ⊗ B)` in wedge coordinates.
    #[serde(skip)]
    pub projector: ExactMatrix,
}

impl CauchyComponent {
    pub fn dim(&self) -> usize {
        self.chains.dim()
    }
}

fn sign(perm: &[usize]) -> i64 {
    Partition::cycle_type(perm).class_sign()
}

/// Decomposes `Λ^n(A ⊗ B)` for `dim A = a_dim`, `dim B = b_dim` by the central
/// idempotents `e_λ = χ_λ(1)/n! Σ_σ χ_λ(σ) σ` acting on the `A` slots of the
/// antisymmetrized tensor. Components come in [`Partition::all`] order; `(n)`
/// is `Sym^n A ⊗ Λ^n B`.
pub fn cauchy_decompose(a_dim: usize, b_dim: usize, n: usize) -> Result<Vec<CauchyComponent>, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("Cauchy decomposition needs n >= 1".into()));
    }
    let f = FieldSpec::Rationals;
    let v = a_dim * b_dim;
    let wedges: Vec<Vec<usize>> = (0..v).combinations(n).collect();
    let lookup: HashMap<&[usize], usize> = wedges.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let lambdas = Partition::all(n);
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut cache = CharacterCache::new();
    let chars: Vec<Vec<i64>> = lambdas
        .iter()
        .map(|l| {
            perms
                .iter()
                .map(|p| cache.character(l, &Partition::cycle_type(p)).expect("same size"))
                .collect()
        })
        .collect();
    let signs: Vec<i64> = perms.iter().map(|p| sign(p)).collect();

    // integer accumulators Σ sgn(τ) χ_λ(σ) per (target, source)
    let mut acc: HashMap<(usize, usize), Vec<i64>> = HashMap::new();
    let mut slot = vec![0usize; n];
    for (wi, w) in wedges.iter().enumerate() {
        let alpha: Vec<usize> = w.iter().map(|x| x / b_dim).collect();
        let beta: Vec<usize> = w.iter().map(|x| x % b_dim).collect();
        for (ti, tau) in perms.iter().enumerate() {
            for (si, sigma) in perms.iter().enumerate() {
                for k in 0..n {
                    slot[k] = alpha[tau[sigma[k]]] * b_dim + beta[tau[k]];
                }
                if slot.windows(2).all(|p| p[0] < p[1]) {
                    let target = lookup[slot.as_slice()];
                    let e = acc.entry((target, wi)).or_insert_with(|| vec![0; lambdas.len()]);
                    for (li, c) in chars.iter().enumerate() {
                        e[li] += signs[ti] * c[si];
                    }
                }
            }
        }
    }
    let nf = BigInt::from(factorial(n));
    let mut out = Vec::with_capacity(lambdas.len());
    for (li, lambda) in lambdas.iter().enumerate() {
        let deg = BigInt::from(chars[li][0]);
        let mut p = ExactMatrix::zeros(f, wedges.len(), wedges.len());
        for (&(t, s), vals) in &acc {
            if vals[li] != 0 {
                let q = BigRational::new(BigInt::from(vals[li]) * &deg, nf.clone());
                p.set(t, s, &Scalar::Rat(q));
            }
        }
        out.push(CauchyComponent {
            lambda: lambda.clone(),
            chains: Subspace::column_space(&p),
            projector: p,
        });
    }
    Ok(out)
}
