use serde::{Deserialize, Serialize};

use super::algebra::StructureAlgebra;
use crate::error::Error;
use crate::exactla::{Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    /// `terms[0]` is the starting subalgebra; consecutive terms strictly shrink.
    pub terms: Vec<Subspace>,
    pub stabilized: bool,
    /// Number of steps to reach zero (nilpotency or solvability index), if it does.
    pub index: Option<usize>,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn reaches_zero(&self) -> bool {
        self.index.is_some()
    }
}

/// Smallest subspace containing `generators` and closed under the product.
pub fn subalgebra_closure(a: &StructureAlgebra, generators: &[Vector]) -> Result<Subspace, Error> {
    if generators.is_empty() {
        return Err(Error::InvalidParameter("closure needs at least one generator".into()));
    }
    let start = Subspace::from_vectors(a.field(), a.dim(), generators)?;
    close(a, start)
}

/// Closure of an existing subspace under the product.
pub fn close(a: &StructureAlgebra, start: Subspace) -> Result<Subspace, Error> {
    let mut s = start;
    loop {
        let next = s.sum(&a.product_space(&s, &s)?)?;
        if next.dim() == s.dim() {
            return Ok(s);
        }
        s = next;
    }
}

/// Derived or lower central series of the subalgebra `on`, iterated to a fixed point.
///
/// For the lower central series the brackets are taken with `on` itself, so the
/// result describes `on` as an algebra in its own right.
pub fn series(a: &StructureAlgebra, on: &Subspace, kind: SeriesKind) -> Result<SeriesReport, Error> {
    if let Some(w) = a.closure_witness(on)? {
        return Err(Error::NotASubalgebra {
            part: "series base".into(),
            witness: w,
        });
    }
    let mut terms = vec![on.clone()];
    let mut stabilized = false;
    for _ in 0..=a.dim() {
        let cur = terms.last().expect("nonempty");
        if cur.is_zero() {
            stabilized = true;
            break;
        }
        let next = match kind {
            SeriesKind::Derived => a.product_space(cur, cur)?,
            SeriesKind::LowerCentral => a.product_space(on, cur)?,
        };
        if next == *cur {
            stabilized = true;
            break;
        }
        terms.push(next);
    }
    let index = terms.last().filter(|t| t.is_zero()).map(|_| terms.len() - 1);
    Ok(SeriesReport {
        kind,
        terms,
        stabilized,
        index,
    })
}

pub fn full_series(a: &StructureAlgebra, kind: SeriesKind) -> SeriesReport {
    series(a, &Subspace::full(a.field(), a.dim()), kind).expect("the whole algebra is closed")
}

pub fn nilpotency_index(a: &StructureAlgebra, on: &Subspace) -> Result<Option<usize>, Error> {
    Ok(series(a, on, SeriesKind::LowerCentral)?.index)
}

pub fn is_nilpotent(a: &StructureAlgebra) -> bool {
    full_series(a, SeriesKind::LowerCentral).index.is_some()
}

pub fn is_solvable(a: &StructureAlgebra) -> bool {
    full_series(a, SeriesKind::Derived).index.is_some()
}
