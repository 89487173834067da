use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{axpy, ExactMatrix, FieldSpec, OrderedBasis, Scalar, Subspace, Vector};

use super::validate::Identity;

/// A finite-dimensional algebra given by structure constants: the product of
/// basis elements `i` and `j` is `Σ_k c[i][j][k] e_k`.
///
/// Both `(i, j)` and `(j, i)` are stored; nothing about symmetry is assumed.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    field: FieldSpec,
    dim: usize,
    basis_names: Vec<String>,
    /// Sparse rows indexed by `i * dim + j`, sorted by `k`, zero terms omitted.
    products: Vec<Vec<(usize, Scalar)>>,
    grading: Option<Vec<i64>>,
    verdicts: [OnceLock<bool>; Identity::COUNT],
}

impl PartialEq for StructureAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.basis_names == other.basis_names
            && self.products == other.products
            && self.grading == other.grading
    }
}

impl Eq for StructureAlgebra {}

impl StructureAlgebra {
    /// The algebra with zero product on the given basis.
    pub fn zero(field: FieldSpec, basis_names: Vec<String>) -> Self {
        let dim = basis_names.len();
        StructureAlgebra {
            field,
            dim,
            basis_names,
            products: vec![Vec::new(); dim * dim],
            grading: None,
            verdicts: Default::default(),
        }
    }

    /// Builds an algebra from a function returning the dense product vector of `e_i e_j`.
    pub fn from_fn(
        field: FieldSpec,
        basis_names: Vec<String>,
        mut f: impl FnMut(usize, usize) -> Vector,
    ) -> Result<Self, Error> {
        let mut a = Self::zero(field, basis_names);
        for i in 0..a.dim {
            for j in 0..a.dim {
                let v = f(i, j);
                a.set_product(i, j, &v)?;
            }
        }
        Ok(a)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn set_grading(&mut self, grading: Option<Vec<i64>>) -> Result<(), Error> {
        if let Some(g) = &grading {
            if g.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: g.len(),
                });
            }
        }
        self.grading = grading;
        Ok(())
    }

    /// First basis pair whose product leaves the homogeneous component of degree `g_i + g_j`.
    pub fn grading_violation(&self) -> Option<(usize, usize)> {
        let g = self.grading.as_ref()?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.basis_product(i, j).iter().any(|(k, _)| g[*k] != g[i] + g[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn with_grading(mut self, grading: Vec<i64>) -> Result<Self, Error> {
        self.set_grading(Some(grading))?;
        Ok(self)
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: &[Scalar]) -> Result<(), Error> {
        self.check_len(v.len())?;
        if v.iter().any(|x| !self.field.owns(x)) {
            return Err(Error::FieldMismatch);
        }
        self.products[i * self.dim + j] = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k, x.clone()))
            .collect();
        self.verdicts = Default::default();
        Ok(())
    }

    /// Sparse product of basis elements `i` and `j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        self.field.unit_vector(self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector {
        self.field.zeros(self.dim)
    }

    fn check_len(&self, len: usize) -> Result<(), Error> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: len,
            });
        }
        Ok(())
    }

    /// Bilinear product `x·y` (the bracket `[x, y]` for Lie algebras).
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, Error> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.basis_product(i, j) {
                    out[*k] += &(&c * s);
                }
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, Error> {
        self.product(x, y)
    }

    /// Product of a basis element with a vector, `e_i · y`.
    pub fn basis_times(&self, i: usize, y: &[Scalar]) -> Vector {
        let mut out = self.zero_vector();
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, s) in self.basis_product(i, j) {
                out[*k] += &(yj * s);
            }
        }
        out
    }

    /// Product of a vector with a basis element, `x · e_j`.
    pub fn times_basis(&self, x: &[Scalar], j: usize) -> Vector {
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, s) in self.basis_product(i, j) {
                out[*k] += &(xi * s);
            }
        }
        out
    }

    /// Matrix of left multiplication `y ↦ x·y` (`ad x` for Lie algebras); column `j` is `x·e_j`.
    pub fn left_mul(&self, x: &[Scalar]) -> Result<ExactMatrix, Error> {
        self.check_len(x.len())?;
        let mut m = ExactMatrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            for (k, v) in self.times_basis(x, j).iter().enumerate() {
                m.add_at(k, j, v);
            }
        }
        Ok(m)
    }

    pub fn ad(&self, x: &[Scalar]) -> Result<ExactMatrix, Error> {
        self.left_mul(x)
    }

    pub fn ad_basis(&self, i: usize) -> ExactMatrix {
        self.left_mul(&self.basis_vector(i)).expect("basis vector has the right length")
    }

    /// Span of all products `u·v` with `u` in `left` and `v` in `right`.
    pub fn product_space(&self, left: &Subspace, right: &Subspace) -> Result<Subspace, Error> {
        let us = left.vectors();
        let vs = right.vectors();
        let mut out = Vec::with_capacity(us.len() * vs.len());
        for u in &us {
            for v in &vs {
                out.push(self.product(u, v)?);
            }
        }
        Subspace::from_vectors(self.field, self.dim, &out)
    }

    /// Center `{z : z·x = 0 = x·z for all x}`.
    pub fn center(&self) -> Subspace {
        // rows: coordinate k of z·e_j and of e_j·z, as linear forms in z
        let d = self.dim;
        let mut m = ExactMatrix::zeros(self.field, 2 * d * d, d);
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.basis_product(i, j) {
                    m.add_at(j * d + k, i, c);
                }
                for (k, c) in self.basis_product(j, i) {
                    m.add_at(d * d + j * d + k, i, c);
                }
            }
        }
        m.kernel()
    }

    /// First pair of basis vectors of `sub` whose product leaves `sub`.
    pub fn closure_witness(&self, sub: &Subspace) -> Result<Option<(usize, usize)>, Error> {
        let vs = sub.vectors();
        for (a, u) in vs.iter().enumerate() {
            for (b, v) in vs.iter().enumerate() {
                if !sub.contains_vector(&self.product(u, v)?)? {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_subalgebra(&self, sub: &Subspace) -> Result<bool, Error> {
        Ok(self.closure_witness(sub)?.is_none())
    }

    /// The algebra expressed in a new ordered basis (rows of `basis`, in current coordinates).
    pub fn in_basis(&self, basis: Vec<Vector>, names: Vec<String>) -> Result<StructureAlgebra, Error> {
        if basis.len() != names.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: names.len(),
            });
        }
        let ob = OrderedBasis::new(self.field, self.dim, basis)?;
        self.restrict_to(&ob, names, "basis")
    }

    /// Structure constants of the subalgebra `sub` in the coordinates of its echelon basis.
    pub fn restrict(&self, sub: &Subspace) -> Result<StructureAlgebra, Error> {
        let ob = OrderedBasis::new(self.field, self.dim, sub.vectors())?;
        let names = (0..sub.dim()).map(|i| format!("v{i}")).collect();
        self.restrict_to(&ob, names, "subspace")
    }

    fn restrict_to(&self, ob: &OrderedBasis, names: Vec<String>, what: &str) -> Result<StructureAlgebra, Error> {
        let vs = ob.vectors();
        let mut out = StructureAlgebra::zero(self.field, names);
        for (a, u) in vs.iter().enumerate() {
            for (b, v) in vs.iter().enumerate() {
                let w = self.product(u, v)?;
                let coords = ob.coordinates(&w)?.ok_or_else(|| Error::NotASubalgebra {
                    part: what.to_string(),
                    witness: (a, b),
                })?;
                out.set_product(a, b, &coords)?;
            }
        }
        Ok(out)
    }

    pub(crate) fn cached_verdict(&self, id: Identity) -> &OnceLock<bool> {
        &self.verdicts[id as usize]
    }

    /// Every structure constant multiplied by `s`.
    pub fn scaled(&self, s: &Scalar) -> StructureAlgebra {
        let mut out = self.clone();
        for row in out.products.iter_mut() {
            *row = row
                .iter()
                .map(|(k, c)| (*k, c * s))
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
        out.verdicts = Default::default();
        out
    }

    /// Applies a linear map (matrix acting on coordinates) to a vector.
    pub fn apply(m: &ExactMatrix, v: &[Scalar]) -> Result<Vector, Error> {
        m.mul_vec(v)
    }

    pub fn linear_combination(&self, terms: &[(Scalar, usize)]) -> Vector {
        let mut out = self.zero_vector();
        for (c, i) in terms {
            axpy(&mut out, c, &self.basis_vector(*i));
        }
        out
    }
}

/// `{field, dim, basis, products: [[i, j, [[k, coeff], ...]], ...], grading?}`.
#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    field: FieldSpec,
    dim: usize,
    basis: Vec<String>,
    products: Vec<(usize, usize, Vec<(usize, serde_json::Value)>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<i64>>,
}

impl Serialize for StructureAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut products = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let terms = self.basis_product(i, j);
                if !terms.is_empty() {
                    products.push((
                        i,
                        j,
                        terms.iter().map(|(k, c)| (*k, self.field.scalar_to_json(c))).collect(),
                    ));
                }
            }
        }
        AlgebraJson {
            field: self.field,
            dim: self.dim,
            basis: self.basis_names.clone(),
            products,
            grading: self.grading.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructureAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = AlgebraJson::deserialize(d)?;
        algebra_from_json(j).map_err(serde::de::Error::custom)
    }
}

fn algebra_from_json(j: AlgebraJson) -> Result<StructureAlgebra, Error> {
    if j.basis.len() != j.dim {
        return Err(Error::DimensionMismatch {
            expected: j.dim,
            found: j.basis.len(),
        });
    }
    let mut a = StructureAlgebra::zero(j.field, j.basis);
    let mut seen = std::collections::HashSet::new();
    for (i, jj, terms) in j.products {
        if i >= j.dim || jj >= j.dim {
            return Err(Error::Parse(format!("product index ({i}, {jj}) out of range")));
        }
        if !seen.insert((i, jj)) {
            return Err(Error::Parse(format!("product ({i}, {jj}) listed twice")));
        }
        let mut v = a.zero_vector();
        for (k, c) in terms {
            if k >= j.dim {
                return Err(Error::Parse(format!("basis index {k} out of range")));
            }
            v[k] += &j.field.scalar_from_json(&c)?;
        }
        a.set_product(i, jj, &v)?;
    }
    a.set_grading(j.grading)?;
    Ok(a)
}
