//! Concrete algebras: the char-2 simple algebras, divided powers, truncated
//! polynomials, Koszul tensor brackets and current algebras.

use crate::error::Error;
use crate::exactla::{ExactMatrix, FieldSpec, OrderedBasis, Scalar, Vector};
use crate::liecore::{commutator, leibniz_failure, satisfies, Identity, StructureAlgebra};

/// Binomial coefficients modulo 2 by Lucas' theorem.
pub mod lucas {
    /// `binom(a, b) mod 2`, i.e. whether `b` is a bit-submask of `a`.
    pub fn binom_odd(a: u64, b: u64) -> bool {
        b <= a && b & !a == 0
    }

    pub fn binom_mod2(a: u64, b: u64) -> u8 {
        u8::from(binom_odd(a, b))
    }
}

fn index_name(i: i64) -> String {
    format!("e{i}")
}

/// The 3-dimensional simple algebra over GF(2) with
/// `[e-1,e0] = e-1`, `[e-1,e1] = e0`, `[e0,e1] = e1`.
pub fn ess() -> StructureAlgebra {
    let f = FieldSpec::GF2;
    let mut a = StructureAlgebra::zero(f, (-1..=1).map(index_name).collect());
    for (i, j, k) in [(0, 1, 0), (0, 2, 1), (1, 2, 2)] {
        a.set_product(i, j, &f.unit_vector(3, k)).expect("in range");
        a.set_product(j, i, &f.unit_vector(3, k)).expect("in range");
    }
    a.with_grading(vec![-1, 0, 1]).expect("three degrees")
}

/// Zassenhaus algebra on `e_-1 .. e_(2^n-3)` over GF(2).
pub fn zassenhaus(n: u32) -> Result<StructureAlgebra, Error> {
    if !(2..=16).contains(&n) {
        return Err(Error::InvalidParameter(format!("zassenhaus needs 2 <= n <= 16, got {n}")));
    }
    let f = FieldSpec::GF2;
    let top = (1i64 << n) - 3;
    let degrees: Vec<i64> = (-1..=top).collect();
    let dim = degrees.len();
    let a = StructureAlgebra::from_fn(f, degrees.iter().map(|&i| index_name(i)).collect(), |x, y| {
        let (i, j) = (degrees[x], degrees[y]);
        let s = i + j;
        if s < -1 || s > top || !lucas::binom_odd((s + 2) as u64, (i + 1) as u64) {
            f.zeros(dim)
        } else {
            f.unit_vector(dim, (s + 1) as usize)
        }
    })?;
    a.with_grading(degrees)
}

/// Divided powers algebra `O_1(n)` over GF(2) with its degree-lowering derivation.
pub fn divided_powers(n: u32) -> Result<(StructureAlgebra, ExactMatrix), Error> {
    if !(1..=16).contains(&n) {
        return Err(Error::InvalidParameter(format!("divided powers need 1 <= n <= 16, got {n}")));
    }
    let f = FieldSpec::GF2;
    let dim = 1usize << n;
    let a = StructureAlgebra::from_fn(f, (0..dim).map(|i| format!("x({i})")).collect(), |i, j| {
        if i + j < dim && lucas::binom_odd((i + j) as u64, i as u64) {
            f.unit_vector(dim, i + j)
        } else {
            f.zeros(dim)
        }
    })?
    .with_grading((0..dim as i64).collect())?;
    let d = ExactMatrix::from_fn(f, dim, dim, |r, c| if c == r + 1 { f.one() } else { f.zero() });
    Ok((a, d))
}

/// `K[t]/(t^m)` with basis `1, t, .., t^(m-1)`.
pub fn truncated_poly(m: usize, field: FieldSpec) -> Result<StructureAlgebra, Error> {
    if m == 0 {
        return Err(Error::InvalidParameter("truncated polynomial ring needs m >= 1".into()));
    }
    let names = (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        })
        .collect();
    StructureAlgebra::from_fn(field, names, |i, j| {
        if i + j < m {
            field.unit_vector(m, i + j)
        } else {
            field.zeros(m)
        }
    })?
    .with_grading((0..m as i64).collect())
}

/// `d/dt` on `K[t]/(t^m)`; a derivation only when the characteristic divides `m`.
pub fn d_dt(m: usize, field: FieldSpec) -> ExactMatrix {
    ExactMatrix::from_fn(field, m, m, |r, c| if c == r + 1 { field.from_i64(c as i64) } else { field.zero() })
}

/// `t d/dt` on `K[t]/(t^m)`, a derivation in every characteristic.
pub fn euler_derivation(m: usize, field: FieldSpec) -> ExactMatrix {
    ExactMatrix::from_fn(field, m, m, |r, c| if r == c { field.from_i64(c as i64) } else { field.zero() })
}

/// Abelian Lie algebra of dimension `d`.
pub fn abelian(d: usize, field: FieldSpec) -> StructureAlgebra {
    StructureAlgebra::zero(field, (0..d).map(|i| format!("a{i}")).collect())
        .with_grading(vec![0; d])
        .expect("matching length")
}

/// Heisenberg algebra `[x,y] = z`.
pub fn heisenberg(field: FieldSpec) -> StructureAlgebra {
    let mut a = StructureAlgebra::zero(field, vec!["x".into(), "y".into(), "z".into()]);
    a.set_product(0, 1, &field.unit_vector(3, 2)).expect("in range");
    let mut minus = field.zeros(3);
    minus[2] = -field.one();
    a.set_product(1, 0, &minus).expect("in range");
    a.with_grading(vec![1, 1, 2]).expect("three degrees")
}

/// Trace-zero 2×2 matrices with basis `e, h, f`.
pub fn sl2(field: FieldSpec) -> StructureAlgebra {
    let mut a = StructureAlgebra::zero(field, vec!["e".into(), "h".into(), "f".into()]);
    let v = |c: [i64; 3]| c.map(|x| field.from_i64(x)).to_vec();
    // [h,e] = 2e, [h,f] = -2f, [e,f] = h
    let table = [(1, 0, [2, 0, 0]), (1, 2, [0, 0, -2]), (0, 2, [0, 1, 0])];
    for (i, j, c) in table {
        a.set_product(i, j, &v(c)).expect("in range");
        a.set_product(j, i, &v(c.map(|x| -x))).expect("in range");
    }
    a.with_grading(vec![2, 0, -2]).expect("three degrees")
}

/// Full matrix algebra `M_n(K)` with basis `E_ij` in row-major order.
pub fn matrix_algebra(n: usize, field: FieldSpec) -> StructureAlgebra {
    let dim = n * n;
    let names = (0..dim).map(|k| format!("E{}{}", k / n, k % n)).collect();
    let grading = (0..dim).map(|k| (k % n) as i64 - (k / n) as i64).collect();
    StructureAlgebra::from_fn(field, names, |x, y| {
        let (i, j) = (x / n, x % n);
        let (k, l) = (y / n, y % n);
        if j == k {
            field.unit_vector(dim, i * n + l)
        } else {
            field.zeros(dim)
        }
    })
    .expect("well-formed table")
    .with_grading(grading)
    .expect("matching length")
}

fn check_same_field(a: &StructureAlgebra, b: &StructureAlgebra) -> Result<(), Error> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

fn tensor_names(a: &StructureAlgebra, b: &StructureAlgebra) -> Vec<String> {
    a.basis_names()
        .iter()
        .flat_map(|x| b.basis_names().iter().map(move |y| format!("{x}⊗{y}")))
        .collect()
}

fn tensor_grading(a: &StructureAlgebra, b: &StructureAlgebra) -> Option<Vec<i64>> {
    let (ga, gb) = (a.grading()?, b.grading()?);
    Some(ga.iter().flat_map(|x| gb.iter().map(move |y| x + y)).collect())
}

/// Sparse tensor of two sparse products, accumulated into `out` with sign `sign`.
fn accumulate_tensor(
    out: &mut [Scalar],
    sign: &Scalar,
    p: &[(usize, Scalar)],
    q: &[(usize, Scalar)],
    db: usize,
) {
    for (k, c) in p {
        for (l, e) in q {
            out[k * db + l] += &(&(c * e) * sign);
        }
    }
}

/// Tensor product `A ⊗ B` with bracket `[a⊗b, a'⊗b'] = aa'⊗bb' − a'a⊗b'b`.
/// No identity is assumed; validate the result.
pub fn koszul_bracket(a: &StructureAlgebra, b: &StructureAlgebra) -> Result<StructureAlgebra, Error> {
    check_same_field(a, b)?;
    let f = a.field();
    let db = b.dim();
    let dim = a.dim() * db;
    let one = f.one();
    let minus = -f.one();
    let mut out = StructureAlgebra::from_fn(f, tensor_names(a, b), |x, y| {
        let (i, j) = (x / db, x % db);
        let (k, l) = (y / db, y % db);
        let mut v = f.zeros(dim);
        accumulate_tensor(&mut v, &one, a.basis_product(i, k), b.basis_product(j, l), db);
        accumulate_tensor(&mut v, &minus, a.basis_product(k, i), b.basis_product(l, j), db);
        v
    })?;
    out.set_grading(tensor_grading(a, b))?;
    Ok(out)
}

/// `A ⊕ B` with `[A, B] = 0`; basis of `A` first.
pub fn direct_sum(a: &StructureAlgebra, b: &StructureAlgebra) -> Result<StructureAlgebra, Error> {
    check_same_field(a, b)?;
    let f = a.field();
    let (da, dim) = (a.dim(), a.dim() + b.dim());
    let names = a
        .basis_names()
        .iter()
        .map(|n| format!("{n}'"))
        .chain(b.basis_names().iter().map(|n| format!("{n}''")))
        .collect();
    let mut out = StructureAlgebra::from_fn(f, names, |x, y| {
        let mut v = f.zeros(dim);
        if x < da && y < da {
            for (k, c) in a.basis_product(x, y) {
                v[*k] = c.clone();
            }
        } else if x >= da && y >= da {
            for (k, c) in b.basis_product(x - da, y - da) {
                v[da + k] = c.clone();
            }
        }
        v
    })?;
    if let (Some(ga), Some(gb)) = (a.grading(), b.grading()) {
        out.set_grading(Some(ga.iter().chain(gb).copied().collect()))?;
    }
    Ok(out)
}

/// Gelfand–Dorfman construction on a commutative associative algebra with a
/// derivation: `left` has `a∘b = a·d(b)`, `right` is its opposite.
pub fn novikov_from_comm_der(
    c: &StructureAlgebra,
    d: &ExactMatrix,
) -> Result<(StructureAlgebra, StructureAlgebra), Error> {
    for id in [Identity::Commutative, Identity::Associative] {
        if !satisfies(c, id) {
            return Err(Error::InvalidParameter(format!("input algebra is not {id}")));
        }
    }
    if let Some(w) = leibniz_failure(c, d)? {
        return Err(Error::NotADerivation(w));
    }
    let f = c.field();
    let images: Vec<Vector> = (0..c.dim()).map(|j| d.column(j)).collect();
    let left = StructureAlgebra::from_fn(f, c.basis_names().to_vec(), |i, j| c.basis_times(i, &images[j]))?;
    let right = StructureAlgebra::from_fn(f, c.basis_names().to_vec(), |i, j| c.basis_times(j, &images[i]))?;
    Ok((left, right))
}

fn check_lie_and_comm(l: &StructureAlgebra, a: &StructureAlgebra) -> Result<(), Error> {
    check_same_field(l, a)?;
    if !satisfies(l, Identity::Lie) {
        return Err(Error::NotALieAlgebra("first factor".into()));
    }
    for id in [Identity::Commutative, Identity::Associative] {
        if !satisfies(a, id) {
            return Err(Error::InvalidParameter(format!("second factor is not {id}")));
        }
    }
    Ok(())
}

/// Current algebra `L ⊗ A` with `[x⊗f, y⊗g] = [x,y]⊗fg`.
pub fn current(l: &StructureAlgebra, a: &StructureAlgebra) -> Result<StructureAlgebra, Error> {
    semidirect_current(l, a, &[])
}

/// `(S ⊗ A) ⋊ D` for a bracket-closed space `D` of derivations of `A`, basis `d0, d1, ..`.
pub fn semidirect_current(
    s: &StructureAlgebra,
    a: &StructureAlgebra,
    dlist: &[ExactMatrix],
) -> Result<StructureAlgebra, Error> {
    check_lie_and_comm(s, a)?;
    let f = s.field();
    let da = a.dim();
    let core = s.dim() * da;
    let dim = core + dlist.len();
    for m in dlist {
        if let Some(w) = leibniz_failure(a, m)? {
            return Err(Error::NotADerivation(w));
        }
    }
    let dspan = if dlist.is_empty() {
        None
    } else {
        Some(OrderedBasis::new(f, da * da, dlist.iter().map(ExactMatrix::flatten).collect())?)
    };
    let mut dbrackets = vec![vec![Vec::new(); dlist.len()]; dlist.len()];
    if let Some(span) = &dspan {
        for (p, x) in dlist.iter().enumerate() {
            for (q, y) in dlist.iter().enumerate() {
                dbrackets[p][q] = span.coordinates(&commutator(x, y)?.flatten())?.ok_or(Error::NotASubalgebra {
                    part: "derivation list".into(),
                    witness: (p, q),
                })?;
            }
        }
    }
    let mut names = tensor_names(s, a);
    names.extend((0..dlist.len()).map(|i| format!("d{i}")));
    let one = f.one();
    let act = |p: usize, i: usize, j: usize, sign: &Scalar| {
        // ±(x_i ⊗ δ_p(f_j))
        let mut v = f.zeros(dim);
        for (l, c) in dlist[p].column(j).iter().enumerate() {
            if !c.is_zero() {
                v[i * da + l] = c * sign;
            }
        }
        v
    };
    let mut out = StructureAlgebra::from_fn(f, names, |x, y| match (x < core, y < core) {
        (true, true) => {
            let mut v = f.zeros(dim);
            accumulate_tensor(&mut v, &one, s.basis_product(x / da, y / da), a.basis_product(x % da, y % da), da);
            v
        }
        (false, true) => act(x - core, y / da, y % da, &one),
        (true, false) => act(y - core, x / da, x % da, &-f.one()),
        (false, false) => {
            let mut v = f.zeros(dim);
            for (r, c) in dbrackets[x - core][y - core].iter().enumerate() {
                v[core + r] = c.clone();
            }
            v
        }
    })?;
    if dlist.is_empty() {
        out.set_grading(tensor_grading(s, a))?;
    }
    Ok(out)
}

/// Names accepted by [`build`].
pub const NAMES: [&str; 11] = [
    "ess",
    "zassenhaus",
    "divided-powers",
    "truncated-poly",
    "current",
    "semidirect",
    "koszul",
    "abelian",
    "heisenberg",
    "sl2",
    "matrix",
];

/// Parameters for [`build`]; unused fields are ignored by each constructor.
#[derive(Clone, Debug)]
pub struct BuildParams {
    pub n: Option<u32>,
    pub m: Option<usize>,
    pub field: FieldSpec,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams {
            n: None,
            m: None,
            field: FieldSpec::GF2,
        }
    }
}

/// Builds a named algebra.
///
/// `current` and `semidirect` use `ess` with `K[t]/(t^m)` (default `m = 2`), the
/// latter adjoining `d/dt`; `koszul` pairs `sl2` with `K[t]/(t^m)` over the given field.
pub fn build(name: &str, p: &BuildParams) -> Result<StructureAlgebra, Error> {
    let need_n = |default: u32| p.n.unwrap_or(default);
    let m = p.m.unwrap_or(2);
    match name {
        "ess" => Ok(ess()),
        "zassenhaus" => zassenhaus(need_n(3)),
        "divided-powers" => Ok(divided_powers(need_n(2))?.0),
        "truncated-poly" => truncated_poly(m, p.field),
        "current" => current(&ess(), &truncated_poly(m, FieldSpec::GF2)?),
        "semidirect" => semidirect_current(
            &ess(),
            &truncated_poly(m, FieldSpec::GF2)?,
            &[d_dt(m, FieldSpec::GF2)],
        ),
        "koszul" => koszul_bracket(&sl2(p.field), &truncated_poly(m, p.field)?),
        "abelian" => Ok(abelian(need_n(2) as usize, p.field)),
        "heisenberg" => Ok(heisenberg(p.field)),
        "sl2" => Ok(sl2(p.field)),
        "matrix" => Ok(matrix_algebra(need_n(2) as usize, p.field)),
        other => Err(Error::InvalidParameter(format!(
            "unknown algebra {other:?}; expected one of {}",
            NAMES.join(", ")
        ))),
    }
}
