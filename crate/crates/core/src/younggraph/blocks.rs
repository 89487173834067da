use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use super::cauchy::cauchy_decompose;
use crate::cohomology::{differential_with_budget, CochainSpace, CoefficientModule, Flavor};
use crate::error::Error;
use crate::exactla::{ExactMatrix, FieldSpec, Subspace, Vector};
use crate::liecore::StructureAlgebra;
use crate::zoo::koszul_bracket;

/// Default number of cochain levels in a Young graph report.
pub const DEFAULT_YOUNG_LEVELS: usize = 4;
/// Largest accepted number of levels.
pub const MAX_YOUNG_LEVELS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub label: String,
    pub dim: usize,
}

/// One block of the differential, from a source component to a target component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub from: String,
    pub to: String,
    pub rows: usize,
    pub cols: usize,
    pub zero: bool,
    #[serde(skip)]
    pub block: ExactMatrix,
}

/// The differential `C^level → C^(level+1)` cut into component blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub level: usize,
    pub sources: Vec<Component>,
    pub targets: Vec<Component>,
    pub arrows: Vec<Arrow>,
    /// Reassembling the blocks through the recorded bases gives the unrestricted differential.
    pub assembly_matches: bool,
}

impl BlockReport {
    pub fn arrow(&self, from: &str, to: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.from == from && a.to == to)
    }

    pub fn zero_count(&self) -> usize {
        self.arrows.iter().filter(|a| a.zero).count()
    }
}

struct Grouping {
    labels: Vec<String>,
    /// Row or column indices of each component inside the adapted coordinates.
    ranges: Vec<Vec<usize>>,
}

impl Grouping {
    fn components(&self) -> Vec<Component> {
        self.labels
            .iter()
            .zip(&self.ranges)
            .map(|(l, r)| Component {
                label: l.clone(),
                dim: r.len(),
            })
            .collect()
    }
}

fn cut(level: usize, adapted: &ExactMatrix, src: &Grouping, dst: &Grouping, assembly_matches: bool) -> BlockReport {
    let mut arrows = Vec::new();
    for (si, s) in src.ranges.iter().enumerate() {
        if s.is_empty() {
            continue;
        }
        for (ti, t) in dst.ranges.iter().enumerate() {
            if t.is_empty() {
                continue;
            }
            let block = adapted.select_rows(t).select_cols(s);
            arrows.push(Arrow {
                from: src.labels[si].clone(),
                to: dst.labels[ti].clone(),
                rows: t.len(),
                cols: s.len(),
                zero: block.is_zero(),
                block,
            });
        }
    }
    BlockReport {
        level,
        sources: src.components(),
        targets: dst.components(),
        arrows,
        assembly_matches,
    }
}

fn columns(field: FieldSpec, rows: usize, cols: &[Vector]) -> ExactMatrix {
    ExactMatrix::from_fn(field, rows, cols.len(), |r, c| cols[c][r].clone())
}

/// Cochain bases of the isotypic pieces at one level: `(grouping, T)` where the
/// columns of `T` are the component bases in order.
fn young_level(a_dim: usize, b_dim: usize, n: usize) -> Result<(Grouping, ExactMatrix), Error> {
    let f = FieldSpec::Rationals;
    let comps = cauchy_decompose(a_dim, b_dim, n)?;
    let size = comps.first().map_or(0, |c| c.projector.rows());
    let mut labels = Vec::new();
    let mut ranges = Vec::new();
    let mut cols: Vec<Vector> = Vec::new();
    for c in &comps {
        // cochains are dual to chains, so the cochain projector is the transpose
        let basis = Subspace::column_space(&c.projector.transpose()).vectors();
        labels.push(c.lambda.to_string());
        ranges.push((cols.len()..cols.len() + basis.len()).collect());
        cols.extend(basis);
    }
    Ok((Grouping { labels, ranges }, columns(f, size, &cols)))
}

/// Young graph blocks of the CE differential (trivial coefficients) of `A ⊗ B`
/// with the Koszul bracket, for source levels `1..levels`.
pub fn young_graph_report(a: &StructureAlgebra, b: &StructureAlgebra, levels: usize) -> Result<Vec<BlockReport>, Error> {
    if a.field() != FieldSpec::Rationals || b.field() != FieldSpec::Rationals {
        return Err(Error::WrongCharacteristic {
            needed: 0,
            found: a.field().characteristic().max(b.field().characteristic()),
        });
    }
    if !(2..=MAX_YOUNG_LEVELS).contains(&levels) {
        return Err(Error::InvalidParameter(format!("levels must be in 2..={MAX_YOUNG_LEVELS}, got {levels}")));
    }
    let l = koszul_bracket(a, b)?;
    let triv = CoefficientModule::trivial(&l);
    let mut out = Vec::new();
    let mut prev = young_level(a.dim(), b.dim(), 1)?;
    for n in 1..levels {
        let next = young_level(a.dim(), b.dim(), n + 1)?;
        let d = differential_with_budget(&l, &triv, n, Flavor::Alternating, levels)?;
        let (src, t_src) = &prev;
        let (dst, t_dst) = &next;
        let adapted = match t_dst.inverse() {
            Some(inv) => inv.mul(&d.mul(t_src)?)?,
            None => ExactMatrix::zeros(FieldSpec::Rationals, t_dst.cols(), t_src.cols()),
        };
        let matches = t_dst.mul(&adapted)? == d.mul(t_src)?;
        out.push(cut(n, &adapted, src, dst, matches));
        prev = next;
    }
    Ok(out)
}

/// `W[t][s] = det P[s, t]`: cochain coordinates in the adapted basis from old ones.
fn minors(p: &ExactMatrix, space: &CochainSpace) -> Result<ExactMatrix, Error> {
    let k = space.tuple_count();
    let mut w = ExactMatrix::zeros(p.field(), k, k);
    for (ti, t) in space.basis_index.iter().enumerate() {
        let sub = p.select_cols(t);
        for (si, s) in space.basis_index.iter().enumerate() {
            let det = sub.select_rows(s).determinant()?;
            if !det.is_zero() {
                w.set(ti, si, &det);
            }
        }
    }
    Ok(w)
}

fn bidegree_grouping(space: &CochainSpace, n_dim: usize) -> Grouping {
    let k = space.degree;
    let mut labels = Vec::new();
    let mut ranges = Vec::new();
    for i in (0..=k).rev() {
        let j = k - i;
        labels.push(format!("({i},{j})"));
        ranges.push(
            space
                .basis_index
                .iter()
                .enumerate()
                .filter(|(_, t)| t.iter().filter(|&&x| x < n_dim).count() == i)
                .map(|(idx, _)| idx)
                .collect(),
        );
    }
    Grouping { labels, ranges }
}

/// Bidegree blocks `(i,j) → (i',j')` of the CE differential (trivial coefficients)
/// of `L = N ⊕ M`, for source levels `0..levels`.
pub fn triangle_report(l: &StructureAlgebra, n: &Subspace, m: &Subspace, levels: usize) -> Result<Vec<BlockReport>, Error> {
    for (part, label) in [(n, "N"), (m, "M")] {
        if part.ambient_dim() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                found: part.ambient_dim(),
            });
        }
        if let Some(w) = l.closure_witness(part)? {
            return Err(Error::NotASubalgebra {
                part: label.into(),
                witness: w,
            });
        }
    }
    if n.dim() + m.dim() != l.dim() || !n.sum(m)?.is_full() {
        return Err(Error::DecompositionFailed("N + M is not a direct sum equal to L".into()));
    }
    let f = l.field();
    let mut adapted_basis = n.vectors();
    adapted_basis.extend(m.vectors());
    let names = (0..l.dim())
        .map(|i| if i < n.dim() { format!("n{i}") } else { format!("m{}", i - n.dim()) })
        .collect();
    let l2 = l.in_basis(adapted_basis.clone(), names)?;
    let p = columns(f, l.dim(), &adapted_basis);
    let triv = CoefficientModule::trivial(l);
    let triv2 = CoefficientModule::trivial(&l2);
    let mut out = Vec::new();
    for k in 0..levels {
        let src = CochainSpace::new(Flavor::Alternating, k, l.dim(), 1);
        let dst = CochainSpace::new(Flavor::Alternating, k + 1, l.dim(), 1);
        let d = differential_with_budget(l, &triv, k, Flavor::Alternating, levels)?;
        let d2 = differential_with_budget(&l2, &triv2, k, Flavor::Alternating, levels)?;
        let matches = minors(&p, &dst)?.mul(&d)? == d2.mul(&minors(&p, &src)?)?;
        out.push(cut(
            k,
            &d2,
            &bidegree_grouping(&src, n.dim()),
            &bidegree_grouping(&dst, n.dim()),
            matches,
        ));
    }
    Ok(out)
}

/// Text grid per level: one row per target, one column per source; `*` marks a
/// nonzero block, `.` a zero block, blank an empty component.
pub fn render_grid(reports: &[BlockReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = writeln!(s, "level {} -> {}", r.level, r.level + 1);
        let width = r
            .sources
            .iter()
            .chain(&r.targets)
            .map(|c| c.label.len())
            .max()
            .unwrap_or(1)
            .max(1);
        let _ = write!(s, "{:>width$}", "");
        for c in &r.sources {
            let _ = write!(s, " {:>width$}", c.label);
        }
        s.push('\n');
        for t in &r.targets {
            let _ = write!(s, "{:>width$}", t.label);
            for c in &r.sources {
                let mark = match r.arrow(&c.label, &t.label) {
                    Some(a) if a.zero => ".",
                    Some(_) => "*",
                    None => "",
                };
                let _ = write!(s, " {mark:>width$}");
            }
            s.push('\n');
        }
    }
    s
}

/// Sum over middle components of `B2 · B1` for every path `source → middle → target`.
pub fn blockwise_square_is_zero(first: &BlockReport, second: &BlockReport) -> Result<bool, Error> {
    for (src, tgt) in first.sources.iter().cartesian_product(&second.targets) {
        if src.dim == 0 || tgt.dim == 0 {
            continue;
        }
        let mut acc: Option<ExactMatrix> = None;
        for a in first.arrows.iter().filter(|a| a.from == src.label) {
            let Some(b) = second.arrow(&a.to, &tgt.label) else { continue };
            let prod = b.block.mul(&a.block)?;
            acc = Some(match acc {
                None => prod,
                Some(x) => x.add(&prod)?,
            });
        }
        if acc.is_some_and(|m| !m.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}
