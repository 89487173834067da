use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::certificate::{verify, DecompositionCertificate};
use crate::error::Error;
use crate::exactla::{FieldSpec, Scalar, Subspace, Vector};
use crate::liecore::{close, is_nilpotent, satisfies, series, Identity, SeriesKind, StructureAlgebra};

/// Default number of subalgebra closures a search may perform.
pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Closure operations allowed across seeding and all restarts.
    pub budget: u64,
    pub seed: u64,
    pub restarts: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            seed: 0,
            restarts: 8,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub certificate: Option<DecompositionCertificate>,
    /// Restart that produced the certificate (`None` when found during seeding or not at all).
    pub restart: Option<usize>,
    pub closures: u64,
    pub log: Vec<String>,
}

struct Budget {
    left: u64,
    used: u64,
}

impl Budget {
    fn new(left: u64) -> Self {
        Budget { left, used: 0 }
    }

    /// Closure of `base + extra`, or `None` once the budget is spent.
    fn close(&mut self, l: &StructureAlgebra, base: &Subspace, extra: &[Vector]) -> Option<Subspace> {
        if self.left == 0 {
            return None;
        }
        self.left -= 1;
        self.used += 1;
        let start = base.add_vectors(extra).ok()?;
        close(l, start).ok()
    }
}

fn nilpotent_sub(l: &StructureAlgebra, s: &Subspace) -> bool {
    series(l, s, SeriesKind::LowerCentral).is_ok_and(|r| r.index.is_some())
}

fn ad_nilpotent(l: &StructureAlgebra, x: &[Scalar]) -> bool {
    let Ok(ad) = l.ad(x) else { return false };
    let mut p = ad.clone();
    for _ in 1..l.dim() {
        if p.is_zero() {
            return true;
        }
        p = p.mul(&ad).expect("square");
    }
    p.is_zero()
}

fn random_vector(rng: &mut ChaCha8Rng, f: FieldSpec, dim: usize) -> Vector {
    loop {
        let v: Vector = (0..dim)
            .map(|_| match f {
                FieldSpec::Prime(p) => f.from_i64(rng.random_range(0..i64::from(p))),
                FieldSpec::Rationals => f.from_i64(rng.random_range(-1..=1)),
            })
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Nilpotent subalgebras from ad-nilpotent basis vectors and graded components,
/// each grown greedily by basis vectors while nilpotency holds.
fn seed_pool(l: &StructureAlgebra, budget: &mut Budget, log: &mut Vec<String>) -> Vec<Subspace> {
    let f = l.field();
    let d = l.dim();
    let zero = Subspace::zero(f, d);
    let mut gens: Vec<Vec<Vector>> = (0..d)
        .filter(|&i| ad_nilpotent(l, &l.basis_vector(i)))
        .map(|i| vec![l.basis_vector(i)])
        .collect();
    if let Some(g) = l.grading() {
        let mut degrees: Vec<i64> = g.iter().copied().filter(|&x| x != 0).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let pick = |keep: &dyn Fn(i64) -> bool| -> Vec<Vector> {
            (0..d).filter(|&i| keep(g[i])).map(|i| l.basis_vector(i)).collect()
        };
        for &deg in &degrees {
            gens.push(pick(&|x| x == deg));
        }
        gens.push(pick(&|x| x > 0));
        gens.push(pick(&|x| x < 0));
    }
    let mut pool: Vec<Subspace> = Vec::new();
    for g in gens.into_iter().filter(|g| !g.is_empty()) {
        let Some(mut s) = budget.close(l, &zero, &g) else { break };
        if !nilpotent_sub(l, &s) {
            continue;
        }
        for j in 0..d {
            if s.contains_vector(&l.basis_vector(j)).unwrap_or(true) {
                continue;
            }
            let Some(t) = budget.close(l, &s, &[l.basis_vector(j)]) else { break };
            if nilpotent_sub(l, &t) {
                s = t;
            }
        }
        if !pool.contains(&s) {
            pool.push(s);
        }
    }
    log.push(format!(
        "seeding: {} nilpotent subalgebras of dims {:?} ({} closures)",
        pool.len(),
        pool.iter().map(Subspace::dim).collect::<Vec<_>>(),
        budget.used
    ));
    pool
}

struct RestartResult {
    certificate: Option<DecompositionCertificate>,
    used: u64,
    log: String,
}

fn restart(l: &StructureAlgebra, pool: &[Subspace], opts: &SearchOptions, r: usize, allowance: u64) -> RestartResult {
    let f = l.field();
    let d = l.dim();
    let zero = Subspace::zero(f, d);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(r as u64);
    let mut budget = Budget::new(allowance);
    let mut best = 0;
    let stall_limit = 4 * d + 4;

    let mut n = if pool.is_empty() {
        zero.clone()
    } else if r < pool.len() {
        pool[r].clone()
    } else {
        pool[rng.random_range(0..pool.len())].clone()
    };
    'outer: loop {
        // fresh M from a random nilpotent one-generator closure
        let mut m = loop {
            let v = random_vector(&mut rng, f, d);
            let Some(s) = budget.close(l, &zero, &[v]) else { break 'outer };
            if nilpotent_sub(l, &s) {
                break s;
            }
        };
        let mut stall = 0;
        while stall < stall_limit {
            let cover = n.sum(&m).expect("same ambient").dim();
            best = best.max(cover);
            if cover == d {
                if let Ok(c) = verify(l, &n, &m) {
                    return RestartResult {
                        certificate: Some(c),
                        used: budget.used,
                        log: format!("restart {r}: found dims ({}, {}) after {} closures", n.dim(), m.dim(), budget.used),
                    };
                }
            }
            let v = random_vector(&mut rng, f, d);
            let grow_n = rng.random_bool(0.25);
            let base = if grow_n { &n } else { &m };
            let Some(t) = budget.close(l, base, &[v]) else { break 'outer };
            let (nn, mm) = if grow_n { (&t, &m) } else { (&n, &t) };
            let new_cover = nn.sum(mm).expect("same ambient").dim();
            if *base != t && new_cover >= cover && nilpotent_sub(l, &t) {
                if grow_n {
                    n = t;
                } else {
                    m = t;
                }
                stall = if new_cover > cover { 0 } else { stall + 1 };
            } else {
                stall += 1;
            }
        }
        if !pool.is_empty() && rng.random_bool(0.5) {
            n = pool[rng.random_range(0..pool.len())].clone();
        }
    }
    RestartResult {
        certificate: None,
        used: budget.used,
        log: format!("restart {r}: none, best dim(N+M) = {best} of {d} after {} closures", budget.used),
    }
}

/// Seeded heuristic search for `L = N + M` with `N`, `M` nilpotent subalgebras.
/// Deterministic for a given seed; restarts run in parallel and the lowest
/// successful restart index wins.
pub fn search(l: &StructureAlgebra, opts: &SearchOptions) -> Result<SearchOutcome, Error> {
    if !satisfies(l, Identity::Lie) {
        return Err(Error::NotALieAlgebra("search needs a Lie algebra".into()));
    }
    let f = l.field();
    let mut log = Vec::new();
    if is_nilpotent(l) {
        let c = verify(l, &Subspace::full(f, l.dim()), &Subspace::zero(f, l.dim()))?;
        log.push("algebra is nilpotent: N = L, M = 0".into());
        return Ok(SearchOutcome {
            certificate: Some(c),
            restart: None,
            closures: 0,
            log,
        });
    }
    let mut seeding = Budget::new(opts.budget / 4);
    let pool = seed_pool(l, &mut seeding, &mut log);
    let restarts = opts.restarts.max(1);
    let allowance = (opts.budget - seeding.used) / restarts as u64;
    let results: Vec<RestartResult> = (0..restarts)
        .into_par_iter()
        .map(|r| restart(l, &pool, opts, r, allowance))
        .collect();
    let mut closures = seeding.used;
    let mut found = None;
    for (r, res) in results.into_iter().enumerate() {
        closures += res.used;
        log.push(res.log);
        if found.is_none() {
            if let Some(c) = res.certificate {
                found = Some((r, c));
            }
        }
    }
    let (restart, certificate) = match found {
        Some((r, c)) => {
            // never trust the search bookkeeping
            let c = c.recheck()?;
            log.push(format!("certificate from restart {r} re-verified"));
            (Some(r), Some(c))
        }
        None => {
            log.push("no certificate within budget".into());
            (None, None)
        }
    };
    Ok(SearchOutcome {
        certificate,
        restart,
        closures,
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::petravchuk_fixture;
    use crate::zoo;

    #[test]
    fn finds_decomposition_of_envelope() {
        let (l, _, _) = petravchuk_fixture();
        let out = search(&l, &SearchOptions::default()).unwrap();
        let c = out.certificate.expect("a decomposition exists");
        assert!(c.n_part.sum(&c.m_part).unwrap().is_full());
        assert!(!c.ambient_solvable);
    }

    #[test]
    fn deterministic_per_seed() {
        let (l, _, _) = petravchuk_fixture();
        for seed in [0, 1, 17] {
            let opts = SearchOptions {
                seed,
                ..SearchOptions::default()
            };
            let a = search(&l, &opts).unwrap();
            let b = search(&l, &opts).unwrap();
            assert_eq!(a.certificate, b.certificate);
            assert_eq!(a.log, b.log);
        }
    }

    #[test]
    fn nilpotent_input_is_its_own_decomposition() {
        let a = zoo::abelian(2, FieldSpec::GF2);
        let c = search(&a, &SearchOptions::default()).unwrap().certificate.unwrap();
        assert!(c.n_part.is_full());
        assert!(c.m_part.is_zero());
    }

    #[test]
    fn small_budget_reports_absence() {
        let l = zoo::ess();
        let out = search(
            &l,
            &SearchOptions {
                budget: 8,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        // ess has no such decomposition: its nilpotent subalgebras have dim <= 1
        assert!(out.certificate.is_none());
        assert!(out.closures <= 8);
    }
}
