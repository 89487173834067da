//! One-shot runner of the acceptance checks, printed as an expected/computed table.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use modlie::cohomology::{
    cohomology, differential_with_budget, is_cocycle, zassenhaus_commutative_cocycles, zassenhaus_commutative_h2_basis,
    CoefficientModule, Flavor,
};
use modlie::decomp::{current_extension_parts, current_extension_series, petravchuk_fixture, search, verify, SearchOptions};
use modlie::exactla::{ExactMatrix, FieldSpec, Subspace};
use modlie::liecore::{derivations, satisfies, two_envelope, validate, Identity, StructureAlgebra};
use modlie::younggraph::{
    blockwise_square_is_zero, cauchy_decompose, triangle_report, young_graph_report, BlockReport,
};
use modlie::zoo;
use modlie_census::{census, conjecture_check, lr_report, CensusConfig, Which};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub id: String,
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

fn row(id: &str, check: &str, expected: impl ToString, computed: impl ToString, ok: bool) -> Row {
    Row {
        id: id.into(),
        check: check.into(),
        expected: expected.to_string(),
        computed: computed.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
    }
}

fn error_row(id: &str, check: &str, expected: impl ToString, e: impl std::fmt::Display) -> Row {
    row(id, check, expected, format!("error: {e}"), false)
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Census rows above this size are skipped.
    pub census_max: usize,
    pub threads: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            census_max: 3,
            threads: CensusConfig::default().threads,
            seed: 0,
        }
    }
}

pub fn run(cfg: &SuiteConfig) -> Vec<Row> {
    let mut rows = Vec::new();
    rows.extend(census_table(cfg));
    rows.extend(census_consistency(cfg));
    rows.extend(commutative_coincidence(cfg));
    rows.push(petravchuk());
    rows.push(envelope_dims());
    rows.push(zassenhaus_valid());
    rows.push(ce_h2());
    rows.extend(commutative_h2());
    rows.push(bona_fide());
    rows.push(koszul_jacobi());
    rows.push(cauchy_identity());
    rows.push(block_faithfulness());
    rows.push(current_extension());
    rows.push(search_harness(cfg));
    rows
}

pub fn render(rows: &[Row]) -> String {
    let w = |f: fn(&Row) -> &str| rows.iter().map(|r| f(r).chars().count()).max().unwrap_or(0);
    let (wc, we) = (w(|r| &r.check), w(|r| &r.expected));
    let mut s = String::new();
    for r in rows {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        };
        let _ = writeln!(
            s,
            "{:<4} {:<7} {:<wc$}  expected {:<we$}  computed {}",
            r.id, status, r.check, r.expected, r.computed
        );
    }
    let fails = rows.iter().filter(|r| r.status == Status::Fail).count();
    let skipped = rows.iter().filter(|r| r.status == Status::Skipped).count();
    let _ = write!(s, "{} checks, {} failed, {} skipped", rows.len(), fails, skipped);
    s
}

/// `threads = 0` means the suite-wide thread count.
fn census_cfg(cfg: &SuiteConfig, threads: usize) -> CensusConfig {
    CensusConfig {
        threads: if threads == 0 { cfg.threads.max(1) } else { threads },
        ..CensusConfig::default()
    }
}

fn skipped(id: &str, check: &str, expected: impl ToString, n: usize) -> Row {
    Row {
        id: id.into(),
        check: check.into(),
        expected: expected.to_string(),
        computed: format!("n = {n} above census cap"),
        status: Status::Skipped,
    }
}

fn census_table(cfg: &SuiteConfig) -> Vec<Row> {
    let expected = [(1u64, 1u64, 1u64), (14, 21, 5), (19292, 38472, 48)];
    let mut rows = Vec::new();
    for (i, (l, lr, c)) in expected.into_iter().enumerate() {
        let n = i + 1;
        let check = format!("census n={n} (T_L, T_LR, T_comm)");
        let exp = format!("({l}, {lr}, {c})");
        if n > cfg.census_max {
            rows.push(skipped("C1", &check, exp, n));
            continue;
        }
        let start = Instant::now();
        match census(n, Which::all(), &census_cfg(cfg, 0)) {
            Ok(r) => {
                let secs = start.elapsed().as_secs_f64();
                let got = (r.t_left.unwrap_or(0), r.t_lr.unwrap_or(0), r.t_sym.unwrap_or(0));
                let ok = got == (l, lr, c) && secs < 10.0;
                rows.push(row("C1", &check, exp, format!("{got:?}"), ok));
            }
            Err(e) => rows.push(error_row("C1", &check, exp, e)),
        }
    }
    rows
}

fn census_consistency(cfg: &SuiteConfig) -> Vec<Row> {
    let mut rows = Vec::new();
    for n in 1..=3 {
        let check = format!("census n={n} |R|=|L|, T_LR=2T_L-overlap, threads agree");
        if n > cfg.census_max {
            rows.push(skipped("C2", &check, "consistent", n));
            continue;
        }
        let result = (|| -> Result<(bool, String), modlie_census::CensusError> {
            let r = lr_report(n, &census_cfg(cfg, 0))?;
            let single = census(n, Which::all(), &census_cfg(cfg, 1))?;
            let par = census(n, Which::all(), &census_cfg(cfg, 0))?;
            let counts = |x: &modlie_census::CensusResult| (x.t_left, x.t_lr, x.t_sym, x.t_sym_comm);
            let ok = r.t_left == r.t_right && r.t_lr == 2 * r.t_left - r.overlap && counts(&single) == counts(&par);
            Ok((ok, format!("L {} R {} LR {} overlap {}", r.t_left, r.t_right, r.t_lr, r.overlap)))
        })();
        rows.push(match result {
            Ok((ok, got)) => row("C2", &check, "consistent", got, ok),
            Err(e) => error_row("C2", &check, "consistent", e),
        });
    }
    rows
}

fn commutative_coincidence(cfg: &SuiteConfig) -> Vec<Row> {
    let mut rows = Vec::new();
    for n in 2..=3 {
        let check = format!("symmetric maps via commutative ops, n={n}");
        if n > cfg.census_max {
            rows.push(skipped("C3", &check, "equal sets", n));
            continue;
        }
        rows.push(match conjecture_check(n, &census_cfg(cfg, 0)) {
            Ok(c) => row(
                "C3",
                &check,
                "equal sets",
                if c.equal_sets {
                    format!("equal sets ({} maps)", c.t_sym)
                } else {
                    format!("differ, e.g. {}", c.witness.map(|w| w.to_string()).unwrap_or_default())
                },
                c.equal_sets,
            ),
            Err(e) => error_row("C3", &check, "equal sets", e),
        });
    }
    rows
}

fn petravchuk() -> Row {
    let check = "ess^[2] = N + M, N abelian, M nilpotent";
    let expected = "dim 5 = 2 + 3, direct, non-solvable";
    let start = Instant::now();
    let result = (|| -> modlie::Result<(bool, String)> {
        let env = two_envelope(&zoo::ess())?;
        let (l, n, m) = petravchuk_fixture();
        let cert = verify(&l, &n, &m)?;
        let abelian = l.product_space(&n, &n)?.is_zero();
        let ok = env.algebra.dim() == 5
            && env.algebra == l
            && n.dim() == 2
            && m.dim() == 3
            && abelian
            && cert.is_direct
            && !cert.ambient_solvable
            && start.elapsed().as_secs_f64() < 1.0;
        Ok((
            ok,
            format!(
                "dim {} = {} + {}, abelian {}, direct {}, solvable {}",
                env.algebra.dim(),
                n.dim(),
                m.dim(),
                abelian,
                cert.is_direct,
                cert.ambient_solvable
            ),
        ))
    })();
    match result {
        Ok((ok, got)) => row("C4", check, expected, got, ok),
        Err(e) => error_row("C4", check, expected, e),
    }
}

fn envelope_dims() -> Row {
    let check = "dim W1'(n)^[2] = dim Der W1'(n), n=2..4";
    let expected = "[5, 10, 19]";
    let start = Instant::now();
    let result = (|| -> modlie::Result<(bool, String)> {
        let mut env_dims = Vec::new();
        let mut der_dims = Vec::new();
        for n in 2..=4 {
            let w = zoo::zassenhaus(n)?;
            env_dims.push(two_envelope(&w)?.algebra.dim());
            der_dims.push(derivations(&w).matrices.len());
        }
        let want: Vec<usize> = (2..=4).map(|n| (1usize << n) + n - 1).collect();
        let ok = env_dims == want && der_dims == want && start.elapsed().as_secs_f64() < 30.0;
        Ok((ok, format!("{env_dims:?} / Der {der_dims:?}")))
    })();
    match result {
        Ok((ok, got)) => row("C5", check, expected, got, ok),
        Err(e) => error_row("C5", check, expected, e),
    }
}

fn zassenhaus_valid() -> Row {
    let check = "W1'(n) alternating + Jacobi, n=2..5";
    let mut got = Vec::new();
    let mut ok = true;
    for n in 2..=5 {
        match zoo::zassenhaus(n) {
            Ok(w) => {
                let r = validate(&w, Identity::Lie);
                ok &= r.passed;
                got.push(r.to_string());
            }
            Err(e) => return error_row("C6", check, "all pass", e),
        }
    }
    row("C6", check, "all pass", if ok { "all pass".to_string() } else { got.join("; ") }, ok)
}

fn ce_h2() -> Row {
    let check = "dim H^2_CE(W1'(n), K), n=2,3";
    let result = (|| -> modlie::Result<Vec<usize>> {
        (2..=3)
            .map(|n| {
                let w = zoo::zassenhaus(n)?;
                Ok(cohomology(&w, &CoefficientModule::trivial(&w), 2, Flavor::Alternating)?.dim_h)
            })
            .collect()
    })();
    match result {
        Ok(d) => row("C7", check, "[0, 0]", format!("{d:?}"), d == [0, 0]),
        Err(e) => error_row("C7", check, "[0, 0]", e),
    }
}

/// Classes of `vs` are independent modulo coboundaries and span `H^2`.
fn spans_h2(w: &StructureAlgebra, vs: &[Vec<modlie::exactla::Scalar>]) -> modlie::Result<(bool, bool)> {
    let triv = CoefficientModule::trivial(w);
    let r = cohomology(w, &triv, 2, Flavor::Symmetric)?;
    let d1 = differential_with_budget(w, &triv, 1, Flavor::Symmetric, 6)?;
    let cobound = Subspace::column_space(&d1);
    let with = cobound.add_vectors(vs)?;
    let all_cocycles = vs.iter().map(|v| is_cocycle(w, &triv, 2, Flavor::Symmetric, v)).collect::<Result<Vec<_>, _>>()?;
    let independent = with.dim() == cobound.dim() + vs.len();
    let spans = all_cocycles.iter().all(|&c| c) && independent && vs.len() == r.dim_h;
    Ok((all_cocycles.iter().all(|&c| c), spans))
}

fn commutative_h2() -> Vec<Row> {
    let mut rows = Vec::new();
    let dims = (|| -> modlie::Result<Vec<usize>> {
        (2..=3)
            .map(|n| {
                let w = zoo::zassenhaus(n)?;
                Ok(cohomology(&w, &CoefficientModule::trivial(&w), 2, Flavor::Symmetric)?.dim_h)
            })
            .collect()
    })();
    rows.push(match dims {
        Ok(d) => row("C8", "dim H^2_comm(W1'(n), K), n=2,3", "[2, 3]", format!("{d:?}"), d == [2, 3]),
        Err(e) => error_row("C8", "dim H^2_comm(W1'(n), K), n=2,3", "[2, 3]", e),
    });
    let literal = (|| -> modlie::Result<Vec<bool>> {
        let mut out = Vec::new();
        for n in 2..=3 {
            let w = zoo::zassenhaus(n)?;
            let triv = CoefficientModule::trivial(&w);
            for v in zassenhaus_commutative_cocycles(n)? {
                out.push(is_cocycle(&w, &triv, 2, Flavor::Symmetric, &v)?);
            }
        }
        Ok(out)
    })();
    rows.push(match literal {
        Ok(c) => {
            let count = c.iter().filter(|&&b| b).count();
            row(
                "C8",
                "displayed generating cochains are cocycles, n=2,3",
                format!("{} of {}", c.len(), c.len()),
                format!("{count} of {} (only k=0 closes)", c.len()),
                count == c.len(),
            )
        }
        Err(e) => error_row("C8", "displayed generating cochains are cocycles, n=2,3", "all", e),
    });
    let corrected = (|| -> modlie::Result<bool> {
        let mut ok = true;
        for n in 2..=3 {
            let w = zoo::zassenhaus(n)?;
            let (cocycles, spans) = spans_h2(&w, &zassenhaus_commutative_h2_basis(n)?)?;
            ok &= cocycles && spans;
        }
        Ok(ok)
    })();
    rows.push(match corrected {
        Ok(ok) => row(
            "C8",
            "n homogeneous cocycles non-cohomologous and spanning, n=2,3",
            "basis of H^2",
            if ok { "basis of H^2" } else { "not a basis" },
            ok,
        ),
        Err(e) => error_row("C8", "homogeneous cocycle basis", "basis of H^2", e),
    });
    rows
}

fn bona_fide() -> Row {
    let check = "d∘d = 0, symmetric complex, zoo Lie algebras dim <= 7, deg <= 4";
    let result = (|| -> modlie::Result<(bool, usize)> {
        let f = FieldSpec::GF2;
        let mut algebras: Vec<StructureAlgebra> = vec![
            zoo::ess(),
            zoo::zassenhaus(2)?,
            zoo::zassenhaus(3)?,
            zoo::divided_powers(2)?.0,
            zoo::current(&zoo::ess(), &zoo::truncated_poly(2, f)?)?,
            zoo::semidirect_current(&zoo::ess(), &zoo::truncated_poly(2, f)?, &[zoo::d_dt(2, f)])?,
            zoo::koszul_bracket(&zoo::sl2(f), &zoo::truncated_poly(2, f)?)?,
            zoo::abelian(3, f),
            zoo::heisenberg(f),
            zoo::sl2(f),
        ];
        algebras.retain(|a| a.dim() <= 7 && satisfies(a, Identity::Lie));
        let mut complexes = 0;
        for a in &algebras {
            for m in [CoefficientModule::trivial(a), CoefficientModule::adjoint(a)] {
                let mut prev: Option<ExactMatrix> = None;
                for k in 0..=4 {
                    let d = differential_with_budget(a, &m, k, Flavor::Symmetric, 6)?;
                    if let Some(p) = &prev {
                        if !d.mul(p)?.is_zero() {
                            return Ok((false, complexes));
                        }
                    }
                    prev = Some(d);
                }
                complexes += 1;
            }
        }
        Ok((true, complexes))
    })();
    match result {
        Ok((ok, c)) => row("C9", check, "all zero", format!("{c} complexes checked"), ok),
        Err(e) => error_row("C9", check, "all zero", e),
    }
}

fn koszul_jacobi() -> Row {
    let check = "Koszul bracket is Lie: (Lie, comm), (assoc, assoc), (Novikov pair)";
    let result = (|| -> modlie::Result<Vec<bool>> {
        let q = FieldSpec::Rationals;
        let g = FieldSpec::GF2;
        let a3 = zoo::truncated_poly(3, q)?;
        let (ln, rn) = zoo::novikov_from_comm_der(&a3, &zoo::euler_derivation(3, q))?;
        let (ln2, rn2) = zoo::novikov_from_comm_der(&zoo::truncated_poly(4, g)?, &zoo::d_dt(4, g))?;
        let pairs = [
            (zoo::sl2(q), a3.clone()),
            (zoo::heisenberg(q), zoo::truncated_poly(2, q)?),
            (zoo::ess(), zoo::truncated_poly(4, g)?),
            (zoo::matrix_algebra(2, q), zoo::matrix_algebra(2, q)),
            (a3.clone(), zoo::matrix_algebra(2, q)),
            (ln, rn),
            (ln2, rn2),
        ];
        pairs
            .iter()
            .map(|(a, b)| Ok(satisfies(&zoo::koszul_bracket(a, b)?, Identity::Lie)))
            .collect()
    })();
    match result {
        Ok(v) => {
            let ok = v.iter().all(|&b| b);
            row("C10", check, format!("{} of {}", v.len(), v.len()), format!("{} of {}", v.iter().filter(|&&b| b).count(), v.len()), ok)
        }
        Err(e) => error_row("C10", check, "all Lie", e),
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn cauchy_identity() -> Row {
    let check = "Cauchy: dims sum to C(ab,n), Schur factors, projectors idempotent+orthogonal";
    let result = (|| -> modlie::Result<(bool, usize)> {
        let mut cases = 0;
        for a in 1..=3 {
            for b in 1..=3 {
                for n in 1..=(a * b).min(4) {
                    let comps = cauchy_decompose(a, b, n)?;
                    let total: usize = comps.iter().map(|c| c.dim()).sum();
                    if total != binom(a * b, n) {
                        return Ok((false, cases));
                    }
                    for (i, c) in comps.iter().enumerate() {
                        let schur = c.lambda.schur_dim(a) * c.lambda.transpose().schur_dim(b);
                        let p = &c.projector;
                        if c.dim() as u128 != schur || &p.mul(p)? != p {
                            return Ok((false, cases));
                        }
                        for d in &comps[i + 1..] {
                            if !p.mul(&d.projector)?.is_zero() || !d.projector.mul(p)?.is_zero() {
                                return Ok((false, cases));
                            }
                        }
                    }
                    cases += 1;
                }
            }
        }
        Ok((true, cases))
    })();
    match result {
        Ok((ok, c)) => row("C11", check, "all hold", format!("{c} cases hold"), ok),
        Err(e) => error_row("C11", check, "all hold", e),
    }
}

fn faithful(reports: &[BlockReport]) -> modlie::Result<bool> {
    let mut ok = reports.iter().all(|r| r.assembly_matches);
    for w in reports.windows(2) {
        ok &= blockwise_square_is_zero(&w[0], &w[1])?;
    }
    Ok(ok)
}

fn block_faithfulness() -> Row {
    let check = "block assembly = differential, blockwise d∘d = 0 (Young, triangle)";
    let result = (|| -> modlie::Result<bool> {
        let q = FieldSpec::Rationals;
        let young = young_graph_report(&zoo::sl2(q), &zoo::truncated_poly(2, q)?, 4)?;
        let (l, n, m) = petravchuk_fixture();
        let tri = triangle_report(&l, &n, &m, 4)?;
        Ok(faithful(&young)? && faithful(&tri)?)
    })();
    match result {
        Ok(ok) => row("C12", check, "exact", if ok { "exact" } else { "mismatch" }, ok),
        Err(e) => error_row("C12", check, "exact", e),
    }
}

fn current_extension() -> Row {
    let check = "ess^[2]⊗K[t]/(t^2)+d/dt = (N⊗A+D) + M⊗A, L^n formula";
    let expected = "nilpotent parts, non-solvable, formula spans match";
    let result = (|| -> modlie::Result<(bool, String)> {
        let f = FieldSpec::GF2;
        let (s, n, m) = petravchuk_fixture();
        let a = zoo::truncated_poly(2, f)?;
        let ds = [zoo::d_dt(2, f)];
        let (amb, np, mp) = current_extension_parts(&s, &n, &m, &a, &ds)?;
        let cert = verify(&amb, &np, &mp)?;
        let mut terms_ok = true;
        // S ⊗ A + D for S = ess and S = ess^[2], plus the nilpotent part N ⊗ A + D
        let ess = zoo::ess();
        let cases = [(&ess, Subspace::full(f, 3)), (&s, Subspace::full(f, s.dim())), (&s, n.clone())];
        for (alg, sub) in &cases {
            for t in current_extension_series(alg, sub, &a, &ds, 5)? {
                terms_ok &= t.equal;
            }
        }
        let ok = !cert.ambient_solvable && terms_ok;
        Ok((
            ok,
            format!(
                "dim {} = {} + {}, indices {}/{}, solvable {}, formula {}",
                amb.dim(),
                np.dim(),
                mp.dim(),
                cert.n_nilpotency_index,
                cert.m_nilpotency_index,
                cert.ambient_solvable,
                if terms_ok { "matches" } else { "differs" }
            ),
        ))
    })();
    match result {
        Ok((ok, got)) => row("C13", check, expected, got, ok),
        Err(e) => error_row("C13", check, expected, e),
    }
}

fn search_harness(cfg: &SuiteConfig) -> Row {
    let check = "search finds a certificate on ess^[2], deterministic per seed";
    let result = (|| -> modlie::Result<(bool, String)> {
        let env = two_envelope(&zoo::ess())?.algebra;
        let opts = SearchOptions {
            seed: cfg.seed,
            ..SearchOptions::default()
        };
        let a = search(&env, &opts)?;
        let b = search(&env, &opts)?;
        let found = a.certificate.as_ref().map(|c| c.recheck().is_ok()).unwrap_or(false);
        let same = a.certificate == b.certificate && a.closures == b.closures;
        Ok((found && same, format!("found {found}, repeatable {same}, {} closures", a.closures)))
    })();
    match result {
        Ok((ok, got)) => row("C14", check, "found, repeatable", got, ok),
        Err(e) => error_row("C14", check, "found, repeatable", e),
    }
}
