use std::cell::RefCell;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use modlie::cohomology::{cohomology_with_budget, CoefficientModule, Flavor};
use modlie::decomp::{search, verify, SearchOptions};
use modlie::exactla::{FieldSpec, Subspace};
use modlie::liecore::{two_envelope, validate, Identity, StructureAlgebra};
use modlie::younggraph::{render_grid, triangle_report, young_graph_report, BlockReport};
use modlie::zoo;
use modlie_census::stretch::{run_symmetric, StretchOptions};
use modlie_census::{census, conjecture_check, lr_report, CensusConfig, CensusError, Which};

use crate::args::*;
use crate::suite;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    /// A computation refused its input: exit 1.
    Domain(String),
}

impl From<modlie::Error> for CliError {
    fn from(e: modlie::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::BadFlag(_) | CensusError::Io(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

/// What a command produced; `ok = false` exits with 1 after printing.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn new(value: impl Serialize, text: String) -> Result<Self, CliError> {
        let json = serde_json::to_value(value).map_err(|e| CliError::Domain(e.to_string()))?;
        Ok(Output { json, text, ok: true })
    }

    fn failing(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

pub struct Ctx {
    pub seed: u64,
    pub threads: Option<usize>,
    /// Every file read, for the manifest.
    pub inputs: RefCell<Vec<PathBuf>>,
}

impl Ctx {
    fn read<T: DeserializeOwned>(&self, path: &Path) -> Result<T, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        self.inputs.borrow_mut().push(path.to_path_buf());
        serde_json::from_slice(&bytes).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    fn census_config(&self, key_budget: u64) -> CensusConfig {
        let mut cfg = CensusConfig::default();
        if let Some(t) = self.threads {
            cfg.threads = t.max(1);
        }
        cfg.key_budget = key_budget;
        cfg
    }
}

fn parse<T: FromStr>(s: &str, what: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| CliError::Usage(format!("bad {what} `{s}`: {e}")))
}

pub fn run(cmd: &Command, ctx: &Ctx) -> Result<Output, CliError> {
    match cmd {
        Command::Zoo(ZooCmd::List) => Output::new(zoo::NAMES, zoo::NAMES.join("\n")),
        Command::Zoo(ZooCmd::Build(a)) => zoo_build(a),
        Command::Check(a) => check(a, ctx),
        Command::Cohomology(a) => cohomology_cmd(a, ctx),
        Command::Envelope(a) => envelope(a, ctx),
        Command::Decomp(DecompCmd::Verify(a)) => decomp_verify(a, ctx),
        Command::Decomp(DecompCmd::Search(a)) => decomp_search(a, ctx),
        Command::Young(YoungCmd::Report(a)) => young_report(a, ctx),
        Command::Young(YoungCmd::Triangle(a)) => young_triangle(a, ctx),
        Command::Census(CensusCmd::Run(a)) => census_run(a, ctx),
        Command::Census(CensusCmd::Conjecture(a)) => {
            let c = conjecture_check(a.n, &ctx.census_config(1 << 28))?;
            let text = match &c.witness {
                None => format!("n = {}: sets equal ({} maps)", c.n, c.t_sym),
                Some(w) => format!("n = {}: sets differ, witness {w}", c.n),
            };
            Output::new(&c, text)
        }
        Command::Census(CensusCmd::Overlap(a)) => {
            let r = lr_report(a.n, &ctx.census_config(1 << 28))?;
            let text = format!(
                "n = {}: left {} right {} union {} overlap {}",
                r.n, r.t_left, r.t_right, r.t_lr, r.overlap
            );
            Output::new(r, text)
        }
        Command::Suite(a) => {
            let cfg = suite::SuiteConfig {
                census_max: a.census_max,
                threads: ctx.threads.unwrap_or_else(|| CensusConfig::default().threads),
                seed: ctx.seed,
            };
            let rows = suite::run(&cfg);
            let ok = rows.iter().all(|r| r.status != suite::Status::Fail);
            let text = suite::render(&rows);
            Ok(Output::new(json!({ "passed": ok, "rows": rows }), text)?.failing(ok))
        }
    }
}

fn zoo_build(a: &BuildArgs) -> Result<Output, CliError> {
    let field: FieldSpec = parse(&a.field, "field")?;
    let alg = zoo::build(
        &a.name,
        &zoo::BuildParams {
            n: a.n,
            m: a.m,
            field,
        },
    )?;
    let text = serde_json::to_string_pretty(&alg).map_err(|e| CliError::Domain(e.to_string()))?;
    // the structure-constant file is the output in both modes
    Output::new(&alg, text)
}

fn check(a: &CheckArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let alg: StructureAlgebra = ctx.read(&a.algebra)?;
    let ids: Vec<Identity> = if a.identity == "all" {
        Identity::ALL.to_vec()
    } else {
        vec![parse(&a.identity, "identity")?]
    };
    let reports: Vec<_> = ids.iter().map(|&i| validate(&alg, i)).collect();
    let ok = reports.iter().all(|r| r.passed);
    let text = reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    let out = if reports.len() == 1 {
        Output::new(&reports[0], text)?
    } else {
        Output::new(&reports, text)?
    };
    Ok(out.failing(ok))
}

fn cohomology_cmd(a: &CohomologyArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let alg: StructureAlgebra = ctx.read(&a.algebra)?;
    let flavor: Flavor = parse(&a.flavor, "flavor")?;
    let module = match a.coeffs.as_str() {
        "trivial" => CoefficientModule::trivial(&alg),
        "adjoint" => CoefficientModule::adjoint(&alg),
        path => {
            let m: CoefficientModule = ctx.read(Path::new(path))?;
            CoefficientModule::new(&alg, m.action)?
        }
    };
    let r = cohomology_with_budget(&alg, &module, a.degree, flavor, a.budget)?;
    let text = format!(
        "H^{} ({}, {} coefficients): dim {}\n  cochains {}, cocycles {}, coboundaries {}",
        r.degree, r.flavor, a.coeffs, r.dim_h, r.dim_cochains, r.dim_cocycles, r.dim_coboundaries
    );
    Output::new(&r, text)
}

fn envelope(a: &AlgebraArg, ctx: &Ctx) -> Result<Output, CliError> {
    let alg: StructureAlgebra = ctx.read(&a.algebra)?;
    let env = two_envelope(&alg)?;
    let text = format!(
        "2-envelope: dim {} (algebra dim {})\n  basis: {}",
        env.algebra.dim(),
        alg.dim(),
        env.algebra.basis_names().join(", ")
    );
    Output::new(
        json!({
            "dim": env.algebra.dim(),
            "algebra": env.algebra,
            "embedding": env.embedding,
            "square_map": env.square_map,
        }),
        text,
    )
}

fn certificate_text(c: &modlie::decomp::DecompositionCertificate) -> String {
    format!(
        "L = N + M certified: dim N {} (nilpotency index {}), dim M {} (index {}), direct {}, L solvable {}",
        c.n_part.dim(),
        c.n_nilpotency_index,
        c.m_part.dim(),
        c.m_nilpotency_index,
        c.is_direct,
        c.ambient_solvable
    )
}

fn decomp_verify(a: &VerifyArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let alg: StructureAlgebra = ctx.read(&a.algebra)?;
    let n: Subspace = ctx.read(&a.n)?;
    let m: Subspace = ctx.read(&a.m)?;
    let cert = verify(&alg, &n, &m)?;
    let text = certificate_text(&cert);
    Output::new(&cert, text)
}

fn decomp_search(a: &SearchArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let alg: StructureAlgebra = ctx.read(&a.algebra)?;
    let opts = SearchOptions {
        budget: a.budget,
        seed: ctx.seed,
        restarts: a.restarts,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.threads.unwrap_or(1).max(1))
        .build()
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let outcome = pool.install(|| search(&alg, &opts))?;
    let mut text = match &outcome.certificate {
        Some(c) => certificate_text(c),
        None => format!("no decomposition found within {} closures", a.budget),
    };
    let _ = write!(text, "\n  closures used: {}", outcome.closures);
    let found = outcome.certificate.is_some();
    Ok(Output::new(&outcome, text)?.failing(found))
}

fn blocks_output(reports: Vec<BlockReport>) -> Result<Output, CliError> {
    let grid = render_grid(&reports);
    let ok = reports.iter().all(|r| r.assembly_matches);
    let mut text = grid.clone();
    for r in &reports {
        let _ = writeln!(
            text,
            "level {}: {} arrows, {} zero, assembly {}",
            r.level,
            r.arrows.len(),
            r.zero_count(),
            if r.assembly_matches { "matches" } else { "MISMATCH" }
        );
    }
    Ok(Output::new(json!({ "levels": reports, "grid": grid }), text.trim_end().to_string())?.failing(ok))
}

fn young_report(a: &YoungReportArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let x: StructureAlgebra = ctx.read(&a.a)?;
    let y: StructureAlgebra = ctx.read(&a.b)?;
    blocks_output(young_graph_report(&x, &y, a.nmax)?)
}

fn young_triangle(a: &TriangleArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let l: StructureAlgebra = ctx.read(&a.algebra)?;
    let n: Subspace = ctx.read(&a.n)?;
    let m: Subspace = ctx.read(&a.m)?;
    blocks_output(triangle_report(&l, &n, &m, a.nmax)?)
}

fn census_run(a: &CensusRunArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let which: Which = match &a.which {
        Some(w) => parse(w, "--which")?,
        None if a.stretch => Which::symmetric_only(),
        None => Which::all(),
    };
    let cfg = ctx.census_config(a.key_budget);
    if a.stretch {
        if which.needs_full_sets() {
            return Err(CliError::Usage("--stretch computes only sym and symcomm; drop --which or pass sym,symcomm".into()));
        }
        let opts = StretchOptions {
            checkpoint: a.checkpoint.clone(),
            chunk: a.chunk,
            max_chunks: a.max_chunks,
        };
        let r = run_symmetric(a.n, &cfg, &opts)?;
        eprintln!("elapsed {:.2?}", r.elapsed);
        let mut text = format!(
            "n = {}: {}/{} ops scanned{}\n  t_sym {}\n  t_sym_comm {}",
            r.n,
            r.ops_enumerated,
            r.total_ops,
            if r.complete { "" } else { " (resume with the same checkpoint)" },
            r.t_sym,
            r.t_sym_comm
        );
        if let Some(eq) = r.equal_sets {
            let _ = write!(text, "\n  sets equal: {eq}");
        }
        return Output::new(&r, text);
    }
    let r = census(a.n, which, &cfg)?;
    eprintln!("elapsed {:.2?}", r.elapsed);
    let mut text = format!("n = {} ({} ops)", r.n, r.ops_enumerated);
    for (name, v) in [("t_left", r.t_left), ("t_lr", r.t_lr), ("t_sym", r.t_sym), ("t_sym_comm", r.t_sym_comm)] {
        if let Some(v) = v {
            let _ = write!(text, "\n  {name} {v}");
        }
    }
    Output::new(&r, text)
}
