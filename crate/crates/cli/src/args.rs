use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "modlie", version, about = "Workbench for modular Lie algebras, their cohomology and ternary-map censuses")]
pub struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub out: Option<PathBuf>,
    /// Write a run manifest (command, seed, input and output digests).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Worker threads (default: all cores for census, 1 elsewhere).
    #[arg(long, global = true, env = "MODLIE_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build named algebras.
    #[command(subcommand)]
    Zoo(ZooCmd),
    /// Validate an identity on an algebra file.
    Check(CheckArgs),
    /// Chevalley-Eilenberg or symmetric cohomology in one degree.
    Cohomology(CohomologyArgs),
    /// Restricted 2-envelope inside the derivation algebra.
    Envelope(AlgebraArg),
    /// Decompositions into two nilpotent subalgebras.
    #[command(subcommand)]
    Decomp(DecompCmd),
    /// Block analysis of Chevalley-Eilenberg differentials.
    #[command(subcommand)]
    Young(YoungCmd),
    /// Ternary maps of the forms (x*y)*z and x*(y*z).
    #[command(subcommand)]
    Census(CensusCmd),
    /// Run every acceptance check and print a summary table.
    Suite(SuiteArgs),
}

#[derive(Debug, Subcommand)]
pub enum ZooCmd {
    /// Emit the structure-constant JSON of a named algebra.
    Build(BuildArgs),
    /// List available names.
    List,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    pub name: String,
    /// Size parameter (zassenhaus and divided-powers exponent, abelian and matrix size).
    #[arg(long)]
    pub n: Option<u32>,
    /// Truncation degree of K[t]/(t^m).
    #[arg(long)]
    pub m: Option<usize>,
    /// gf2, gfp:<p> or Q.
    #[arg(long, default_value = "gf2")]
    pub field: String,
}

#[derive(Debug, Args)]
pub struct AlgebraArg {
    pub algebra: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub algebra: PathBuf,
    /// lie, associative, commutative, left-novikov, right-novikov or all.
    #[arg(long, default_value = "lie")]
    pub identity: String,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    pub algebra: PathBuf,
    /// alternating or symmetric.
    #[arg(long, default_value = "alternating")]
    pub flavor: String,
    #[arg(long)]
    pub degree: usize,
    /// trivial, adjoint or a module JSON file.
    #[arg(long, default_value = "trivial")]
    pub coeffs: String,
    /// Largest degree the differential may be built for.
    #[arg(long, default_value_t = modlie::cohomology::DEFAULT_DEGREE_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Subcommand)]
pub enum DecompCmd {
    /// Certify L = N + M with N, M nilpotent subalgebras.
    Verify(VerifyArgs),
    /// Randomized search for such a pair.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub algebra: PathBuf,
    #[arg(long)]
    pub n: PathBuf,
    #[arg(long)]
    pub m: PathBuf,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    pub algebra: PathBuf,
    #[arg(long, default_value_t = modlie::decomp::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
}

#[derive(Debug, Subcommand)]
pub enum YoungCmd {
    /// Young graph of A ⊗ B with the Koszul bracket.
    Report(YoungReportArgs),
    /// Bidegree triangle of L = N ⊕ M.
    Triangle(TriangleArgs),
}

#[derive(Debug, Args)]
pub struct YoungReportArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = modlie::younggraph::DEFAULT_YOUNG_LEVELS)]
    pub nmax: usize,
}

#[derive(Debug, Args)]
pub struct TriangleArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long)]
    pub n: PathBuf,
    #[arg(long)]
    pub m: PathBuf,
    #[arg(long, default_value_t = modlie::younggraph::DEFAULT_YOUNG_LEVELS)]
    pub nmax: usize,
}

#[derive(Debug, Subcommand)]
pub enum CensusCmd {
    /// Count distinct ternary maps.
    Run(CensusRunArgs),
    /// Compare symmetric maps from arbitrary and from commutative ops.
    Conjecture(CensusNArgs),
    /// Size of the intersection of the left and right sets.
    Overlap(CensusNArgs),
}

#[derive(Debug, Args)]
pub struct CensusRunArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma list of left, lr, sym, symcomm (default: all, or sym,symcomm with --stretch).
    #[arg(long)]
    pub which: Option<String>,
    /// Long symmetric-only scan with a checkpoint file (meant for n = 4).
    #[arg(long)]
    pub stretch: bool,
    #[arg(long, default_value = "census.ckpt")]
    pub checkpoint: PathBuf,
    /// Ops per checkpoint save in stretch mode.
    #[arg(long, default_value_t = 1 << 24)]
    pub chunk: u64,
    /// Stop a stretch run after this many chunks.
    #[arg(long)]
    pub max_chunks: Option<u64>,
    /// Maximum keys held in memory.
    #[arg(long, default_value_t = 1 << 28)]
    pub key_budget: u64,
}

#[derive(Debug, Args)]
pub struct CensusNArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Largest census size to run; bigger rows are reported as skipped.
    #[arg(long, default_value_t = 3)]
    pub census_max: usize,
}
