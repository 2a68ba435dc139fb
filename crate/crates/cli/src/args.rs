use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monotypy::criteria::{MonotypyClass, DEFAULT_CAP};

#[derive(Debug, Parser)]
#[command(
    name = "monotypy",
    version,
    about = "Decide monotypy of polytopes from their facet normals and construct generating-property witnesses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the normal set of an instance and print the certificates.
    Analyze(AnalyzeArgs),
    /// Construct a translate t with P ∩ (P + t) not a summand of P.
    Witness(WitnessArgs),
    /// Decide whether one polytope is a Minkowski summand of another.
    Summand(SummandArgs),
    /// Mine random instances of a given class.
    Search(SearchArgs),
    /// Write a three-dimensional polytope as OFF with an exact JSON sidecar.
    Export(ExportArgs),
    /// Run a quick end-to-end consistency check.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Record the generation time in the report.
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Instance file.
    pub path: PathBuf,
    /// Also run the M3′ and S4′ sweeps and cross-check them.
    #[arg(long)]
    pub full: bool,
    /// Largest normal set the S4′ sweep accepts.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    /// Instance file with supports.
    pub path: PathBuf,
    /// Write P, P + t and their intersection as OFF files into this directory.
    #[arg(long, value_name = "DIR")]
    pub export: Option<PathBuf>,
    /// Decimal places in OFF output.
    #[arg(long, default_value_t = 6)]
    pub precision: usize,
    /// Candidate translates tried if the construction fails a check.
    #[arg(long, default_value_t = 64)]
    pub budget: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SummandArgs {
    /// Candidate summand S.
    pub summand: PathBuf,
    /// Polytope P.
    pub polytope: PathBuf,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Strong,
    MonoNotStrong,
    NotMono,
}

impl From<ClassArg> for MonotypyClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Strong => MonotypyClass::StronglyMonotypic,
            ClassArg::MonoNotStrong => MonotypyClass::MonotypicNotStrong,
            ClassArg::NotMono => MonotypyClass::NotMonotypic,
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub dim: usize,
    /// Direction count `k` or range `a..b` (default `dim+1..2·dim+2`).
    #[arg(long)]
    pub facets: Option<String>,
    #[arg(long, value_enum)]
    pub class: ClassArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Candidate normal sets to examine.
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    /// Directory for found instance files.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Instance file with supports.
    pub path: PathBuf,
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// `"k"`, `"a..b"` or `"a-b"`.
pub fn parse_facets(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s
        .split_once("..")
        .or_else(|| s.split_once('-'))
        .unwrap_or((s, s));
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (a <= b).then_some((a, b))
}
