use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcent_core::{KPathBoundForm, KPathStopping, SamplingMode, VdBound, WDefinition};

#[derive(Debug, Parser)]
#[command(name = "dcent", version, about = "Single-vertex centrality on directed graphs")]
pub struct Cli {
    /// Edge-list file (SNAP format: one `u v` pair per line, `#` comments).
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    pub json: bool,

    /// Emit an aligned text table instead of JSON.
    #[arg(long, global = true)]
    pub table: bool,

    /// Worker threads for benchmark cells; defaults to the available cores.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn format(&self) -> OutputFormat {
        if self.table {
            OutputFormat::Table
        } else {
            OutputFormat::Json
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact betweenness of one vertex.
    BcExact(ExactArgs),
    /// Adaptive betweenness estimate.
    BcEstimate(EstimateArgs),
    /// Exact coverage of one vertex.
    CoverageExact(ExactArgs),
    /// Adaptive coverage estimate.
    CoverageEstimate(EstimateArgs),
    /// Exact k-path centrality (tiny graphs only).
    KpathExact(KPathExactArgs),
    /// k-path centrality estimate.
    KpathEstimate(KPathEstimateArgs),
    /// RF/RT sizes, α, α′ and the vertex-diameter bound.
    Reach(VertexArgs),
    /// Run a benchmark described by a TOML file.
    Bench(BenchArgs),
    /// Write a synthetic graph as an edge list.
    Gen(GenArgs),
    /// Draw one uniform shortest path between two vertices.
    #[command(hide = true)]
    SamplePath(SamplePathArgs),
}

#[derive(Debug, Args)]
pub struct VertexArgs {
    /// Vertex label as written in the edge list.
    #[arg(long)]
    pub vertex: String,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub vertex: VertexArgs,

    /// Use floating-point arithmetic regardless of graph size.
    #[arg(long)]
    pub float: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Restricted,
    Baseline,
}

impl From<ModeArg> for SamplingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Restricted => SamplingMode::Restricted,
            ModeArg::Baseline => SamplingMode::Baseline,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VdBoundArg {
    Domain,
    WholeGraph,
}

impl From<VdBoundArg> for VdBound {
    fn from(v: VdBoundArg) -> Self {
        match v {
            VdBoundArg::Domain => VdBound::Domain,
            VdBoundArg::WholeGraph => VdBound::WholeGraph,
        }
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub vertex: VertexArgs,

    /// Additive error target.
    #[arg(long)]
    pub lambda: f64,

    /// Failure probability.
    #[arg(long)]
    pub delta: f64,

    #[arg(long, value_enum, default_value = "restricted")]
    pub mode: ModeArg,

    /// Draw exactly this many samples instead of stopping adaptively.
    #[arg(long)]
    pub fixed_samples: Option<u64>,

    /// Replace the computed fallback budget.
    #[arg(long)]
    pub max_samples: Option<u64>,

    /// Constant in the fallback budget.
    #[arg(long, default_value_t = 0.5)]
    pub c_constant: f64,

    #[arg(long, value_enum, default_value = "domain")]
    pub vd_bound: VdBoundArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WDefArg {
    Original,
    Restricted,
}

impl From<WDefArg> for WDefinition {
    fn from(w: WDefArg) -> Self {
        match w {
            WDefArg::Original => WDefinition::Original,
            WDefArg::Restricted => WDefinition::DomainRestricted,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundFormArg {
    Symmetric,
    Verbatim,
}

impl From<BoundFormArg> for KPathBoundForm {
    fn from(b: BoundFormArg) -> Self {
        match b {
            BoundFormArg::Symmetric => KPathBoundForm::Symmetric,
            BoundFormArg::Verbatim => KPathBoundForm::Verbatim,
        }
    }
}

/// `fixed:N`, `hoeffding` or `adaptive`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StoppingArg(pub KPathStopping);

impl FromStr for StoppingArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hoeffding" => Ok(StoppingArg(KPathStopping::Hoeffding)),
            "adaptive" => Ok(StoppingArg(KPathStopping::Adaptive)),
            _ => match s.strip_prefix("fixed:") {
                Some(n) => n
                    .parse()
                    .map(|n| StoppingArg(KPathStopping::Fixed(n)))
                    .map_err(|e| format!("bad sample count {n:?}: {e}")),
                None => Err(format!("expected fixed:N, hoeffding or adaptive, got {s:?}")),
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct KPathExactArgs {
    #[command(flatten)]
    pub vertex: VertexArgs,

    #[arg(long)]
    pub k: usize,

    #[arg(long, value_enum, default_value = "original")]
    pub w_def: WDefArg,
}

#[derive(Debug, Args)]
pub struct KPathEstimateArgs {
    #[command(flatten)]
    pub vertex: VertexArgs,

    #[arg(long)]
    pub k: usize,

    #[arg(long)]
    pub lambda: f64,

    #[arg(long)]
    pub delta: f64,

    #[arg(long, default_value = "adaptive")]
    pub stopping: StoppingArg,

    #[arg(long, value_enum, default_value = "original")]
    pub w_def: WDefArg,

    #[arg(long, value_enum, default_value = "symmetric")]
    pub bound_form: BoundFormArg,

    #[arg(long, value_enum, default_value = "restricted")]
    pub mode: ModeArg,

    /// Sample even when the vertex has no out-neighbors.
    #[arg(long)]
    pub sample_sinks: bool,

    /// Never let the fallback budget drop below its value at α′ = 1.
    #[arg(long)]
    pub conservative_budget: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// TOML benchmark description.
    #[arg(long)]
    pub config: PathBuf,

    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Zero every timing field so reports are byte-identical across runs.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    ErdosRenyi,
    PreferentialAttachment,
    LayeredDag,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,

    /// Vertex count (Erdős–Rényi, preferential attachment).
    #[arg(long, default_value_t = 100)]
    pub n: usize,

    /// Edge probability (Erdős–Rényi, layered DAG).
    #[arg(long, default_value_t = 0.05)]
    pub p: f64,

    /// Links per arriving vertex (preferential attachment).
    #[arg(long, default_value_t = 2)]
    pub m: usize,

    #[arg(long, default_value_t = 10)]
    pub layers: usize,

    #[arg(long, default_value_t = 10)]
    pub width: usize,

    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SamplePathArgs {
    #[arg(long)]
    pub source: String,

    #[arg(long)]
    pub target: String,
}
