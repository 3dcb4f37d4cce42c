//! Benchmark harness: runs every (dataset, vertex, method, parameter) cell
//! for a few repetitions and reports estimate error and time against the
//! exact oracles.
//!
//! Seeds: cells are enumerated in a fixed order (dataset, vertex, method,
//! parameter); cell `i` gets `derive_seed(master, i)` and repetition `j` of
//! that cell runs with `derive_seed(cell_seed, j)`. Each row records its
//! repetition seeds, so a single cell can be re-run on its own.

use std::path::{Path, PathBuf};
use std::time::Instant;

use dcent_core::{
    brandes_all, brandes_all_f64, compute_reachability, derive_seed, estimate_bc, estimate_coverage, estimate_kpath,
    exact_coverage, exact_kpath, generators::GraphSpec, rational_to_f64, DirectedGraph, Estimate, EstimatorConfig,
    ExactConfig, KPathConfig, KPathStopping, LabelMap, SamplingMode, VertexId, WDefinition,
};
use rand::seq::index::sample;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    /// Master seed.
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_reps")]
    pub reps: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
    /// Adaptive runs, one cell per value.
    #[serde(default)]
    pub lambdas: Vec<f64>,
    /// Fixed-sample runs, one cell per value.
    #[serde(default)]
    pub fixed_samples: Vec<u64>,
    pub methods: Vec<Method>,
    /// Path-length cap for `apad`.
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default)]
    pub w_definition: WDefinitionName,
    pub selection: Selection,
    pub datasets: Vec<Dataset>,
}

fn default_reps() -> usize {
    3
}

fn default_delta() -> f64 {
    0.1
}

fn default_k() -> usize {
    3
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WDefinitionName {
    #[default]
    Original,
    Restricted,
}

impl From<WDefinitionName> for WDefinition {
    fn from(w: WDefinitionName) -> Self {
        match w {
            WDefinitionName::Original => WDefinition::Original,
            WDefinitionName::Restricted => WDefinition::DomainRestricted,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Restricted betweenness sampling.
    Abad,
    /// Betweenness sampling with endpoints drawn from the whole graph.
    Baseline,
    /// Restricted coverage sampling.
    Coverage,
    /// Restricted k-path sampling.
    Apad,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case", tag = "policy", deny_unknown_fields)]
pub enum Selection {
    /// The `count` vertices with highest exact betweenness.
    TopK { count: usize },
    /// Labels listed explicitly.
    Explicit { vertices: Vec<String> },
    /// `count` distinct vertices drawn with the master seed.
    Random { count: usize },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Dataset {
    pub name: String,
    /// Edge-list file, relative to the config file.
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub generator: Option<GraphSpec>,
    /// Generator seed; the master seed when absent.
    #[serde(default)]
    pub seed: Option<u64>,
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let cfg: BenchConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_owned(), source: e })?;
        Self::from_toml(&text)
    }

    fn validate(&self) -> CliResult<()> {
        if self.reps == 0 {
            return Err(CliError::Config("reps must be at least 1".into()));
        }
        if self.lambdas.is_empty() && self.fixed_samples.is_empty() {
            return Err(CliError::Config("give at least one of lambdas or fixed_samples".into()));
        }
        for d in &self.datasets {
            if d.path.is_some() == d.generator.is_some() {
                return Err(CliError::Config(format!(
                    "dataset {:?} needs exactly one of path or generator",
                    d.name
                )));
            }
        }
        Ok(())
    }
}

/// Adaptive `λ` or a fixed sample count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Budget {
    Lambda(f64),
    Fixed(u64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub dataset: String,
    /// SHA-256 prefix of the sorted edge list.
    pub graph_hash: String,
    pub vertex: String,
    pub method: Method,
    pub budget: Budget,
    pub delta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_definition: Option<WDefinitionName>,
    pub alpha: f64,
    pub alpha_prime: f64,
    /// Present only when the exact oracle ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    pub estimates: Vec<f64>,
    pub samples: Vec<u64>,
    pub seeds: Vec<u64>,
    pub avg_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub avg_error_pct: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_error_pct: Option<f64>,
    pub avg_samples: f64,
    pub max_samples: u64,
    pub avg_time: f64,
    pub max_time: f64,
    /// Why the oracle or the estimator could not run for this cell.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub reps: usize,
    pub rows: Vec<BenchRow>,
}

/// `|app − ext| / ext · 100`, undefined when `ext = 0`.
pub fn error_percent(approx: f64, exact: f64) -> Option<f64> {
    (exact > 0.0).then(|| (approx - exact).abs() / exact * 100.0)
}

/// The `k` vertices with highest betweenness, ties broken by ascending id.
pub fn select_top_vertices(g: &DirectedGraph, k: usize) -> Vec<VertexId> {
    rank_by_score(&exact_bc_scores(g), k)
}

fn rank_by_score(scores: &[f64], k: usize) -> Vec<VertexId> {
    let mut ids: Vec<VertexId> = (0..scores.len()).collect();
    ids.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    ids.truncate(k);
    ids
}

fn exact_bc_scores(g: &DirectedGraph) -> Vec<f64> {
    let cfg = ExactConfig::default();
    if g.vertex_count() <= cfg.rational_threshold {
        brandes_all(g, &cfg).iter().map(|c| c.to_f64()).collect()
    } else {
        brandes_all_f64(g)
    }
}

pub fn graph_hash(g: &DirectedGraph) -> String {
    let mut hasher = Sha256::new();
    hasher.update((g.vertex_count() as u64).to_le_bytes());
    for (u, v) in g.edges() {
        hasher.update((u as u64).to_le_bytes());
        hasher.update((v as u64).to_le_bytes());
    }
    hasher.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

struct PreparedDataset {
    name: String,
    graph: DirectedGraph,
    labels: LabelMap,
    hash: String,
    bc: Vec<f64>,
    vertices: Vec<VertexId>,
}

struct Cell<'a> {
    index: u64,
    data: &'a PreparedDataset,
    vertex: VertexId,
    method: Method,
    budget: Budget,
}

pub struct BenchOptions {
    pub workers: Option<usize>,
    pub omit_timing: bool,
}

pub fn run_benchmark(cfg: &BenchConfig, base_dir: &Path, opts: &BenchOptions) -> CliResult<BenchReport> {
    let mut datasets = Vec::with_capacity(cfg.datasets.len());
    for d in &cfg.datasets {
        datasets.push(prepare(d, cfg, base_dir)?);
    }
    let budgets: Vec<Budget> = cfg
        .lambdas
        .iter()
        .map(|&l| Budget::Lambda(l))
        .chain(cfg.fixed_samples.iter().map(|&n| Budget::Fixed(n)))
        .collect();
    let mut methods = cfg.methods.clone();
    methods.sort();
    methods.dedup();

    let mut cells = Vec::new();
    for data in &datasets {
        for &vertex in &data.vertices {
            for &method in &methods {
                for &budget in &budgets {
                    cells.push(Cell {
                        index: cells.len() as u64,
                        data,
                        vertex,
                        method,
                        budget,
                    });
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    let mut rows: Vec<BenchRow> = pool.install(|| cells.par_iter().map(|c| run_cell(c, cfg, opts)).collect());
    rows.sort_by(|a, b| {
        (&a.dataset, &a.vertex, a.method)
            .cmp(&(&b.dataset, &b.vertex, b.method))
            .then(budget_key(a.budget).total_cmp(&budget_key(b.budget)))
    });
    Ok(BenchReport {
        seed: cfg.seed,
        reps: cfg.reps,
        rows,
    })
}

fn budget_key(b: Budget) -> f64 {
    match b {
        Budget::Lambda(l) => -l,
        Budget::Fixed(n) => n as f64,
    }
}

fn prepare(d: &Dataset, cfg: &BenchConfig, base_dir: &Path) -> CliResult<PreparedDataset> {
    let (graph, labels) = match (&d.path, &d.generator) {
        (Some(p), _) => {
            let path = base_dir.join(p);
            let file = std::fs::File::open(&path).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
            let lg = dcent_core::load_edge_list(std::io::BufReader::new(file))?;
            (lg.graph, lg.labels)
        }
        (None, Some(spec)) => {
            let g = spec.generate(d.seed.unwrap_or(cfg.seed))?;
            let labels = LabelMap::numeric(g.vertex_count());
            (g, labels)
        }
        (None, None) => unreachable!("validated"),
    };
    let needs_bc = matches!(cfg.selection, Selection::TopK { .. })
        || cfg.methods.iter().any(|m| matches!(m, Method::Abad | Method::Baseline));
    let bc = if needs_bc { exact_bc_scores(&graph) } else { Vec::new() };
    let n = graph.vertex_count();
    let vertices = match &cfg.selection {
        Selection::TopK { count } => rank_by_score(&bc, *count),
        Selection::Explicit { vertices } => vertices
            .iter()
            .map(|l| labels.resolve(l))
            .collect::<Result<Vec<_>, _>>()?,
        Selection::Random { count } => {
            let mut rng = dcent_core::seeded(cfg.seed, u64::MAX);
            let mut picked = sample(&mut rng, n, (*count).min(n)).into_vec();
            picked.sort_unstable();
            picked
        }
    };
    Ok(PreparedDataset {
        name: d.name.clone(),
        hash: graph_hash(&graph),
        graph,
        labels,
        bc,
        vertices,
    })
}

fn run_cell(cell: &Cell<'_>, cfg: &BenchConfig, opts: &BenchOptions) -> BenchRow {
    let g = &cell.data.graph;
    let r = cell.vertex;
    let cell_seed = derive_seed(cfg.seed, cell.index);
    let seeds: Vec<u64> = (0..cfg.reps as u64).map(|j| derive_seed(cell_seed, j)).collect();
    let reach = compute_reachability(g, r).expect("selected vertices are in range");
    let is_kpath = cell.method == Method::Apad;
    let mut notes = Vec::new();

    let exact = match cell.method {
        Method::Abad | Method::Baseline => Some(cell.data.bc[r]),
        Method::Coverage => match exact_coverage(g, r) {
            Ok(c) => Some(c.to_f64()),
            Err(e) => {
                notes.push(format!("oracle: {e}"));
                None
            }
        },
        Method::Apad => match exact_kpath(g, r, cfg.k, cfg.w_definition.into()) {
            Ok(q) => Some(rational_to_f64(&q)),
            Err(e) => {
                notes.push(format!("oracle: {e}"));
                None
            }
        },
    };

    let mut runs: Vec<(Estimate, f64)> = Vec::with_capacity(seeds.len());
    for &seed in &seeds {
        let started = Instant::now();
        match run_estimator(g, r, cell, cfg, seed) {
            Ok(est) => runs.push((est, started.elapsed().as_secs_f64())),
            Err(e) => {
                notes.push(format!("estimator: {e}"));
                break;
            }
        }
    }
    let timing = |t: f64| if opts.omit_timing { 0.0 } else { t };
    let estimates: Vec<f64> = runs.iter().map(|(e, _)| e.value).collect();
    let samples: Vec<u64> = runs.iter().map(|(e, _)| e.samples).collect();
    let times: Vec<f64> = runs.iter().map(|(_, t)| timing(*t)).collect();
    let errors: Option<Vec<f64>> = exact.and_then(|x| estimates.iter().map(|&a| error_percent(a, x)).collect());
    let mean = |xs: &[f64]| if xs.is_empty() { 0.0 } else { xs.iter().sum::<f64>() / xs.len() as f64 };
    let max = |xs: &[f64]| xs.iter().copied().fold(0.0, f64::max);

    BenchRow {
        dataset: cell.data.name.clone(),
        graph_hash: cell.data.hash.clone(),
        vertex: cell.data.labels.label(r).to_owned(),
        method: cell.method,
        budget: cell.budget,
        delta: cfg.delta,
        k: is_kpath.then_some(cfg.k),
        w_definition: is_kpath.then_some(cfg.w_definition),
        alpha: reach.alpha_f64(),
        alpha_prime: reach.alpha_prime_f64(),
        exact,
        avg_estimate: mean(&estimates),
        avg_error_pct: errors.as_deref().filter(|e| !e.is_empty()).map(mean),
        max_error_pct: errors.as_deref().filter(|e| !e.is_empty()).map(max),
        avg_samples: mean(&samples.iter().map(|&s| s as f64).collect::<Vec<_>>()),
        max_samples: samples.iter().copied().max().unwrap_or(0),
        avg_time: mean(&times),
        max_time: max(&times),
        estimates,
        samples,
        seeds,
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    }
}

fn run_estimator(g: &DirectedGraph, r: VertexId, cell: &Cell<'_>, cfg: &BenchConfig, seed: u64) -> dcent_core::Result<Estimate> {
    let lambda = match cell.budget {
        Budget::Lambda(l) => l,
        // λ only feeds the stopping rule, which a fixed budget skips
        Budget::Fixed(_) => 0.5,
    };
    match cell.method {
        Method::Abad | Method::Baseline | Method::Coverage => {
            let mut ec = EstimatorConfig::new(lambda, cfg.delta, seed)?;
            if cell.method == Method::Baseline {
                ec = ec.with_mode(SamplingMode::Baseline);
            }
            if let Budget::Fixed(n) = cell.budget {
                ec = ec.with_fixed_samples(n);
            }
            if cell.method == Method::Coverage {
                estimate_coverage(g, r, &ec)
            } else {
                estimate_bc(g, r, &ec)
            }
        }
        Method::Apad => {
            let mut kc = KPathConfig::new(cfg.k, lambda, cfg.delta, seed)?;
            kc.w_definition = cfg.w_definition.into();
            if let Budget::Fixed(n) = cell.budget {
                kc.stopping = KPathStopping::Fixed(n);
            }
            estimate_kpath(g, r, &kc)
        }
    }
}

/// Aligned text rendering of a report, one line per row.
pub fn render_table(report: &BenchReport) -> String {
    let header = [
        "dataset", "vertex", "method", "budget", "alpha", "exact", "avg", "avg_err%", "max_err%", "avg_samples",
        "avg_time", "max_time",
    ];
    let fmt_opt = |x: Option<f64>, digits: usize| x.map_or("-".to_owned(), |v| format!("{v:.digits$}"));
    let body: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.dataset.clone(),
                r.vertex.clone(),
                format!("{:?}", r.method).to_lowercase(),
                match r.budget {
                    Budget::Lambda(l) => format!("λ={l}"),
                    Budget::Fixed(n) => format!("N={n}"),
                },
                format!("{:.4}", r.alpha),
                fmt_opt(r.exact, 6),
                format!("{:.6}", r.avg_estimate),
                fmt_opt(r.avg_error_pct, 2),
                fmt_opt(r.max_error_pct, 2),
                format!("{:.0}", r.avg_samples),
                format!("{:.4}", r.avg_time),
                format!("{:.4}", r.max_time),
            ]
        })
        .collect();
    crate::output::align(&header, &body)
}
