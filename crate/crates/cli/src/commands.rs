use std::io::Write;
use std::path::Path;

use dcent_core::{
    brandes_bc, build_sp_dag, compute_reachability, estimate_bc, estimate_coverage, estimate_kpath, exact_coverage,
    exact_kpath, generators, sample_uniform_path, seeded, write_edge_list, Centrality, Estimate, EstimatorConfig,
    ExactConfig, KPathConfig, LabelMap, LoadedGraph, WDefinition,
};
use serde::Serialize;

use crate::args::{Cli, Command, EstimateArgs, ExactArgs, GenArgs, GenKind, KPathEstimateArgs, OutputFormat};
use crate::bench::{render_table, run_benchmark, BenchConfig, BenchOptions};
use crate::error::{CliError, CliResult};
use crate::output::render;

#[derive(Serialize)]
struct ExactOutput<'a> {
    vertex: &'a str,
    value: f64,
    method: &'static str,
    /// Exact value as `p/q` when rational arithmetic was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    rational: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w_definition: Option<WDefinition>,
}

impl<'a> ExactOutput<'a> {
    fn new(vertex: &'a str, c: &Centrality) -> Self {
        ExactOutput {
            vertex,
            value: c.to_f64(),
            method: c.method(),
            rational: c.exact().map(|q| q.to_string()),
            k: None,
            w_definition: None,
        }
    }
}

#[derive(Serialize)]
struct EstimateOutput<'a> {
    vertex: &'a str,
    #[serde(flatten)]
    estimate: Estimate,
}

#[derive(Serialize)]
struct ReachOutput<'a> {
    vertex: &'a str,
    rf_size: usize,
    rt_size: usize,
    domain_size: usize,
    alpha: f64,
    alpha_exact: String,
    alpha_prime: f64,
    alpha_prime_exact: String,
    vd_upper_bound: usize,
}

#[derive(Serialize)]
struct PathOutput {
    source: String,
    target: String,
    length: Option<u32>,
    path_count: Option<String>,
    path: Vec<String>,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let format = cli.format();
    let text = match &cli.command {
        Command::BcExact(a) => exact(cli, a, |lg, r, cfg| brandes_bc(&lg.graph, r, cfg))?,
        Command::CoverageExact(a) => exact(cli, a, |lg, r, _| exact_coverage(&lg.graph, r))?,
        Command::BcEstimate(a) => estimate(cli, a, false)?,
        Command::CoverageEstimate(a) => estimate(cli, a, true)?,
        Command::KpathExact(a) => {
            let lg = load(cli)?;
            let r = lg.labels.resolve(&a.vertex.vertex)?;
            let w_def: WDefinition = a.w_def.into();
            let q = exact_kpath(&lg.graph, r, a.k, w_def)?;
            let mut o = ExactOutput::new(&a.vertex.vertex, &Centrality::Exact(q));
            o.k = Some(a.k);
            o.w_definition = Some(w_def);
            render(&o, format)
        }
        Command::KpathEstimate(a) => kpath_estimate(cli, a)?,
        Command::Reach(a) => {
            let lg = load(cli)?;
            let r = lg.labels.resolve(&a.vertex)?;
            let reach = compute_reachability(&lg.graph, r)?;
            render(
                &ReachOutput {
                    vertex: &a.vertex,
                    rf_size: reach.rf().len(),
                    rt_size: reach.rt().len(),
                    domain_size: reach.domain_size(),
                    alpha: reach.alpha_f64(),
                    alpha_exact: reach.alpha().to_string(),
                    alpha_prime: reach.alpha_prime_f64(),
                    alpha_prime_exact: reach.alpha_prime().to_string(),
                    vd_upper_bound: reach.vd_upper_bound(),
                },
                format,
            )
        }
        Command::Bench(a) => {
            let cfg = BenchConfig::load(&a.config)?;
            let base = a.config.parent().unwrap_or(Path::new("."));
            let opts = BenchOptions {
                workers: cli.workers,
                omit_timing: a.omit_timing,
            };
            let report = run_benchmark(&cfg, base, &opts)?;
            let json = format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes"));
            if let Some(path) = &a.out {
                std::fs::write(path, &json).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
            }
            match format {
                OutputFormat::Json => json,
                OutputFormat::Table => render_table(&report),
            }
        }
        Command::Gen(a) => generate(cli, a)?,
        Command::SamplePath(a) => {
            let lg = load(cli)?;
            let s = lg.labels.resolve(&a.source)?;
            let t = lg.labels.resolve(&a.target)?;
            let dag = if s == t { None } else { build_sp_dag(&lg.graph, s, t)? };
            let mut rng = seeded(cli.seed, 0);
            let (length, path_count, path) = match dag {
                Some(dag) => {
                    let p = sample_uniform_path(&dag, &mut rng);
                    let labels = p.vertices.iter().map(|&v| lg.labels.label(v).to_owned()).collect();
                    (Some(dag.length()), Some(dag.path_count().to_string()), labels)
                }
                None => (None, None, Vec::new()),
            };
            render(
                &PathOutput {
                    source: a.source.clone(),
                    target: a.target.clone(),
                    length,
                    path_count,
                    path,
                },
                format,
            )
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io { path: "<stdout>".into(), source: e })
}

fn load(cli: &Cli) -> CliResult<LoadedGraph> {
    let path = cli
        .graph
        .as_ref()
        .ok_or_else(|| CliError::Usage("--graph is required for this command".into()))?;
    let file = std::fs::File::open(path).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
    Ok(dcent_core::load_edge_list(std::io::BufReader::new(file))?)
}

fn exact(
    cli: &Cli,
    a: &ExactArgs,
    oracle: impl Fn(&LoadedGraph, usize, &ExactConfig) -> dcent_core::Result<Centrality>,
) -> CliResult<String> {
    let lg = load(cli)?;
    let r = lg.labels.resolve(&a.vertex.vertex)?;
    let cfg = if a.float {
        ExactConfig { rational_threshold: 0 }
    } else {
        ExactConfig::default()
    };
    let c = oracle(&lg, r, &cfg)?;
    Ok(render(&ExactOutput::new(&a.vertex.vertex, &c), cli.format()))
}

fn estimate(cli: &Cli, a: &EstimateArgs, coverage: bool) -> CliResult<String> {
    let lg = load(cli)?;
    let r = lg.labels.resolve(&a.vertex.vertex)?;
    let mut cfg = EstimatorConfig::new(a.lambda, a.delta, cli.seed)?.with_mode(a.mode.into());
    cfg.fixed_samples = a.fixed_samples;
    cfg.max_samples_override = a.max_samples;
    cfg.c_constant = a.c_constant;
    cfg.vd_bound = a.vd_bound.into();
    let est = if coverage {
        estimate_coverage(&lg.graph, r, &cfg)?
    } else {
        estimate_bc(&lg.graph, r, &cfg)?
    };
    Ok(render(
        &EstimateOutput {
            vertex: &a.vertex.vertex,
            estimate: est,
        },
        cli.format(),
    ))
}

fn kpath_estimate(cli: &Cli, a: &KPathEstimateArgs) -> CliResult<String> {
    let lg = load(cli)?;
    let r = lg.labels.resolve(&a.vertex.vertex)?;
    let mut cfg = KPathConfig::new(a.k, a.lambda, a.delta, cli.seed)?;
    cfg.stopping = a.stopping.0;
    cfg.w_definition = a.w_def.into();
    cfg.bound_form = a.bound_form.into();
    cfg.mode = a.mode.into();
    cfg.sample_sinks = a.sample_sinks;
    cfg.conservative_budget = a.conservative_budget;
    let est = estimate_kpath(&lg.graph, r, &cfg)?;
    Ok(render(
        &EstimateOutput {
            vertex: &a.vertex.vertex,
            estimate: est,
        },
        cli.format(),
    ))
}

fn generate(cli: &Cli, a: &GenArgs) -> CliResult<String> {
    let g = match a.kind {
        GenKind::ErdosRenyi => generators::erdos_renyi(a.n, a.p, cli.seed)?,
        GenKind::PreferentialAttachment => generators::preferential_attachment(a.n, a.m, cli.seed)?,
        GenKind::LayeredDag => generators::layered_dag(a.layers, a.width, a.p, cli.seed)?,
    };
    let text = write_edge_list(&g, &LabelMap::numeric(g.vertex_count()));
    match &a.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
