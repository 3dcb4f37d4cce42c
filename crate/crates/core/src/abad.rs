//! Adaptive betweenness and coverage estimation for a single vertex.
//!
//! Each sample draws `s ∈ RF(r)` and `t ∈ RT(r)` uniformly, then either
//! draws a uniform shortest `s -> t` path and checks whether it passes
//! through `r` (betweenness) or checks whether `r` lies on any shortest
//! `s -> t` path (coverage). A hit contributes `α(r)`, so the mean is
//! unbiased for the normalised score. Sampling stops once both deviation
//! terms are at most `λ`, or at the fallback budget `ω`.

use std::time::Instant;

use rand::Rng;

use crate::bounds::{compute_omega, stopping_terms};
use crate::error::Result;
use crate::estimate::{run_schedule, Estimate, EstimatorConfig, SamplingMode, Schedule};
use crate::graph::{DirectedGraph, VertexId};
use crate::reachability::{compute_reachability, vd_bound, ReachabilityResult};
use crate::rng::{seeded, SampleRng};
use crate::sp_sampler::{on_some_shortest_path, sample_uniform_path, BidirectionalSearch};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Betweenness,
    Coverage,
}

pub fn estimate_bc(g: &DirectedGraph, r: VertexId, cfg: &EstimatorConfig) -> Result<Estimate> {
    estimate(g, r, cfg, Target::Betweenness)
}

pub fn estimate_coverage(g: &DirectedGraph, r: VertexId, cfg: &EstimatorConfig) -> Result<Estimate> {
    estimate(g, r, cfg, Target::Coverage)
}

fn estimate(g: &DirectedGraph, r: VertexId, cfg: &EstimatorConfig, target: Target) -> Result<Estimate> {
    cfg.validate()?;
    g.check_vertex(r)?;
    let started = Instant::now();
    let restricted = cfg.mode == SamplingMode::Restricted;
    if restricted && (g.in_neighbors(r).is_empty() || g.out_neighbors(r).is_empty()) {
        return Ok(Estimate::degenerate(cfg.seed, started));
    }

    let reach = compute_reachability(g, r)?;
    let alpha = if restricted { reach.alpha_f64() } else { 1.0 };
    let omega = cfg
        .max_samples_override
        .unwrap_or_else(|| compute_omega(cfg.c_constant, cfg.lambda, cfg.delta, vd_bound(g, &reach, cfg.vd_bound)));
    let schedule = match cfg.fixed_samples {
        Some(n) => Schedule::Fixed(n),
        None => Schedule::Adaptive { omega },
    };

    let mut rng = seeded(cfg.seed, 0);
    let mut search = BidirectionalSearch::new(g.vertex_count());
    let (d1, d2) = (cfg.delta1(), cfg.delta2());
    let outcome = run_schedule(
        schedule,
        cfg.lambda,
        |c, tau| stopping_terms(c, tau, omega, alpha, d1, d2),
        || {
            let Some((s, t)) = draw_pair(g, &reach, cfg.mode, &mut rng) else {
                return Ok(0.0);
            };
            let hit = match target {
                Target::Betweenness => match search.build_dag(g, s, t)? {
                    Some(dag) => sample_uniform_path(&dag, &mut rng).contains(r),
                    None => false,
                },
                Target::Coverage => on_some_shortest_path(&mut search, g, s, t, &reach),
            };
            Ok(if hit { alpha } else { 0.0 })
        },
    )?;

    let value = outcome.stats.mean();
    Ok(Estimate {
        value,
        samples: outcome.stats.count,
        omega,
        alpha,
        stop_reason: outcome.stop_reason,
        lower_conf: value - outcome.terms.0,
        upper_conf: value + outcome.terms.1,
        seed: cfg.seed,
        wall_time: started.elapsed().as_secs_f64(),
        hits: outcome.stats.hits,
        sample_variance: outcome.stats.variance(),
        alpha_prime: None,
        k: None,
    })
}

/// One endpoint pair, or `None` when the draw cannot involve `r` as an
/// interior vertex (baseline draws touching `r`, or `s = t`).
fn draw_pair(
    g: &DirectedGraph,
    reach: &ReachabilityResult,
    mode: SamplingMode,
    rng: &mut SampleRng,
) -> Option<(VertexId, VertexId)> {
    let (s, t) = match mode {
        SamplingMode::Restricted => {
            let (rf, rt) = (reach.rf(), reach.rt());
            (rf[rng.random_range(0..rf.len())], rt[rng.random_range(0..rt.len())])
        }
        SamplingMode::Baseline => {
            let n = g.vertex_count();
            if n < 2 {
                return None;
            }
            let s = rng.random_range(0..n);
            let mut t = rng.random_range(0..n - 1);
            if t >= s {
                t += 1;
            }
            if s == reach.vertex() || t == reach.vertex() {
                return None;
            }
            (s, t)
        }
    };
    (s != t).then_some((s, t))
}
