//! k-path centrality estimation with domain-restricted random simple paths.
//!
//! A sample picks `s ∈ RF(r)` and a length `l ∈ 1..=k` uniformly, then
//! extends a simple path from `s` one uniform step at a time among the
//! unvisited out-neighbors inside `D(r)`. A completed walk through `r`
//! contributes `|RF| W(p) / (|V| P(p))`; walks that run out of candidates
//! early contribute zero, which keeps the estimator unbiased because their
//! probability mass carries no path of the requested length.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::bounds::{compute_omega_prime, kpath_stopping_terms, KPathBoundForm, KPathStopping};
use crate::error::{Error, Result};
use crate::estimate::{check_unit, run_schedule, Estimate, SamplingMode, Schedule};
use crate::exact::WDefinition;
use crate::graph::{DirectedGraph, VertexId};
use crate::reachability::{compute_reachability, ReachabilityResult};
use crate::rng::{seeded, SampleRng};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KPathConfig {
    pub k: usize,
    pub lambda: f64,
    pub delta: f64,
    pub seed: u64,
    pub w_definition: WDefinition,
    pub stopping: KPathStopping,
    pub bound_form: KPathBoundForm,
    pub mode: SamplingMode,
    /// Keep sampling when `r` has no out-neighbors; such a vertex can
    /// still end a path. Off by default, matching the published procedure.
    pub sample_sinks: bool,
    /// Never let the fallback budget drop below its value at `α′ = 1`.
    pub conservative_budget: bool,
}

impl KPathConfig {
    pub fn new(k: usize, lambda: f64, delta: f64, seed: u64) -> Result<Self> {
        let cfg = KPathConfig {
            k,
            lambda,
            delta,
            seed,
            w_definition: WDefinition::Original,
            stopping: KPathStopping::Adaptive,
            bound_form: KPathBoundForm::Symmetric,
            mode: SamplingMode::Restricted,
            sample_sinks: false,
            conservative_budget: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        check_unit("lambda", self.lambda)?;
        check_unit("delta", self.delta)
    }

    pub fn delta1(&self) -> f64 {
        self.delta / 4.0
    }

    pub fn delta2(&self) -> f64 {
        self.delta / 4.0
    }
}

/// One restricted random walk.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkSample {
    pub vertices: Vec<VertexId>,
    pub l_target: usize,
    /// `1 / P(p)`: product of candidate-set sizes along the walk.
    pub prob_denominator: u128,
    /// `1 / W(p)`: product of the `W` denominators along the walk.
    pub weight_denominator: u128,
    /// `W(p) / P(p)`, accumulated step by step.
    pub weight_over_prob: f64,
    pub completed: bool,
    pub contains_r: bool,
}

impl WalkSample {
    pub fn prob(&self) -> f64 {
        1.0 / self.prob_denominator as f64
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.weight_denominator as f64
    }
}

/// Epoch-stamped visited set, cleared in O(1) between walks.
#[derive(Clone, Debug)]
pub struct VisitedSet {
    epoch: u32,
    stamp: Vec<u32>,
}

impl VisitedSet {
    pub fn new(vertex_count: usize) -> Self {
        VisitedSet {
            epoch: 1,
            stamp: vec![0; vertex_count],
        }
    }

    pub fn clear(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId) {
        self.stamp[v] = self.epoch;
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.stamp[v] == self.epoch
    }
}

/// Walks up to `l` edges from `s`. In restricted mode every step stays inside
/// `D(r)`; in baseline mode any unvisited out-neighbor may be taken.
#[allow(clippy::too_many_arguments)]
pub fn sample_walk<R: Rng + ?Sized>(
    g: &DirectedGraph,
    reach: &ReachabilityResult,
    s: VertexId,
    l: usize,
    w_definition: WDefinition,
    mode: SamplingMode,
    visited: &mut VisitedSet,
    rng: &mut R,
) -> WalkSample {
    let r = reach.vertex();
    visited.clear();
    visited.insert(s);
    let mut vertices = Vec::with_capacity(l + 1);
    vertices.push(s);
    let mut prob_denominator: u128 = 1;
    let mut weight_denominator: u128 = 1;
    let mut weight_over_prob = 1.0;
    let mut contains_r = s == r;
    let mut current = s;
    let allowed = |w: VertexId| mode == SamplingMode::Baseline || reach.in_domain(w);

    while vertices.len() <= l {
        let mut candidates = 0usize;
        let mut unvisited = 0usize;
        let mut in_domain = 0usize;
        for &w in g.out_neighbors(current) {
            if visited.contains(w) {
                continue;
            }
            unvisited += 1;
            if reach.in_domain(w) {
                in_domain += 1;
            }
            if allowed(w) {
                candidates += 1;
            }
        }
        if candidates == 0 {
            return WalkSample {
                vertices,
                l_target: l,
                prob_denominator,
                weight_denominator,
                weight_over_prob,
                completed: false,
                contains_r,
            };
        }
        let w_count = match w_definition {
            WDefinition::Original => unvisited,
            WDefinition::DomainRestricted => in_domain,
        };
        let mut pick = rng.random_range(0..candidates);
        let mut next = current;
        for &w in g.out_neighbors(current) {
            if !visited.contains(w) && allowed(w) {
                if pick == 0 {
                    next = w;
                    break;
                }
                pick -= 1;
            }
        }
        prob_denominator = prob_denominator.saturating_mul(candidates as u128);
        weight_denominator = weight_denominator.saturating_mul(w_count as u128);
        weight_over_prob *= candidates as f64 / w_count as f64;
        visited.insert(next);
        vertices.push(next);
        contains_r |= next == r;
        current = next;
    }
    WalkSample {
        vertices,
        l_target: l,
        prob_denominator,
        weight_denominator,
        weight_over_prob,
        completed: true,
        contains_r,
    }
}

pub fn estimate_kpath(g: &DirectedGraph, r: VertexId, cfg: &KPathConfig) -> Result<Estimate> {
    cfg.validate()?;
    g.check_vertex(r)?;
    let started = Instant::now();
    let restricted = cfg.mode == SamplingMode::Restricted;
    let no_in = g.in_neighbors(r).is_empty();
    let no_out = g.out_neighbors(r).is_empty();
    if restricted && (no_in || (no_out && !cfg.sample_sinks)) {
        let mut est = Estimate::degenerate(cfg.seed, started);
        est.k = Some(cfg.k);
        est.alpha_prime = Some(if no_in {
            0.0
        } else {
            compute_reachability(g, r)?.alpha_prime_f64()
        });
        return Ok(est);
    }

    let reach = compute_reachability(g, r)?;
    let n = g.vertex_count();
    let (starts, scale): (Vec<VertexId>, f64) = match cfg.mode {
        SamplingMode::Restricted => (reach.rf().to_vec(), reach.alpha_prime_f64()),
        SamplingMode::Baseline => (
            g.vertices().filter(|&v| v != r).collect(),
            (n as f64 - 1.0) / n as f64,
        ),
    };
    if starts.is_empty() {
        let mut est = Estimate::degenerate(cfg.seed, started);
        est.k = Some(cfg.k);
        est.alpha_prime = Some(scale);
        return Ok(est);
    }

    let budget = compute_omega_prime(cfg.stopping, scale, cfg.lambda, cfg.delta).map(|b| {
        let b = if cfg.conservative_budget {
            b.max(compute_omega_prime(cfg.stopping, 1.0, cfg.lambda, cfg.delta).unwrap())
        } else {
            b
        };
        b.max(1)
    });
    let (schedule, omega) = match (cfg.stopping, budget) {
        (KPathStopping::Fixed(count), _) => (Schedule::Fixed(count), count),
        (KPathStopping::Hoeffding, Some(b)) => (Schedule::Fixed(b), b),
        (KPathStopping::Adaptive, Some(b)) => (Schedule::Adaptive { omega: b }, b),
        _ => unreachable!("budgets exist for non-fixed schedules"),
    };

    let mut rng = seeded(cfg.seed, 0);
    let mut visited = VisitedSet::new(n);
    let (d1, d2) = (cfg.delta1(), cfg.delta2());
    let outcome = run_schedule(
        schedule,
        cfg.lambda,
        |c, tau| kpath_stopping_terms(c, tau, omega, scale, d1, d2, cfg.bound_form),
        || Ok(kpath_sample(g, &reach, cfg, &starts, scale, &mut visited, &mut rng)),
    )?;
    let mut stop_reason = outcome.stop_reason;
    if cfg.stopping == KPathStopping::Hoeffding {
        stop_reason = crate::estimate::StopReason::OmegaReached;
    }

    let value = outcome.stats.mean();
    Ok(Estimate {
        value,
        samples: outcome.stats.count,
        omega,
        alpha: reach.alpha_f64(),
        stop_reason,
        lower_conf: value - outcome.terms.0,
        upper_conf: value + outcome.terms.1,
        seed: cfg.seed,
        wall_time: started.elapsed().as_secs_f64(),
        hits: outcome.stats.hits,
        sample_variance: outcome.stats.variance(),
        alpha_prime: Some(scale),
        k: Some(cfg.k),
    })
}

/// One per-sample contribution `c_τ`.
fn kpath_sample(
    g: &DirectedGraph,
    reach: &ReachabilityResult,
    cfg: &KPathConfig,
    starts: &[VertexId],
    scale: f64,
    visited: &mut VisitedSet,
    rng: &mut SampleRng,
) -> f64 {
    let s = starts[rng.random_range(0..starts.len())];
    let l = rng.random_range(1..=cfg.k);
    let walk = sample_walk(g, reach, s, l, cfg.w_definition, cfg.mode, visited, rng);
    let value = if walk.completed && walk.contains_r {
        scale * walk.weight_over_prob
    } else {
        0.0
    };
    debug_assert!((0.0..=scale).contains(&value), "sample {value} outside [0, {scale}]");
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimate::StopReason;
    use crate::graph::load_edge_list_str;
    use crate::rng::seeded;

    #[test]
    fn path_walk_is_forced() {
        let lg = load_edge_list_str("a b\nb c").unwrap();
        let id = |l| lg.labels.id(l).unwrap();
        let reach = compute_reachability(&lg.graph, id("b")).unwrap();
        let mut visited = VisitedSet::new(3);
        let mut rng = seeded(0, 0);
        for _ in 0..5 {
            let w = sample_walk(
                &lg.graph,
                &reach,
                id("a"),
                2,
                WDefinition::Original,
                SamplingMode::Restricted,
                &mut visited,
                &mut rng,
            );
            assert_eq!(w.vertices, vec![id("a"), id("b"), id("c")]);
            assert_eq!((w.prob_denominator, w.weight_denominator), (1, 1));
            assert!(w.completed && w.contains_r);
        }
    }

    #[test]
    fn star_walk_weights() {
        let lg = load_edge_list_str("s x\ns y").unwrap();
        let id = |l| lg.labels.id(l).unwrap();
        let reach = compute_reachability(&lg.graph, id("x")).unwrap();
        assert!(!reach.in_domain(id("y")));
        let mut visited = VisitedSet::new(3);
        let mut rng = seeded(0, 0);
        let orig = sample_walk(
            &lg.graph,
            &reach,
            id("s"),
            1,
            WDefinition::Original,
            SamplingMode::Restricted,
            &mut visited,
            &mut rng,
        );
        assert_eq!(orig.vertices, vec![id("s"), id("x")]);
        assert_eq!(orig.prob(), 1.0);
        assert_eq!(orig.weight(), 0.5);
        let restricted = sample_walk(
            &lg.graph,
            &reach,
            id("s"),
            1,
            WDefinition::DomainRestricted,
            SamplingMode::Restricted,
            &mut visited,
            &mut rng,
        );
        assert_eq!(restricted.weight(), 1.0);
        assert_eq!(restricted.prob(), restricted.weight());
    }

    #[test]
    fn stuck_walk() {
        let lg = load_edge_list_str("a b\nb c").unwrap();
        let id = |l| lg.labels.id(l).unwrap();
        let reach = compute_reachability(&lg.graph, id("b")).unwrap();
        let mut visited = VisitedSet::new(3);
        let mut rng = seeded(0, 0);
        let w = sample_walk(
            &lg.graph,
            &reach,
            id("c"),
            1,
            WDefinition::Original,
            SamplingMode::Restricted,
            &mut visited,
            &mut rng,
        );
        assert!(!w.completed);
        assert_eq!(w.vertices, vec![id("c")]);
    }

    #[test]
    fn degenerate_vertices() {
        let lg = load_edge_list_str("a b\nb c").unwrap();
        let id = |l| lg.labels.id(l).unwrap();
        let cfg = KPathConfig::new(2, 0.05, 0.1, 1).unwrap();
        let est = estimate_kpath(&lg.graph, id("a"), &cfg).unwrap();
        assert_eq!((est.value, est.stop_reason), (0.0, StopReason::DegenerateZero));
        // c has no out-neighbors: zero by default, sampled when asked to
        let est = estimate_kpath(&lg.graph, id("c"), &cfg).unwrap();
        assert_eq!(est.stop_reason, StopReason::DegenerateZero);
        let mut sinks = cfg.clone();
        sinks.sample_sinks = true;
        sinks.stopping = KPathStopping::Fixed(20_000);
        let est = estimate_kpath(&lg.graph, id("c"), &sinks).unwrap();
        // exact value for k = 2: (W(b->c) + W(a->b->c)) / (2 * 3) = 1/3
        assert!((est.value - 1.0 / 3.0).abs() < 4.0 * est.standard_error() + 1e-12);
    }

    #[test]
    fn hoeffding_budget_is_used() {
        let lg = load_edge_list_str("a b\nb c").unwrap();
        let mut cfg = KPathConfig::new(2, 0.05, 0.1, 1).unwrap();
        cfg.stopping = KPathStopping::Hoeffding;
        let est = estimate_kpath(&lg.graph, lg.labels.id("b").unwrap(), &cfg).unwrap();
        // α′ = 1/3: ⌈(1/9) ln 20 / 0.005⌉
        assert_eq!(est.samples, ((20f64).ln() / 9.0 / 0.005).ceil() as u64);
        assert_eq!(est.omega, est.samples);
        cfg.conservative_budget = true;
        let est = estimate_kpath(&lg.graph, lg.labels.id("b").unwrap(), &cfg).unwrap();
        assert_eq!(est.samples, 600);
    }

    #[test]
    fn rejects_zero_k() {
        assert!(KPathConfig::new(0, 0.05, 0.1, 1).is_err());
    }
}
