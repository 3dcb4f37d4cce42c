//! Exact betweenness, coverage and k-path centrality.
//!
//! These are the reference values the estimators are checked against.
//! Below [`ExactConfig::rational_threshold`] vertices every result is an
//! exact rational; above it, betweenness falls back to `f64` accumulation.

use std::collections::{HashMap, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, VertexId, UNREACHED};
use crate::reachability::{compute_reachability, ReachabilityResult};

#[derive(Clone, Debug, PartialEq)]
pub enum Centrality {
    Exact(BigRational),
    Approx(f64),
}

impl Centrality {
    pub fn to_f64(&self) -> f64 {
        match self {
            Centrality::Exact(q) => rational_to_f64(q),
            Centrality::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Centrality::Exact(q) => Some(q),
            Centrality::Approx(_) => None,
        }
    }

    pub fn method(&self) -> &'static str {
        match self {
            Centrality::Exact(_) => "rational",
            Centrality::Approx(_) => "float",
        }
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactConfig {
    /// Largest vertex count for which rational arithmetic is used.
    pub rational_threshold: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            rational_threshold: 1000,
        }
    }
}

/// Which `W(p)` normalisation a k-path computation uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WDefinition {
    /// Denominators count every unvisited out-neighbor.
    #[default]
    Original,
    /// Denominators count only unvisited out-neighbors inside `D(r)`.
    DomainRestricted,
}

/// Shortest-path counts `σ_st` with `σ_st(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDependency {
    pub sigma_st: BigUint,
    pub sigma_st_v: BigUint,
}

/// Path counts: machine integers until they overflow, then bignums.
pub(crate) trait PathCount: Clone + Zero + One {
    fn add_count(&mut self, other: &Self) -> bool;
    fn to_big(&self) -> BigUint;
}

impl PathCount for u128 {
    #[inline]
    fn add_count(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(s) => {
                *self = s;
                true
            }
            None => false,
        }
    }
    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl PathCount for BigUint {
    fn add_count(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
    fn to_big(&self) -> BigUint {
        self.clone()
    }
}

impl PathCount for f64 {
    fn add_count(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
    fn to_big(&self) -> BigUint {
        unreachable!("float counts are never converted to integers")
    }
}

/// Single-source BFS with shortest-path counts. `order` lists reached
/// vertices by non-decreasing distance.
pub(crate) struct CountedBfs<C> {
    pub dist: Vec<u32>,
    pub sigma: Vec<C>,
    pub order: Vec<VertexId>,
}

pub(crate) fn counted_bfs<C: PathCount>(g: &DirectedGraph, s: VertexId) -> Option<CountedBfs<C>> {
    let n = g.vertex_count();
    let mut dist = vec![UNREACHED; n];
    let mut sigma = vec![C::zero(); n];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    dist[s] = 0;
    sigma[s] = C::one();
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.out_neighbors(v) {
            if dist[w] == UNREACHED {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                let sv = sigma[v].clone();
                if !sigma[w].add_count(&sv) {
                    return None;
                }
            }
        }
    }
    Some(CountedBfs { dist, sigma, order })
}

/// Counted BFS with exact integers: `u128` when it suffices, `BigUint` otherwise.
pub(crate) fn exact_counts(g: &DirectedGraph, s: VertexId) -> (Vec<u32>, Vec<BigUint>, Vec<VertexId>) {
    match counted_bfs::<u128>(g, s) {
        Some(b) => (b.dist, b.sigma.iter().map(PathCount::to_big).collect(), b.order),
        None => {
            let b = counted_bfs::<BigUint>(g, s).expect("bignum counts cannot overflow");
            (b.dist, b.sigma, b.order)
        }
    }
}

fn normaliser(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n as u64 * (n as u64 - 1)))
}

fn big(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

/// Brandes' dependency accumulation, for every vertex at once.
pub fn brandes_all(g: &DirectedGraph, cfg: &ExactConfig) -> Vec<Centrality> {
    let n = g.vertex_count();
    if n < 2 {
        return vec![Centrality::Exact(BigRational::zero()); n];
    }
    if n > cfg.rational_threshold {
        return brandes_all_f64(g).into_iter().map(Centrality::Approx).collect();
    }
    let mut totals = vec![BigRational::zero(); n];
    for s in g.vertices() {
        let (dist, sigma, order) = exact_counts(g, s);
        let mut delta = vec![BigRational::zero(); n];
        for &w in order.iter().rev() {
            if dist[w] == 0 {
                continue;
            }
            // (1 + δ(w)) / σ(w), shared by every predecessor of w
            let share = (BigRational::one() + &delta[w]) / BigRational::from_integer(big(&sigma[w]));
            for &v in g.in_neighbors(w) {
                if dist[v] != UNREACHED && dist[v] + 1 == dist[w] {
                    delta[v] += &share * BigRational::from_integer(big(&sigma[v]));
                }
            }
            totals[w] += &delta[w];
        }
    }
    let scale = normaliser(n);
    totals
        .into_iter()
        .map(|t| Centrality::Exact(t * &scale))
        .collect()
}

pub fn brandes_all_f64(g: &DirectedGraph) -> Vec<f64> {
    let n = g.vertex_count();
    if n < 2 {
        return vec![0.0; n];
    }
    let mut totals = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    for s in g.vertices() {
        let b = counted_bfs::<f64>(g, s).expect("float counts cannot overflow");
        for &v in &b.order {
            delta[v] = 0.0;
        }
        for &w in b.order.iter().rev() {
            if b.dist[w] == 0 {
                continue;
            }
            let share = (1.0 + delta[w]) / b.sigma[w];
            for &v in g.in_neighbors(w) {
                if b.dist[v] != UNREACHED && b.dist[v] + 1 == b.dist[w] {
                    delta[v] += b.sigma[v] * share;
                }
            }
            totals[w] += delta[w];
        }
    }
    let scale = 1.0 / (n as f64 * (n as f64 - 1.0));
    totals.into_iter().map(|t| t * scale).collect()
}

/// Normalised betweenness of `r` by Brandes' algorithm.
pub fn brandes_bc(g: &DirectedGraph, r: VertexId, cfg: &ExactConfig) -> Result<Centrality> {
    g.check_vertex(r)?;
    Ok(brandes_all(g, cfg).swap_remove(r))
}

/// Betweenness of `r` summed only over `s ∈ RF(r)`, `t ∈ RT(r)`, using
/// `σ_st(r) = σ_sr σ_rt` whenever `d(s,r) + d(r,t) = d(s,t)`.
pub fn restricted_pair_bc(
    g: &DirectedGraph,
    r: VertexId,
    reach: &ReachabilityResult,
    cfg: &ExactConfig,
) -> Result<Centrality> {
    g.check_vertex(r)?;
    let n = g.vertex_count();
    if n < 2 || reach.rf().is_empty() || reach.rt().is_empty() {
        return Ok(Centrality::Exact(BigRational::zero()));
    }
    if n > cfg.rational_threshold {
        let from_r = counted_bfs::<f64>(g, r).expect("float counts");
        let mut total = 0.0;
        for &s in reach.rf() {
            let bs = counted_bfs::<f64>(g, s).expect("float counts");
            let d_sr = bs.dist[r];
            for &t in reach.rt() {
                if t != s && bs.dist[t] == d_sr + from_r.dist[t] {
                    total += bs.sigma[r] * from_r.sigma[t] / bs.sigma[t];
                }
            }
        }
        return Ok(Centrality::Approx(total / (n as f64 * (n as f64 - 1.0))));
    }
    let (_, sigma_r, _) = exact_counts(g, r);
    // numerators grouped by denominator σ_st, so only a handful of
    // rational additions (and gcd reductions) happen at the end
    let mut by_denominator: HashMap<BigUint, BigUint> = HashMap::new();
    for &s in reach.rf() {
        let (dist_s, sigma_s, _) = exact_counts(g, s);
        let d_sr = dist_s[r];
        for &t in reach.rt() {
            let d_rt = reach.dist_from_r(t).expect("t in RT");
            if t != s && dist_s[t] == d_sr + d_rt {
                *by_denominator.entry(sigma_s[t].clone()).or_default() += &sigma_s[r] * &sigma_r[t];
            }
        }
    }
    let total = by_denominator
        .into_iter()
        .fold(BigRational::zero(), |acc, (den, num)| acc + BigRational::new(big(&num), big(&den)));
    Ok(Centrality::Exact(total * normaliser(n)))
}

/// `σ_st` and `σ_st(v)` for one pair, from two counted BFS runs.
pub fn pair_dependency(g: &DirectedGraph, s: VertexId, t: VertexId, v: VertexId) -> Result<PairDependency> {
    for x in [s, t, v] {
        g.check_vertex(x)?;
    }
    let (dist_s, sigma_s, _) = exact_counts(g, s);
    if dist_s[t] == UNREACHED {
        return Ok(PairDependency {
            sigma_st: BigUint::zero(),
            sigma_st_v: BigUint::zero(),
        });
    }
    let (dist_v, sigma_v, _) = exact_counts(g, v);
    let on_path = v != s
        && v != t
        && dist_s[v] != UNREACHED
        && dist_v[t] != UNREACHED
        && dist_s[v] + dist_v[t] == dist_s[t];
    Ok(PairDependency {
        sigma_st: sigma_s[t].clone(),
        sigma_st_v: if on_path {
            &sigma_s[v] * &sigma_v[t]
        } else {
            BigUint::zero()
        },
    })
}

pub const COVERAGE_MAX_VERTICES: usize = 2000;

/// Fraction of ordered pairs `(s, t)`, `s, t ≠ r`, with `r` on some shortest `s -> t` path.
pub fn exact_coverage(g: &DirectedGraph, r: VertexId) -> Result<Centrality> {
    g.check_vertex(r)?;
    let n = g.vertex_count();
    if n > COVERAGE_MAX_VERTICES {
        return Err(Error::Guard {
            routine: "exact coverage",
            limit: COVERAGE_MAX_VERTICES,
            actual: n,
        });
    }
    if n < 2 {
        return Ok(Centrality::Exact(BigRational::zero()));
    }
    let from_r = g.bfs_levels(r, crate::graph::Direction::Forward)?;
    let to_r = g.bfs_levels(r, crate::graph::Direction::Reverse)?;
    let mut count: u64 = 0;
    for s in g.vertices() {
        if s == r || to_r[s] == UNREACHED {
            continue;
        }
        let dist_s = g.bfs_levels(s, crate::graph::Direction::Forward)?;
        let d_sr = dist_s[r];
        count += g
            .vertices()
            .filter(|&t| t != r && t != s && from_r[t] != UNREACHED && dist_s[t] == d_sr + from_r[t])
            .count() as u64;
    }
    Ok(Centrality::Exact(
        BigRational::from_integer(BigInt::from(count)) * normaliser(n),
    ))
}

pub const KPATH_MAX_VERTICES: usize = 15;
pub const KPATH_MAX_K: usize = 5;

/// Exact k-path centrality by enumerating every simple path of 1..=k edges
/// starting at each `s ≠ r`.
pub fn exact_kpath(g: &DirectedGraph, r: VertexId, k: usize, w_def: WDefinition) -> Result<BigRational> {
    g.check_vertex(r)?;
    let n = g.vertex_count();
    if n > KPATH_MAX_VERTICES {
        return Err(Error::Guard {
            routine: "exact k-path (vertices)",
            limit: KPATH_MAX_VERTICES,
            actual: n,
        });
    }
    if k > KPATH_MAX_K {
        return Err(Error::Guard {
            routine: "exact k-path (k)",
            limit: KPATH_MAX_K,
            actual: k,
        });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let reach = compute_reachability(g, r)?;
    let mut total = BigRational::zero();
    let mut path = Vec::with_capacity(k + 1);
    for s in g.vertices().filter(|&s| s != r) {
        path.clear();
        path.push(s);
        accumulate_paths(g, &reach, r, k, w_def, &mut path, BigRational::one(), &mut total);
    }
    Ok(total / BigRational::from_integer(BigInt::from((k * n) as u64)))
}

#[allow(clippy::too_many_arguments)]
fn accumulate_paths(
    g: &DirectedGraph,
    reach: &ReachabilityResult,
    r: VertexId,
    k: usize,
    w_def: WDefinition,
    path: &mut Vec<VertexId>,
    weight: BigRational,
    total: &mut BigRational,
) {
    let last = *path.last().unwrap();
    let successors: Vec<VertexId> = g
        .out_neighbors(last)
        .iter()
        .copied()
        .filter(|w| !path.contains(w))
        .filter(|&w| w_def == WDefinition::Original || reach.in_domain(w))
        .collect();
    if successors.is_empty() {
        return;
    }
    let step = weight / BigRational::from_integer(BigInt::from(successors.len()));
    for w in successors {
        path.push(w);
        if path.contains(&r) {
            *total += &step;
        }
        if path.len() <= k {
            accumulate_paths(g, reach, r, k, w_def, path, step.clone(), total);
        }
        path.pop();
    }
}
