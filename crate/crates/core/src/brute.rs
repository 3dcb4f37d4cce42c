//! Exhaustive enumerators used as independent test oracles.
//!
//! Nothing here uses BFS or path counting; everything is plain simple-path
//! enumeration, so it is exponential and only meant for tiny graphs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::WDefinition;
use crate::graph::{DirectedGraph, VertexId};
use crate::reachability::ReachabilityResult;

/// Every simple path from `s` with exactly `len` edges, fed to `visit`.
fn for_each_simple_path(
    g: &DirectedGraph,
    path: &mut Vec<VertexId>,
    len: usize,
    visit: &mut dyn FnMut(&[VertexId]),
) {
    if path.len() == len + 1 {
        visit(path);
        return;
    }
    let last = *path.last().unwrap();
    for &w in g.out_neighbors(last) {
        if !path.contains(&w) {
            path.push(w);
            for_each_simple_path(g, path, len, visit);
            path.pop();
        }
    }
}

/// All shortest `s -> t` paths, found by iterative deepening over simple paths.
pub fn all_shortest_paths(g: &DirectedGraph, s: VertexId, t: VertexId) -> Vec<Vec<VertexId>> {
    if s == t {
        return vec![vec![s]];
    }
    for len in 1..g.vertex_count() {
        let mut found = Vec::new();
        let mut path = vec![s];
        for_each_simple_path(g, &mut path, len, &mut |p| {
            if *p.last().unwrap() == t {
                found.push(p.to_vec());
            }
        });
        if !found.is_empty() {
            return found;
        }
    }
    Vec::new()
}

/// Shortest-path length by enumeration, `None` if unreachable.
pub fn distance(g: &DirectedGraph, s: VertexId, t: VertexId) -> Option<usize> {
    all_shortest_paths(g, s, t).first().map(|p| p.len() - 1)
}

/// Betweenness of `r` from explicit enumeration of all shortest paths.
pub fn enumerate_bc(g: &DirectedGraph, r: VertexId) -> BigRational {
    let n = g.vertex_count();
    if n < 2 {
        return BigRational::zero();
    }
    let mut total = BigRational::zero();
    for s in g.vertices().filter(|&s| s != r) {
        for t in g.vertices().filter(|&t| t != r && t != s) {
            let paths = all_shortest_paths(g, s, t);
            if paths.is_empty() {
                continue;
            }
            let through = paths.iter().filter(|p| p.contains(&r)).count();
            total += BigRational::new(BigInt::from(through), BigInt::from(paths.len()));
        }
    }
    total / BigRational::from_integer(BigInt::from(n * (n - 1)))
}

/// Coverage of `r` from explicit enumeration.
pub fn enumerate_coverage(g: &DirectedGraph, r: VertexId) -> BigRational {
    let n = g.vertex_count();
    let mut count = 0usize;
    for s in g.vertices().filter(|&s| s != r) {
        for t in g.vertices().filter(|&t| t != r && t != s) {
            if all_shortest_paths(g, s, t).iter().any(|p| p.contains(&r)) {
                count += 1;
            }
        }
    }
    BigRational::new(BigInt::from(count), BigInt::from(n * (n - 1)))
}

/// Exact expectation of one k-path sample, obtained by walking the full
/// probability tree of the restricted random walk: `s` uniform over RF,
/// `l` uniform over `1..=k`, then uniform unvisited successors inside
/// `D(r)` until the walk has `l` edges or gets stuck. Stuck walks
/// contribute zero. Per-sample values are reported to `visit` with their
/// probability so callers can check ranges or second moments.
pub fn kpath_sample_expectation(
    g: &DirectedGraph,
    reach: &ReachabilityResult,
    k: usize,
    w_def: WDefinition,
    visit: &mut dyn FnMut(&BigRational, &BigRational),
) -> BigRational {
    let rf = reach.rf();
    let n = g.vertex_count();
    if rf.is_empty() || k == 0 {
        return BigRational::zero();
    }
    let r = reach.vertex();
    let mut expectation = BigRational::zero();
    let pick = BigRational::new(BigInt::one(), BigInt::from(rf.len() * k));
    let scale = BigRational::new(BigInt::from(rf.len()), BigInt::from(n));
    for &s in rf {
        for l in 1..=k {
            let mut path = vec![s];
            walk_tree(
                g,
                reach,
                r,
                l,
                w_def,
                &mut path,
                BigRational::one(),
                BigRational::one(),
                &mut |prob, value| {
                    let p = &pick * prob;
                    let v = &scale * value;
                    expectation += &p * &v;
                    visit(&p, &v);
                },
            );
        }
    }
    expectation
}

#[allow(clippy::too_many_arguments)]
fn walk_tree(
    g: &DirectedGraph,
    reach: &ReachabilityResult,
    r: VertexId,
    l: usize,
    w_def: WDefinition,
    path: &mut Vec<VertexId>,
    prob: BigRational,
    weight: BigRational,
    leaf: &mut dyn FnMut(&BigRational, &BigRational),
) {
    if path.len() == l + 1 {
        let value = if path.contains(&r) {
            &weight / &prob
        } else {
            BigRational::zero()
        };
        leaf(&prob, &value);
        return;
    }
    let last = *path.last().unwrap();
    let unvisited: Vec<VertexId> = g
        .out_neighbors(last)
        .iter()
        .copied()
        .filter(|w| !path.contains(w))
        .collect();
    let candidates: Vec<VertexId> = unvisited.iter().copied().filter(|&w| reach.in_domain(w)).collect();
    if candidates.is_empty() {
        leaf(&prob, &BigRational::zero());
        return;
    }
    let w_denominator = match w_def {
        WDefinition::Original => unvisited.len(),
        WDefinition::DomainRestricted => candidates.len(),
    };
    let step_prob = &prob / BigRational::from_integer(BigInt::from(candidates.len()));
    let step_weight = &weight / BigRational::from_integer(BigInt::from(w_denominator));
    for w in candidates {
        path.push(w);
        walk_tree(g, reach, r, l, w_def, path, step_prob.clone(), step_weight.clone(), leaf);
        path.pop();
    }
}
