//! The sets of vertices that can reach `r` (RF) and that `r` can reach (RT).
//!
//! Both come out of one BFS on the reverse graph and one on the graph,
//! rooted at `r`. The BFS depths are kept because they double as the
//! `d(s, r)` and `d(r, t)` inputs of the coverage test and give a free
//! bound on the longest shortest path through the domain.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Direction, VertexId, UNREACHED};

/// How the vertex-diameter bound feeding the sample budget is obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VdBound {
    /// `depth(reverse BFS) + depth(forward BFS) + 1` from the target vertex.
    #[default]
    Domain,
    /// Vertex count of the largest weakly connected component.
    WholeGraph,
}

#[derive(Clone, Debug)]
pub struct ReachabilityResult {
    vertex: VertexId,
    vertex_count: usize,
    rf: Vec<VertexId>,
    rt: Vec<VertexId>,
    dist_to_r: Vec<u32>,
    dist_from_r: Vec<u32>,
    vd_upper_bound: usize,
}

impl ReachabilityResult {
    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Vertices other than `r` with a path to `r`, in BFS order.
    pub fn rf(&self) -> &[VertexId] {
        &self.rf
    }

    /// Vertices other than `r` reachable from `r`, in BFS order.
    pub fn rt(&self) -> &[VertexId] {
        &self.rt
    }

    pub fn in_rf(&self, v: VertexId) -> bool {
        v != self.vertex && self.dist_to_r[v] != UNREACHED
    }

    pub fn in_rt(&self, v: VertexId) -> bool {
        v != self.vertex && self.dist_from_r[v] != UNREACHED
    }

    /// Membership in `D(r) = RF ∪ {r} ∪ RT`.
    #[inline]
    pub fn in_domain(&self, v: VertexId) -> bool {
        self.dist_to_r[v] != UNREACHED || self.dist_from_r[v] != UNREACHED
    }

    pub fn domain_size(&self) -> usize {
        (0..self.vertex_count).filter(|&v| self.in_domain(v)).count()
    }

    /// `d(s, r)`, or `None` when `s` cannot reach `r`.
    #[inline]
    pub fn dist_to_r(&self, s: VertexId) -> Option<u32> {
        Some(self.dist_to_r[s]).filter(|&d| d != UNREACHED)
    }

    /// `d(r, t)`, or `None` when `r` cannot reach `t`.
    #[inline]
    pub fn dist_from_r(&self, t: VertexId) -> Option<u32> {
        Some(self.dist_from_r[t]).filter(|&d| d != UNREACHED)
    }

    /// `|RF| |RT| / (|V| (|V| - 1))`, exact.
    pub fn alpha(&self) -> Ratio<u64> {
        let n = self.vertex_count as u64;
        if n < 2 {
            return Ratio::from_integer(0);
        }
        Ratio::new((self.rf.len() * self.rt.len()) as u64, n * (n - 1))
    }

    /// `|RF| / |V|`, exact.
    pub fn alpha_prime(&self) -> Ratio<u64> {
        if self.vertex_count == 0 {
            return Ratio::from_integer(0);
        }
        Ratio::new(self.rf.len() as u64, self.vertex_count as u64)
    }

    pub fn alpha_f64(&self) -> f64 {
        ratio_to_f64(self.alpha())
    }

    pub fn alpha_prime_f64(&self) -> f64 {
        ratio_to_f64(self.alpha_prime())
    }

    /// Upper bound on the number of vertices of any shortest `s -> t` path
    /// with `s ∈ RF ∪ {r}` and `t ∈ RT ∪ {r}`. Never below 2.
    pub fn vd_upper_bound(&self) -> usize {
        self.vd_upper_bound
    }
}

pub(crate) fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn compute_reachability(g: &DirectedGraph, r: VertexId) -> Result<ReachabilityResult> {
    let dist_to_r = g.bfs_levels(r, Direction::Reverse)?;
    let dist_from_r = g.bfs_levels(r, Direction::Forward)?;
    let (rf, depth_rf) = collect_reached(&dist_to_r, r);
    let (rt, depth_rt) = collect_reached(&dist_from_r, r);
    Ok(ReachabilityResult {
        vertex: r,
        vertex_count: g.vertex_count(),
        rf,
        rt,
        dist_to_r,
        dist_from_r,
        vd_upper_bound: (depth_rf + depth_rt + 1).max(2),
    })
}

/// Reached vertices other than `root`, ordered by (depth, id), and the maximum depth.
fn collect_reached(dist: &[u32], root: VertexId) -> (Vec<VertexId>, usize) {
    let mut reached: Vec<_> = (0..dist.len())
        .filter(|&v| v != root && dist[v] != UNREACHED)
        .collect();
    reached.sort_by_key(|&v| (dist[v], v));
    let depth = reached.last().map_or(0, |&v| dist[v] as usize);
    (reached, depth)
}

/// Vertex count of the largest weakly connected component. Any shortest
/// path stays inside one such component, so this bounds `VD(G)`.
pub fn largest_weak_component(g: &DirectedGraph) -> usize {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut best = 0;
    let mut stack = Vec::new();
    for start in g.vertices() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.out_neighbors(v).iter().chain(g.in_neighbors(v)) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        best = best.max(size);
    }
    best
}

pub fn vd_bound(g: &DirectedGraph, reach: &ReachabilityResult, mode: VdBound) -> usize {
    match mode {
        VdBound::Domain => reach.vd_upper_bound(),
        VdBound::WholeGraph => largest_weak_component(g).max(2),
    }
}

/// Dense pairwise reachability, built by bit-parallel Warshall closure.
/// Diagonal entries are always false.
#[derive(Clone, Debug)]
pub struct ReachabilityMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ReachabilityMatrix {
    pub const MAX_VERTICES: usize = 2000;

    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}

pub fn transitive_closure_oracle(g: &DirectedGraph) -> Result<ReachabilityMatrix> {
    let n = g.vertex_count();
    if n > ReachabilityMatrix::MAX_VERTICES {
        return Err(Error::Guard {
            routine: "transitive closure",
            limit: ReachabilityMatrix::MAX_VERTICES,
            actual: n,
        });
    }
    let words = n.div_ceil(64).max(1);
    let mut bits = vec![0u64; n * words];
    for (u, v) in g.edges() {
        bits[u * words + v / 64] |= 1 << (v % 64);
    }
    for k in 0..n {
        let row_k: Vec<u64> = bits[k * words..(k + 1) * words].to_vec();
        for i in 0..n {
            if bits[i * words + k / 64] >> (k % 64) & 1 == 1 {
                for (dst, src) in bits[i * words..(i + 1) * words].iter_mut().zip(&row_k) {
                    *dst |= src;
                }
            }
        }
    }
    for i in 0..n {
        bits[i * words + i / 64] &= !(1 << (i % 64));
    }
    Ok(ReachabilityMatrix { n, words, bits })
}
