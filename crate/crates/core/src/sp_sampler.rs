//! Uniform shortest-path sampling with balanced bidirectional BFS.
//!
//! A search grows a forward BFS from `s` and a backward BFS from `t`,
//! always expanding the side whose frontier has fewer incident edges, one
//! complete level at a time. The first level that touches the other side
//! fixes `d(s, t)`; every vertex on that level which the other side has
//! already seen is a meeting vertex, and each shortest path crosses exactly
//! one of them. Path counts are stitched across that cut: forward counts are
//! exact on the `s` side, and on the `t` side they are propagated level by
//! level from the meeting vertices.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, VertexId};
use crate::reachability::ReachabilityResult;

/// One vertex of a shortest-path DAG.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagNode {
    pub vertex: VertexId,
    /// `d(s, vertex)`.
    pub dist: u32,
    /// Number of shortest `s -> vertex` paths.
    pub sigma: u128,
    /// Indices (into [`ShortestPathDag::nodes`]) of shortest-path predecessors.
    pub preds: Vec<u32>,
}

/// Union of all shortest `s -> t` paths.
#[derive(Clone, Debug)]
pub struct ShortestPathDag {
    source: VertexId,
    target: VertexId,
    length: u32,
    nodes: Vec<DagNode>,
}

impl ShortestPathDag {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    /// `d(s, t)`.
    pub fn length(&self) -> u32 {
        self.length
    }

    /// `σ_st`.
    pub fn path_count(&self) -> u128 {
        self.nodes.last().map_or(0, |n| n.sigma)
    }

    /// Nodes ordered by distance from `s`; the first is `s`, the last is `t`.
    pub fn nodes(&self) -> &[DagNode] {
        &self.nodes
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.nodes.iter().any(|n| n.vertex == v)
    }
}

/// A sampled shortest path, listed from `s` to `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSample {
    pub vertices: Vec<VertexId>,
}

impl PathSample {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Reusable scratch space for bidirectional searches over one graph.
/// Per-vertex state is invalidated by bumping an epoch, so a search only
/// pays for the vertices it touches.
#[derive(Clone, Debug)]
pub struct BidirectionalSearch {
    epoch: u32,
    f_stamp: Vec<u32>,
    f_dist: Vec<u32>,
    f_sigma: Vec<u128>,
    b_stamp: Vec<u32>,
    b_dist: Vec<u32>,
    b_sigma: Vec<u128>,
    dag_stamp: Vec<u32>,
    dag_index: Vec<u32>,
}

enum Meeting {
    Unreachable,
    /// Total length and the cut level (forward depth at the meeting level).
    Met { length: u32, cut: u32, meeting: Vec<VertexId> },
}

impl BidirectionalSearch {
    pub fn new(vertex_count: usize) -> Self {
        BidirectionalSearch {
            epoch: 0,
            f_stamp: vec![0; vertex_count],
            f_dist: vec![0; vertex_count],
            f_sigma: vec![0; vertex_count],
            b_stamp: vec![0; vertex_count],
            b_dist: vec![0; vertex_count],
            b_sigma: vec![0; vertex_count],
            dag_stamp: vec![0; vertex_count],
            dag_index: vec![0; vertex_count],
        }
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.f_stamp.fill(0);
            self.b_stamp.fill(0);
            self.dag_stamp.fill(0);
            self.epoch = 1;
        }
    }

    #[inline]
    fn f_seen(&self, v: VertexId) -> bool {
        self.f_stamp[v] == self.epoch
    }

    #[inline]
    fn b_seen(&self, v: VertexId) -> bool {
        self.b_stamp[v] == self.epoch
    }

    /// Runs both searches until they touch. With `count_paths` off, the
    /// `σ` arrays are left untouched and overflow cannot occur.
    fn meet(
        &mut self,
        g: &DirectedGraph,
        s: VertexId,
        t: VertexId,
        count_paths: bool,
    ) -> Result<Meeting> {
        self.next_epoch();
        let epoch = self.epoch;
        self.f_stamp[s] = epoch;
        self.f_dist[s] = 0;
        self.f_sigma[s] = 1;
        self.b_stamp[t] = epoch;
        self.b_dist[t] = 0;
        self.b_sigma[t] = 1;
        let mut f_front = vec![s];
        let mut b_front = vec![t];
        let (mut f_depth, mut b_depth) = (0u32, 0u32);
        let mut next = Vec::new();

        loop {
            if f_front.is_empty() || b_front.is_empty() {
                return Ok(Meeting::Unreachable);
            }
            let f_work: usize = f_front.iter().map(|&v| g.out_neighbors(v).len()).sum();
            let b_work: usize = b_front.iter().map(|&v| g.in_neighbors(v).len()).sum();
            let forward = f_work <= b_work;
            next.clear();
            if forward {
                let level = f_depth + 1;
                for &v in &f_front {
                    let sv = self.f_sigma[v];
                    for &w in g.out_neighbors(v) {
                        if !self.f_seen(w) {
                            self.f_stamp[w] = epoch;
                            self.f_dist[w] = level;
                            self.f_sigma[w] = 0;
                            next.push(w);
                        }
                        if count_paths && self.f_dist[w] == level {
                            self.f_sigma[w] = self.f_sigma[w]
                                .checked_add(sv)
                                .ok_or(Error::CountOverflow { from: s, to: t })?;
                        }
                    }
                }
                f_depth = level;
                std::mem::swap(&mut f_front, &mut next);
                let meeting: Vec<_> = f_front.iter().copied().filter(|&w| self.b_seen(w)).collect();
                if !meeting.is_empty() {
                    return Ok(Meeting::Met {
                        length: f_depth + b_depth,
                        cut: f_depth,
                        meeting,
                    });
                }
            } else {
                let level = b_depth + 1;
                for &v in &b_front {
                    let sv = self.b_sigma[v];
                    for &w in g.in_neighbors(v) {
                        if !self.b_seen(w) {
                            self.b_stamp[w] = epoch;
                            self.b_dist[w] = level;
                            self.b_sigma[w] = 0;
                            next.push(w);
                        }
                        if count_paths && self.b_dist[w] == level {
                            self.b_sigma[w] = self.b_sigma[w]
                                .checked_add(sv)
                                .ok_or(Error::CountOverflow { from: s, to: t })?;
                        }
                    }
                }
                b_depth = level;
                std::mem::swap(&mut b_front, &mut next);
                let meeting: Vec<_> = b_front.iter().copied().filter(|&w| self.f_seen(w)).collect();
                if !meeting.is_empty() {
                    return Ok(Meeting::Met {
                        length: f_depth + b_depth,
                        cut: f_depth,
                        meeting,
                    });
                }
            }
        }
    }

    /// `d(s, t)` by bidirectional BFS, or `None` when `t` is unreachable.
    pub fn distance(&mut self, g: &DirectedGraph, s: VertexId, t: VertexId) -> Option<u32> {
        if s == t {
            return Some(0);
        }
        match self.meet(g, s, t, false).expect("no counting, no overflow") {
            Meeting::Unreachable => None,
            Meeting::Met { length, .. } => Some(length),
        }
    }

    /// Builds the shortest-path DAG from `s` to `t`, or `None` if `t` is unreachable.
    pub fn build_dag(
        &mut self,
        g: &DirectedGraph,
        s: VertexId,
        t: VertexId,
    ) -> Result<Option<ShortestPathDag>> {
        if s == t {
            return Err(Error::InvalidParameter(
                "shortest-path DAG needs distinct endpoints".into(),
            ));
        }
        let (length, cut, meeting) = match self.meet(g, s, t, true)? {
            Meeting::Unreachable => return Ok(None),
            Meeting::Met { length, cut, meeting } => (length, cut, meeting),
        };
        let epoch = self.epoch;

        // s side: every vertex at forward level j <= cut that reaches the cut
        // through forward-level edges, collected from the cut downwards.
        let mut levels: Vec<Vec<VertexId>> = vec![Vec::new(); length as usize + 1];
        for &v in &meeting {
            self.dag_stamp[v] = epoch;
        }
        levels[cut as usize] = meeting;
        for j in (1..=cut as usize).rev() {
            let (lower, upper) = levels.split_at_mut(j);
            for &v in &upper[0] {
                for &u in g.in_neighbors(v) {
                    if self.f_seen(u) && self.f_dist[u] as usize == j - 1 && self.dag_stamp[u] != epoch {
                        self.dag_stamp[u] = epoch;
                        lower[j - 1].push(u);
                    }
                }
            }
        }
        // t side: walk away from the cut along backward-level edges.
        for j in cut as usize + 1..=length as usize {
            let want = length - j as u32;
            let (lower, upper) = levels.split_at_mut(j);
            for &v in &lower[j - 1] {
                for &w in g.out_neighbors(v) {
                    if self.b_seen(w) && self.b_dist[w] == want && self.dag_stamp[w] != epoch {
                        self.dag_stamp[w] = epoch;
                        upper[0].push(w);
                    }
                }
            }
        }
        debug_assert_eq!(levels[0], vec![s]);
        debug_assert_eq!(levels[length as usize], vec![t]);

        let mut nodes: Vec<DagNode> = Vec::with_capacity(levels.iter().map(Vec::len).sum());
        for (j, level) in levels.iter_mut().enumerate() {
            level.sort_unstable();
            for &v in level.iter() {
                self.dag_index[v] = nodes.len() as u32;
                let preds: Vec<u32> = if j == 0 {
                    Vec::new()
                } else {
                    g.in_neighbors(v)
                        .iter()
                        .filter(|&&u| self.dag_stamp[u] == epoch && self.level_of(u, cut, length) + 1 == j as u32)
                        .map(|&u| self.dag_index[u])
                        .collect()
                };
                let sigma = if j as u32 <= cut {
                    self.f_sigma[v]
                } else {
                    let mut total: u128 = 0;
                    for &p in &preds {
                        total = total
                            .checked_add(nodes[p as usize].sigma)
                            .ok_or(Error::CountOverflow { from: s, to: t })?;
                    }
                    total
                };
                nodes.push(DagNode {
                    vertex: v,
                    dist: j as u32,
                    sigma,
                    preds,
                });
            }
        }
        Ok(Some(ShortestPathDag {
            source: s,
            target: t,
            length,
            nodes,
        }))
    }

    /// Distance from `s` of a vertex already placed in the DAG.
    #[inline]
    fn level_of(&self, v: VertexId, cut: u32, length: u32) -> u32 {
        if self.f_seen(v) && self.f_dist[v] <= cut {
            self.f_dist[v]
        } else {
            length - self.b_dist[v]
        }
    }
}

pub fn build_sp_dag(g: &DirectedGraph, s: VertexId, t: VertexId) -> Result<Option<ShortestPathDag>> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    BidirectionalSearch::new(g.vertex_count()).build_dag(g, s, t)
}

/// Draws one shortest path uniformly: walk back from `t`, choosing each
/// predecessor with probability proportional to its path count.
pub fn sample_uniform_path<R: Rng + ?Sized>(dag: &ShortestPathDag, rng: &mut R) -> PathSample {
    let nodes = &dag.nodes;
    let mut current = nodes.len() - 1;
    let mut vertices = Vec::with_capacity(dag.length as usize + 1);
    vertices.push(nodes[current].vertex);
    while nodes[current].dist > 0 {
        let node = &nodes[current];
        let mut pick = rng.random_range(0..node.sigma);
        let mut chosen = node.preds[node.preds.len() - 1];
        for &p in &node.preds {
            let weight = nodes[p as usize].sigma;
            if pick < weight {
                chosen = p;
                break;
            }
            pick -= weight;
        }
        current = chosen as usize;
        vertices.push(nodes[current].vertex);
    }
    vertices.reverse();
    PathSample { vertices }
}

/// Whether `r` lies on some shortest `s -> t` path, for `s ∈ RF(r)`, `t ∈ RT(r)`.
pub fn on_some_shortest_path(
    search: &mut BidirectionalSearch,
    g: &DirectedGraph,
    s: VertexId,
    t: VertexId,
    reach: &ReachabilityResult,
) -> bool {
    let (Some(to_r), Some(from_r)) = (reach.dist_to_r(s), reach.dist_from_r(t)) else {
        return false;
    };
    if s == t {
        return false;
    }
    search.distance(g, s, t) == Some(to_r + from_r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;
    use crate::graph::load_edge_list_str;
    use crate::reachability::compute_reachability;
    use crate::rng::seeded;

    #[test]
    fn diamond_dag() {
        let lg = load_edge_list_str("s a\ns b\na t\nb t").unwrap();
        let id = |l| lg.labels.id(l).unwrap();
        let dag = build_sp_dag(&lg.graph, id("s"), id("t")).unwrap().unwrap();
        assert_eq!(dag.path_count(), 2);
        assert_eq!(dag.length(), 2);
        assert!(dag.contains(id("a")) && dag.contains(id("b")));
        assert_eq!(dag.nodes().len(), 4);
    }

    #[test]
    fn single_chain_and_unreachable() {
        let lg = load_edge_list_str("a b\nb c\nx y").unwrap();
        let id = |l| lg.labels.id(l).unwrap();
        let dag = build_sp_dag(&lg.graph, id("a"), id("c")).unwrap().unwrap();
        assert_eq!(dag.path_count(), 1);
        let mut rng = seeded(1, 0);
        for _ in 0..10 {
            assert_eq!(
                sample_uniform_path(&dag, &mut rng).vertices,
                vec![id("a"), id("b"), id("c")]
            );
        }
        assert!(build_sp_dag(&lg.graph, id("a"), id("x")).unwrap().is_none());
        assert!(build_sp_dag(&lg.graph, id("c"), id("a")).unwrap().is_none());
        assert!(build_sp_dag(&lg.graph, id("a"), id("a")).is_err());
    }

    #[test]
    fn dag_edges_are_shortest_path_edges() {
        // 3 parallel middles plus a longer detour
        let lg = load_edge_list_str("s x1\ns x2\ns x3\nx1 t\nx2 t\nx3 t\ns y\ny z\nz t").unwrap();
        let id = |l| lg.labels.id(l).unwrap();
        let dag = build_sp_dag(&lg.graph, id("s"), id("t")).unwrap().unwrap();
        assert_eq!(dag.path_count(), 3);
        assert!(!dag.contains(id("y")));
        for node in dag.nodes() {
            for &p in &node.preds {
                let pn = &dag.nodes()[p as usize];
                assert_eq!(pn.dist + 1, node.dist);
                assert!(lg.graph.has_edge(pn.vertex, node.vertex));
            }
        }
    }

    #[test]
    fn diamond_frequencies() {
        let lg = load_edge_list_str("s a\ns b\na t\nb t").unwrap();
        let id = |l| lg.labels.id(l).unwrap();
        let dag = build_sp_dag(&lg.graph, id("s"), id("t")).unwrap().unwrap();
        let mut rng = seeded(7, 3);
        let draws = 10_000;
        let through_a = (0..draws)
            .filter(|_| sample_uniform_path(&dag, &mut rng).contains(id("a")))
            .count();
        let freq = through_a as f64 / draws as f64;
        assert!((freq - 0.5).abs() <= 0.02, "{freq}");
    }

    #[test]
    fn three_way_frequencies() {
        let lg = load_edge_list_str("s x1\ns x2\ns x3\nx1 t\nx2 t\nx3 t").unwrap();
        let id = |l| lg.labels.id(l).unwrap();
        let dag = build_sp_dag(&lg.graph, id("s"), id("t")).unwrap().unwrap();
        let mut rng = seeded(11, 0);
        let mut counts = [0usize; 3];
        let draws = 10_000;
        for _ in 0..draws {
            let p = sample_uniform_path(&dag, &mut rng);
            let mid = ["x1", "x2", "x3"].iter().position(|l| p.contains(id(l))).unwrap();
            counts[mid] += 1;
        }
        for c in counts {
            assert!((c as f64 / draws as f64 - 1.0 / 3.0).abs() <= 0.02, "{counts:?}");
        }
    }

    #[test]
    fn coverage_membership() {
        let lg = load_edge_list_str("a b\nb c").unwrap();
        let id = |l| lg.labels.id(l).unwrap();
        let reach = compute_reachability(&lg.graph, id("b")).unwrap();
        let mut search = BidirectionalSearch::new(3);
        assert!(on_some_shortest_path(&mut search, &lg.graph, id("a"), id("c"), &reach));

        let d = load_edge_list_str("s a\ns b\na t\nb t").unwrap();
        let did = |l| d.labels.id(l).unwrap();
        let mut search = BidirectionalSearch::new(4);
        for r in ["a", "b"] {
            let reach = compute_reachability(&d.graph, did(r)).unwrap();
            assert!(on_some_shortest_path(&mut search, &d.graph, did("s"), did("t"), &reach));
        }

        let sc = load_edge_list_str("s r\nr t\ns t").unwrap();
        let sid = |l| sc.labels.id(l).unwrap();
        let reach = compute_reachability(&sc.graph, sid("r")).unwrap();
        let mut search = BidirectionalSearch::new(3);
        assert!(!on_some_shortest_path(&mut search, &sc.graph, sid("s"), sid("t"), &reach));
        assert_eq!(brute::distance(&sc.graph, sid("s"), sid("t")), Some(1));
    }

    #[test]
    fn search_reuse_across_many_pairs() {
        let lg = load_edge_list_str("1 2\n2 3\n3 4\n4 1\n1 3\n2 4").unwrap();
        let g = &lg.graph;
        let mut search = BidirectionalSearch::new(g.vertex_count());
        for _ in 0..3 {
            for s in g.vertices() {
                for t in g.vertices().filter(|&t| t != s) {
                    let dag = search.build_dag(g, s, t).unwrap().unwrap();
                    let paths = brute::all_shortest_paths(g, s, t);
                    assert_eq!(dag.path_count() as usize, paths.len());
                    assert_eq!(search.distance(g, s, t), Some(dag.length()));
                }
            }
        }
    }
}
