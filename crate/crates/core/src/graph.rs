//! Immutable directed graph in compressed sparse row form.
//!
//! Both the forward adjacency (out-neighbors) and the reverse adjacency
//! (in-neighbors) are stored, so traversals of the reverse graph cost the
//! same as traversals of the graph itself. Adjacency lists are sorted by
//! vertex id, contain no duplicates and never contain the owning vertex.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Dense vertex index in `0..vertex_count`.
pub type VertexId = usize;

/// Distance sentinel for vertices a traversal did not reach.
pub const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Follow edges `u -> v` from tail to head.
    Forward,
    /// Follow edges `u -> v` from head to tail, i.e. traverse the reverse graph.
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    out_offsets: Vec<usize>,
    out_targets: Vec<VertexId>,
    in_offsets: Vec<usize>,
    in_sources: Vec<VertexId>,
}

/// Counts of edges discarded while building a graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

impl DirectedGraph {
    /// Builds a graph on `vertex_count` vertices. Self-loops and repeated
    /// edges are dropped and counted rather than rejected.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<(Self, BuildStats)>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut stats = BuildStats::default();
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::InvalidVertex {
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            if u == v {
                stats.self_loops += 1;
            } else {
                list.push((u, v));
            }
        }
        list.sort_unstable();
        let before = list.len();
        list.dedup();
        stats.duplicate_edges = before - list.len();

        let (out_offsets, out_targets) = csr(vertex_count, list.iter().copied());
        let mut reversed: Vec<_> = list.iter().map(|&(u, v)| (v, u)).collect();
        reversed.sort_unstable();
        let (in_offsets, in_sources) = csr(vertex_count, reversed.into_iter());

        Ok((
            DirectedGraph {
                out_offsets,
                out_targets,
                in_offsets,
                in_sources,
            },
            stats,
        ))
    }

    pub fn vertex_count(&self) -> usize {
        self.out_offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// Out-neighbors `N(v)`, ascending. Panics on an invalid id.
    #[inline]
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_targets[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    /// In-neighbors of `v`, ascending. Panics on an invalid id.
    #[inline]
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_sources[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId, direction: Direction) -> &[VertexId] {
        match direction {
            Direction::Forward => self.out_neighbors(v),
            Direction::Reverse => self.in_neighbors(v),
        }
    }

    pub fn out_degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.out_neighbors(v).len())
    }

    pub fn in_degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.in_neighbors(v).len())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out_neighbors(u).binary_search(&v).is_ok()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// The reverse graph: same vertices, every edge flipped.
    pub fn reversed(&self) -> DirectedGraph {
        DirectedGraph {
            out_offsets: self.in_offsets.clone(),
            out_targets: self.in_sources.clone(),
            in_offsets: self.out_offsets.clone(),
            in_sources: self.out_targets.clone(),
        }
    }

    /// BFS levels from `source`; unreachable vertices hold [`UNREACHED`].
    pub fn bfs_levels(&self, source: VertexId, direction: Direction) -> Result<Vec<u32>> {
        self.check_vertex(source)?;
        let mut dist = vec![UNREACHED; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let next = dist[v] + 1;
            for &w in self.neighbors(v, direction) {
                if dist[w] == UNREACHED {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Hop distances from `source`. Unreachable vertices are absent.
    pub fn bfs_distances(
        &self,
        source: VertexId,
        direction: Direction,
    ) -> Result<HashMap<VertexId, u32>> {
        Ok(self
            .bfs_levels(source, direction)?
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| d != UNREACHED)
            .collect())
    }
}

fn csr(
    vertex_count: usize,
    sorted_edges: impl Iterator<Item = (VertexId, VertexId)>,
) -> (Vec<usize>, Vec<VertexId>) {
    let mut offsets = vec![0usize; vertex_count + 1];
    let mut targets = Vec::new();
    for (u, v) in sorted_edges {
        offsets[u + 1] += 1;
        targets.push(v);
    }
    for i in 0..vertex_count {
        offsets[i + 1] += offsets[i];
    }
    (offsets, targets)
}

/// Bijection between external vertex labels and dense ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl LabelMap {
    pub fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn resolve(&self, label: &str) -> Result<VertexId> {
        self.id(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn label(&self, id: VertexId) -> &str {
        &self.labels[id]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Identity labelling `"0".."n-1"`, used for generated graphs.
    pub fn numeric(vertex_count: usize) -> Self {
        let mut map = LabelMap::default();
        for i in 0..vertex_count {
            map.intern(&i.to_string());
        }
        map
    }
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: DirectedGraph,
    pub labels: LabelMap,
    pub stats: BuildStats,
}

/// Parses a SNAP-style edge list: one `u v` pair per line, `#` comments,
/// blank lines ignored. Labels are re-indexed densely in order of first
/// appearance.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut labels = LabelMap::default();
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(u), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected two whitespace-separated labels, got {trimmed:?}"),
            });
        };
        edges.push((labels.intern(u), labels.intern(v)));
    }
    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (graph, stats) = DirectedGraph::from_edges(labels.len(), edges)?;
    Ok(LoadedGraph {
        graph,
        labels,
        stats,
    })
}

pub fn load_edge_list_str(text: &str) -> Result<LoadedGraph> {
    load_edge_list(text.as_bytes())
}

/// Writes the graph back as an edge list, edges sorted by dense id.
pub fn write_edge_list(graph: &DirectedGraph, labels: &LabelMap) -> String {
    let mut out = String::new();
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{} {}", labels.label(u), labels.label(v));
    }
    out
}
