//! Fixed benchmark inputs shared by the criterion targets.

use dcent_core::generators::{erdos_renyi, preferential_attachment};
use dcent_core::{brandes_all_f64, DirectedGraph, VertexId};

/// Scale-free graph with a few high-betweenness hubs.
pub fn hub_graph(n: usize) -> DirectedGraph {
    preferential_attachment(n, 2, 0xB0B).unwrap()
}

/// Sparse random graph with average out-degree about 3.
pub fn sparse_graph(n: usize) -> DirectedGraph {
    erdos_renyi(n, 3.0 / (n as f64 - 1.0), 0xACE).unwrap()
}

/// Vertex with the highest betweenness.
pub fn top_vertex(g: &DirectedGraph) -> VertexId {
    let bc = brandes_all_f64(g);
    (0..bc.len()).max_by(|&a, &b| bc[a].total_cmp(&bc[b]).then(b.cmp(&a))).unwrap()
}
