#![allow(dead_code)]

use dcent_core::generators::erdos_renyi;
use dcent_core::DirectedGraph;
use proptest::prelude::*;

/// Random directed graph with `n` in `range` and edge probability in `[lo, hi]`.
pub fn graph_strategy(range: std::ops::RangeInclusive<usize>, lo: f64, hi: f64) -> impl Strategy<Value = DirectedGraph> {
    (range, lo..=hi, any::<u64>()).prop_map(|(n, p, seed)| erdos_renyi(n, p, seed).unwrap())
}

/// Edges of a strongly connected graph: a Hamiltonian cycle plus chords.
pub fn strongly_connected(n: usize, chord_p: f64, seed: u64) -> DirectedGraph {
    let base = erdos_renyi(n, chord_p, seed).unwrap();
    let edges = base.edges().chain((0..n).map(|v| (v, (v + 1) % n)));
    DirectedGraph::from_edges(n, edges).unwrap().0
}
