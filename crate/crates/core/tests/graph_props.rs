mod common;

use dcent_core::brute;
use dcent_core::graph::{Direction, UNREACHED};
use dcent_core::{load_edge_list_str, write_edge_list, LabelMap};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn write_then_load_keeps_edges(g in common::graph_strategy(1..=40, 0.0, 0.3)) {
        let text = write_edge_list(&g, &LabelMap::numeric(g.vertex_count()));
        let once = if g.edge_count() == 0 {
            prop_assert!(load_edge_list_str(&text).is_err());
            return Ok(());
        } else {
            load_edge_list_str(&text).unwrap()
        };
        let relabel = |v: usize| once.labels.label(v).parse::<usize>().unwrap();
        let mut edges: Vec<_> = once.graph.edges().map(|(u, v)| (relabel(u), relabel(v))).collect();
        edges.sort_unstable();
        prop_assert_eq!(edges, g.edges().collect::<Vec<_>>());
        let twice = load_edge_list_str(&write_edge_list(&once.graph, &once.labels)).unwrap();
        let labelled = |lg: &dcent_core::LoadedGraph| {
            let mut pairs: Vec<(String, String)> = lg
                .graph
                .edges()
                .map(|(u, v)| (lg.labels.label(u).to_owned(), lg.labels.label(v).to_owned()))
                .collect();
            pairs.sort_unstable();
            pairs
        };
        prop_assert_eq!(labelled(&twice), labelled(&once));
    }

    #[test]
    fn reverse_bfs_is_forward_bfs_on_transpose(g in common::graph_strategy(1..=60, 0.0, 0.15), pick in any::<usize>()) {
        let v = pick % g.vertex_count();
        let rev = g.reversed();
        prop_assert_eq!(g.bfs_levels(v, Direction::Reverse).unwrap(), rev.bfs_levels(v, Direction::Forward).unwrap());
        prop_assert_eq!(rev.reversed().edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn bfs_matches_exhaustive_distances(g in common::graph_strategy(1..=8, 0.1, 0.5)) {
        for s in g.vertices() {
            let levels = g.bfs_levels(s, Direction::Forward).unwrap();
            for t in g.vertices().filter(|&t| t != s) {
                let expected = brute::distance(&g, s, t).map(|d| d as u32).unwrap_or(UNREACHED);
                prop_assert_eq!(levels[t], expected);
            }
        }
    }

    #[test]
    fn adjacency_is_sorted_and_simple(g in common::graph_strategy(1..=50, 0.0, 0.3)) {
        for v in g.vertices() {
            for dir in [Direction::Forward, Direction::Reverse] {
                let nb = g.neighbors(v, dir);
                prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
                prop_assert!(!nb.contains(&v));
            }
        }
        let in_total: usize = g.vertices().map(|v| g.in_neighbors(v).len()).sum();
        prop_assert_eq!(in_total, g.edge_count());
    }
}
