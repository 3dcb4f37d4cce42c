mod common;

use std::collections::HashMap;

use dcent_core::brute;
use dcent_core::generators::erdos_renyi;
use dcent_core::graph::{Direction, UNREACHED};
use dcent_core::{
    build_sp_dag, compute_reachability, on_some_shortest_path, sample_uniform_path, seeded, BidirectionalSearch,
};
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dag_counts_match_enumeration(g in common::graph_strategy(2..=8, 0.15, 0.6)) {
        for s in g.vertices() {
            for t in g.vertices().filter(|&t| t != s) {
                let paths = brute::all_shortest_paths(&g, s, t);
                match build_sp_dag(&g, s, t).unwrap() {
                    None => prop_assert!(paths.is_empty()),
                    Some(dag) => {
                        prop_assert_eq!(dag.path_count(), paths.len() as u128);
                        prop_assert_eq!(dag.length() as usize, paths[0].len() - 1);
                        for v in g.vertices() {
                            prop_assert_eq!(dag.contains(v), paths.iter().any(|p| p.contains(&v)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bidirectional_distance_matches_bfs(g in common::graph_strategy(2..=80, 0.01, 0.1), seed in any::<u64>()) {
        let mut search = BidirectionalSearch::new(g.vertex_count());
        let mut rng = seeded(seed, 0);
        for _ in 0..40 {
            let s = rand::Rng::random_range(&mut rng, 0..g.vertex_count());
            let t = rand::Rng::random_range(&mut rng, 0..g.vertex_count());
            if s == t {
                continue;
            }
            let level = g.bfs_levels(s, Direction::Forward).unwrap()[t];
            let expected = (level != UNREACHED).then_some(level);
            prop_assert_eq!(search.distance(&g, s, t), expected);
        }
    }

    #[test]
    fn sampled_paths_are_shortest(g in common::graph_strategy(2..=30, 0.05, 0.3), seed in any::<u64>()) {
        let mut rng = seeded(seed, 0);
        for s in g.vertices().take(5) {
            for t in g.vertices().filter(|&t| t != s) {
                if let Some(dag) = build_sp_dag(&g, s, t).unwrap() {
                    let p = sample_uniform_path(&dag, &mut rng);
                    prop_assert_eq!(p.vertices.first(), Some(&s));
                    prop_assert_eq!(p.vertices.last(), Some(&t));
                    prop_assert_eq!(p.len() as u32, dag.length());
                    prop_assert!(p.vertices.windows(2).all(|w| g.has_edge(w[0], w[1])));
                }
            }
        }
    }

    #[test]
    fn coverage_membership_matches_enumeration(g in common::graph_strategy(2..=8, 0.15, 0.6)) {
        let mut search = BidirectionalSearch::new(g.vertex_count());
        for r in g.vertices() {
            let reach = compute_reachability(&g, r).unwrap();
            for &s in reach.rf() {
                for &t in reach.rt() {
                    let expected = s != t
                        && brute::all_shortest_paths(&g, s, t).iter().any(|p| p[1..p.len() - 1].contains(&r));
                    prop_assert_eq!(on_some_shortest_path(&mut search, &g, s, t, &reach), expected);
                }
            }
        }
    }
}

#[test]
fn sampling_is_uniform_over_shortest_paths() {
    let mut instances = 0;
    for seed in 0..200u64 {
        let g = erdos_renyi(9, 0.35, seed).unwrap();
        let Some((s, t, paths)) = g
            .vertices()
            .flat_map(|s| g.vertices().map(move |t| (s, t)))
            .filter(|&(s, t)| s != t)
            .map(|(s, t)| (s, t, brute::all_shortest_paths(&g, s, t)))
            .find(|(_, _, p)| (2..=12).contains(&p.len()))
        else {
            continue;
        };
        let dag = build_sp_dag(&g, s, t).unwrap().unwrap();
        let mut rng = seeded(seed, 1);
        let draws = 20_000;
        let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
        for _ in 0..draws {
            *counts.entry(sample_uniform_path(&dag, &mut rng).vertices).or_default() += 1;
        }
        assert_eq!(counts.len(), paths.len());
        let expected = draws as f64 / paths.len() as f64;
        let stat: f64 = paths
            .iter()
            .map(|p| {
                let o = *counts.get(p).unwrap_or(&0) as f64;
                (o - expected).powi(2) / expected
            })
            .sum();
        let df = ChiSquared::new((paths.len() - 1) as f64).unwrap();
        assert!(stat < df.inverse_cdf(0.999), "seed {seed}: chi-square {stat} over {} paths", paths.len());
        instances += 1;
        if instances == 6 {
            break;
        }
    }
    assert_eq!(instances, 6);
}
