mod common;

use dcent_core::brute;
use dcent_core::exact::pair_dependency;
use dcent_core::{
    brandes_all, brandes_all_f64, brandes_bc, compute_reachability, exact_coverage, exact_kpath, restricted_pair_bc,
    Centrality, ExactConfig, WDefinition,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn exact(c: Centrality) -> num_rational::BigRational {
    c.exact().expect("small graphs use rational arithmetic").clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn restricted_pairs_equal_brandes(g in common::graph_strategy(2..=60, 0.01, 0.2)) {
        let cfg = ExactConfig::default();
        let all = brandes_all(&g, &cfg);
        for r in g.vertices() {
            let reach = compute_reachability(&g, r).unwrap();
            let restricted = exact(restricted_pair_bc(&g, r, &reach, &cfg).unwrap());
            prop_assert_eq!(&restricted, all[r].exact().unwrap());
        }
    }

    #[test]
    fn brandes_equals_enumeration(g in common::graph_strategy(2..=8, 0.1, 0.6)) {
        let cfg = ExactConfig::default();
        for r in g.vertices() {
            prop_assert_eq!(exact(brandes_bc(&g, r, &cfg).unwrap()), brute::enumerate_bc(&g, r));
            prop_assert_eq!(exact(exact_coverage(&g, r).unwrap()), brute::enumerate_coverage(&g, r));
        }
    }

    #[test]
    fn pair_dependency_counts(g in common::graph_strategy(2..=7, 0.2, 0.6)) {
        for s in g.vertices() {
            for t in g.vertices().filter(|&t| t != s) {
                let paths = brute::all_shortest_paths(&g, s, t);
                for v in g.vertices() {
                    let dep = pair_dependency(&g, s, t, v).unwrap();
                    prop_assert_eq!(dep.sigma_st, BigUint::from(paths.len()));
                    let through = paths.iter().filter(|p| p[1..p.len() - 1].contains(&v)).count();
                    prop_assert_eq!(dep.sigma_st_v, BigUint::from(through));
                }
            }
        }
    }

    #[test]
    fn float_brandes_tracks_rational(g in common::graph_strategy(2..=50, 0.02, 0.2)) {
        let exact_scores = brandes_all(&g, &ExactConfig::default());
        let float_scores = brandes_all_f64(&g);
        for (q, f) in exact_scores.iter().zip(&float_scores) {
            prop_assert!((q.to_f64() - f).abs() < 1e-12);
        }
    }

    #[test]
    fn kpath_tree_expectation_is_exact(g in common::graph_strategy(2..=7, 0.15, 0.6), k in 1usize..=3) {
        for r in g.vertices() {
            let reach = compute_reachability(&g, r).unwrap();
            for w_def in [WDefinition::Original, WDefinition::DomainRestricted] {
                let expected = exact_kpath(&g, r, k, w_def).unwrap();
                let alpha_prime = num_rational::BigRational::new(reach.rf().len().into(), g.vertex_count().into());
                let mut bad_range = false;
                let got = brute::kpath_sample_expectation(&g, &reach, k, w_def, &mut |_, v| {
                    bad_range |= *v < num_rational::BigRational::from_integer(0.into()) || *v > alpha_prime;
                });
                prop_assert_eq!(got, expected);
                prop_assert!(!bad_range);
            }
        }
    }

    #[test]
    fn w_definitions_agree_when_everything_is_reachable(n in 2usize..=7, p in 0.0f64..0.5, seed in any::<u64>(), k in 1usize..=4) {
        let g = common::strongly_connected(n, p, seed);
        for r in g.vertices() {
            prop_assert_eq!(
                exact_kpath(&g, r, k, WDefinition::Original).unwrap(),
                exact_kpath(&g, r, k, WDefinition::DomainRestricted).unwrap()
            );
        }
    }
}

#[test]
fn coverage_dominates_betweenness() {
    let g = dcent_core::generators::erdos_renyi(30, 0.1, 4).unwrap();
    let cfg = ExactConfig::default();
    for r in g.vertices() {
        let bc = brandes_bc(&g, r, &cfg).unwrap().to_f64();
        let cc = exact_coverage(&g, r).unwrap().to_f64();
        assert!(bc <= cc + 1e-15);
    }
}
