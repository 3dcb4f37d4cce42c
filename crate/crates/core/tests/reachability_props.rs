mod common;

use dcent_core::{compute_reachability, transitive_closure_oracle};
use num_rational::Ratio;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sets_match_transitive_closure(g in common::graph_strategy(1..=120, 0.0, 0.05)) {
        let closure = transitive_closure_oracle(&g).unwrap();
        let n = g.vertex_count() as u64;
        for r in g.vertices() {
            let reach = compute_reachability(&g, r).unwrap();
            let mut rf: Vec<_> = g.vertices().filter(|&u| closure.reaches(u, r)).collect();
            let mut rt: Vec<_> = g.vertices().filter(|&v| closure.reaches(r, v)).collect();
            let mut got_rf = reach.rf().to_vec();
            let mut got_rt = reach.rt().to_vec();
            rf.sort_unstable();
            rt.sort_unstable();
            got_rf.sort_unstable();
            got_rt.sort_unstable();
            prop_assert_eq!(&got_rf, &rf);
            prop_assert_eq!(&got_rt, &rt);
            for v in g.vertices() {
                prop_assert_eq!(reach.in_domain(v), v == r || closure.reaches(v, r) || closure.reaches(r, v));
            }
            if n >= 2 {
                prop_assert_eq!(reach.alpha(), Ratio::new((rf.len() * rt.len()) as u64, n * (n - 1)));
            }
            prop_assert_eq!(reach.alpha_prime(), Ratio::new(rf.len() as u64, n));
        }
    }

    #[test]
    fn vd_bound_covers_shortest_paths_through_r(g in common::graph_strategy(2..=40, 0.02, 0.2)) {
        for r in g.vertices() {
            let reach = compute_reachability(&g, r).unwrap();
            let bound = reach.vd_upper_bound();
            prop_assert!(bound >= 2);
            for &s in reach.rf() {
                for &t in reach.rt() {
                    let through = reach.dist_to_r(s).unwrap() + reach.dist_from_r(t).unwrap();
                    prop_assert!((through as usize) < bound);
                }
            }
        }
    }
}
