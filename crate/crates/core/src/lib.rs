//! Single-vertex centrality estimation on directed, unweighted graphs.
//!
//! Betweenness and coverage are estimated by sampling shortest paths
//! between endpoints drawn only from the vertices that can reach the target
//! (`RF`) and the vertices it can reach (`RT`). k-path centrality is estimated
//! by random simple walks confined to `RF ∪ {r} ∪ RT`. Both estimators stop
//! adaptively once an empirical-Bernstein style bound certifies `(λ, δ)`
//! accuracy. Exact rational oracles are included for testing and for
//! measuring errors on small graphs.
//!
//! ```
//! use dcent_core::{estimate_bc, load_edge_list_str, EstimatorConfig};
//!
//! let lg = load_edge_list_str("a b\nb c\n").unwrap();
//! let b = lg.labels.id("b").unwrap();
//! let est = estimate_bc(&lg.graph, b, &EstimatorConfig::new(0.05, 0.1, 7).unwrap()).unwrap();
//! assert!((est.value - 1.0 / 6.0).abs() < 1e-12);
//! ```

pub mod abad;
pub mod apad;
pub mod bounds;
pub mod brute;
pub mod error;
pub mod estimate;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod reachability;
pub mod rng;
pub mod sp_sampler;

pub use abad::{estimate_bc, estimate_coverage};
pub use apad::{estimate_kpath, sample_walk, KPathConfig, VisitedSet, WalkSample};
pub use bounds::{compute_omega, compute_omega_prime, kpath_stopping_terms, stopping_terms, KPathBoundForm, KPathStopping};
pub use error::{Error, Result};
pub use estimate::{Estimate, EstimatorConfig, SamplingMode, StopReason};
pub use exact::{
    brandes_all, brandes_all_f64, brandes_bc, exact_coverage, exact_kpath, pair_dependency, rational_to_f64,
    restricted_pair_bc, Centrality, ExactConfig, WDefinition,
};
pub use generators::GraphSpec;
pub use graph::{load_edge_list, load_edge_list_str, write_edge_list, DirectedGraph, LabelMap, LoadedGraph, VertexId};
pub use reachability::{compute_reachability, transitive_closure_oracle, vd_bound, ReachabilityResult, VdBound};
pub use rng::{derive_seed, seeded, SampleRng};
pub use sp_sampler::{build_sp_dag, on_some_shortest_path, sample_uniform_path, BidirectionalSearch, ShortestPathDag};
