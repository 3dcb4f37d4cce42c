//! Seeded synthetic graph generators.

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, VertexId};
use crate::rng::seeded;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GraphSpec {
    /// Each ordered pair is an edge independently with probability `p`.
    ErdosRenyi { n: usize, p: f64 },
    /// Vertices arrive one at a time and link to `m` earlier vertices chosen
    /// proportionally to total degree + 1. Each link points forward or
    /// backward with equal probability.
    PreferentialAttachment { n: usize, m: usize },
    /// `layers` layers of `width` vertices; edges only go to the next layer,
    /// each present with probability `p`.
    LayeredDag { layers: usize, width: usize, p: f64 },
}

impl GraphSpec {
    pub fn generate(&self, seed: u64) -> Result<DirectedGraph> {
        match *self {
            GraphSpec::ErdosRenyi { n, p } => erdos_renyi(n, p, seed),
            GraphSpec::PreferentialAttachment { n, m } => preferential_attachment(n, m, seed),
            GraphSpec::LayeredDag { layers, width, p } => layered_dag(layers, width, p, seed),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            GraphSpec::ErdosRenyi { n, .. } | GraphSpec::PreferentialAttachment { n, .. } => n,
            GraphSpec::LayeredDag { layers, width, .. } => layers * width,
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("edge probability must lie in [0, 1], got {p}")))
    }
}

fn check_nonempty(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter("graph needs at least one vertex".into()))
    } else {
        Ok(())
    }
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<DirectedGraph> {
    check_nonempty(n)?;
    check_probability(p)?;
    let mut rng = seeded(seed, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(DirectedGraph::from_edges(n, edges)?.0)
}

pub fn preferential_attachment(n: usize, m: usize, seed: u64) -> Result<DirectedGraph> {
    check_nonempty(n)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let mut rng = seeded(seed, 0);
    // every vertex appears once, plus once per incident edge
    let mut urn: Vec<VertexId> = vec![0];
    let mut edges = Vec::new();
    for v in 1..n {
        let mut targets: Vec<VertexId> = Vec::with_capacity(m);
        let wanted = m.min(v);
        while targets.len() < wanted {
            let u = *urn.choose(&mut rng).expect("urn is never empty");
            if !targets.contains(&u) {
                targets.push(u);
            }
        }
        for &u in &targets {
            if rng.random_bool(0.5) {
                edges.push((v, u));
            } else {
                edges.push((u, v));
            }
            urn.push(u);
            urn.push(v);
        }
        urn.push(v);
    }
    Ok(DirectedGraph::from_edges(n, edges)?.0)
}

pub fn layered_dag(layers: usize, width: usize, p: f64, seed: u64) -> Result<DirectedGraph> {
    check_nonempty(layers * width)?;
    check_probability(p)?;
    let mut rng = seeded(seed, 0);
    let mut edges = Vec::new();
    for layer in 0..layers.saturating_sub(1) {
        for i in 0..width {
            for j in 0..width {
                if rng.random_bool(p) {
                    edges.push((layer * width + i, (layer + 1) * width + j));
                }
            }
        }
    }
    Ok(DirectedGraph::from_edges(layers * width, edges)?.0)
}
