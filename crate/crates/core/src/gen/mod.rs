//! Seeded generators for the benchmark graph classes.
//!
//! Every generator is a pure function of its parameters and a [`GenSeed`];
//! see [`crate::rng`] for the generator behind the seed.

mod bipartite;
mod delaunay;
mod ktree;

pub use bipartite::{max_planar_bipartite, BipartiteInstance};
pub use delaunay::{delaunay, delaunay_instance, DelaunayInstance, Point};
pub use ktree::{k_tree, k_tree_instance, KTree};

use rand::seq::index;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::GenSeed;

/// Whole-graph resamples before `random_gnm_connected` gives up.
pub const MAX_CONNECTED_ATTEMPTS: usize = 100_000;

/// The complete graph `K_n`.
pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph is simple")
}

/// Uniform random connected graph with exactly `m` edges.
///
/// Draws `m` distinct vertex pairs uniformly and resamples the whole graph
/// until it is connected.
pub fn random_gnm_connected(n: usize, m: usize, seed: GenSeed) -> Result<Graph> {
    let pairs_total = n * n.saturating_sub(1) / 2;
    if n == 0 || m + 1 < n || m > pairs_total {
        return Err(Error::Infeasible(format!(
            "connected graph on {n} vertices needs {}..={pairs_total} edges, got {m}",
            n.saturating_sub(1)
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut rng = seed.rng();
    for _ in 0..MAX_CONNECTED_ATTEMPTS {
        let picked = index::sample(&mut rng, pairs_total, m);
        let g = Graph::new(n, picked.iter().map(|i| pairs[i]))?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Infeasible(format!(
        "no connected sample with n={n}, m={m} after {MAX_CONNECTED_ATTEMPTS} attempts"
    )))
}
