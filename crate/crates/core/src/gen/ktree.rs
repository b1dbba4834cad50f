//! Random 2-trees and planar 3-trees.

use std::collections::HashSet;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::GenSeed;

/// A k-tree with its construction sequence.
#[derive(Clone, Debug)]
pub struct KTree {
    pub graph: Graph,
    pub k: usize,
    /// `attachments[i]` is the clique vertex `k + 1 + i` was attached to.
    pub attachments: Vec<Vec<usize>>,
}

impl KTree {
    /// Replays the construction and checks it is a stacked triangulation:
    /// every 3-tree vertex must be attached to a face present at that time.
    /// Returns false for `k != 3`.
    pub fn is_stacked_triangulation(&self) -> bool {
        if self.k != 3 {
            return false;
        }
        let mut faces: HashSet<[usize; 3]> = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].into();
        for (i, clique) in self.attachments.iter().enumerate() {
            let v = 4 + i;
            let mut f = [clique[0], clique[1], clique[2]];
            f.sort_unstable();
            if !faces.remove(&f) {
                return false;
            }
            let [a, b, c] = f;
            faces.extend([[a, b, v], [a, c, v], [b, c, v]]);
        }
        let n = 4 + self.attachments.len();
        let mut edges: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        for (i, clique) in self.attachments.iter().enumerate() {
            edges.extend(clique.iter().map(|&c| (c, 4 + i)));
        }
        Graph::new(n, edges)
            .map(|g| g == self.graph)
            .unwrap_or(false)
    }
}

pub fn k_tree(n: usize, k: usize, seed: GenSeed) -> Result<Graph> {
    k_tree_instance(n, k, seed).map(|t| t.graph)
}

/// Grows a k-tree from `K_{k+1}` by attaching each new vertex to a uniformly
/// chosen clique of the pool. For `k = 2` the pool holds every edge; for
/// `k = 3` it holds only the current faces, which keeps the result planar.
pub fn k_tree_instance(n: usize, k: usize, seed: GenSeed) -> Result<KTree> {
    if !(k == 2 || k == 3) {
        return Err(Error::Infeasible(format!("k must be 2 or 3, got {k}")));
    }
    if n < k + 1 {
        return Err(Error::Infeasible(format!(
            "a {k}-tree needs n >= {}, got {n}",
            k + 1
        )));
    }
    let mut rng = seed.rng();
    let mut edges: Vec<(usize, usize)> = (0..=k)
        .flat_map(|u| (u + 1..=k).map(move |v| (u, v)))
        .collect();
    let mut pool: Vec<Vec<usize>> = match k {
        2 => edges.iter().map(|&(u, v)| vec![u, v]).collect(),
        _ => vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    };
    let mut attachments = Vec::with_capacity(n - k - 1);
    for v in k + 1..n {
        let i = rng.gen_range(0..pool.len());
        let clique = pool[i].clone();
        edges.extend(clique.iter().map(|&c| (c, v)));
        if k == 2 {
            pool.push(vec![clique[0], v]);
            pool.push(vec![clique[1], v]);
        } else {
            let [a, b, c] = [clique[0], clique[1], clique[2]];
            pool[i] = vec![a, b, v];
            pool.push(vec![b, c, v]);
            pool.push(vec![a, c, v]);
        }
        attachments.push(clique);
    }
    Ok(KTree {
        graph: Graph::new(n, edges)?,
        k,
        attachments,
    })
}
