//! Maximal planar bipartite graphs grown on a two-stack layout.
//!
//! A random order alternating between the two color classes is drawn and
//! its Hamiltonian path is inserted first. Random cross-class pairs are then
//! accepted whenever the edge fits without crossings onto one of two stack
//! pages over that fixed order, until `2n - 4` edges exist.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::conflict::spans_cross;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexOrder};
use crate::layout::{MixedLayout, PageSpec};
use crate::rng::GenSeed;

/// Consecutive rejected samples (per vertex) before switching to a full scan.
pub const REJECTIONS_PER_VERTEX: usize = 50;

/// A generated graph with the order and two-stack assignment it was built on.
#[derive(Clone, Debug)]
pub struct BipartiteInstance {
    pub graph: Graph,
    /// Color class of every vertex.
    pub side: Vec<bool>,
    /// Conflict-free `(2, 0)` layout on the generation order.
    pub witness: MixedLayout,
    /// Number of times the construction restarted with a fresh order.
    pub restarts: usize,
}

struct Growth {
    n: usize,
    order: Vec<usize>,
    adjacent: Vec<bool>,
    /// spans per page, in rank coordinates
    pages: [Vec<(usize, usize)>; 2],
    edges: Vec<((usize, usize), usize)>,
}

impl Growth {
    fn new(order: Vec<usize>) -> Self {
        let n = order.len();
        let mut g = Growth {
            n,
            order,
            adjacent: vec![false; n * n],
            pages: [Vec::new(), Vec::new()],
            edges: Vec::new(),
        };
        for r in 0..n - 1 {
            g.insert((r, r + 1), 0);
        }
        g
    }

    fn insert(&mut self, span: (usize, usize), page: usize) {
        self.adjacent[span.0 * self.n + span.1] = true;
        self.pages[page].push(span);
        self.edges.push((span, page));
    }

    /// Page on which the span (in ranks, `l < r`) fits, lowest first.
    fn fitting_page(&self, span: (usize, usize)) -> Option<usize> {
        if self.adjacent[span.0 * self.n + span.1] {
            return None;
        }
        (0..2).find(|&p| self.pages[p].iter().all(|&s| !spans_cross(s, span)))
    }

    fn try_insert(&mut self, span: (usize, usize)) -> bool {
        match self.fitting_page(span) {
            Some(p) => {
                self.insert(span, p);
                true
            }
            None => false,
        }
    }
}

/// Rank pair in increasing order.
fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

pub fn max_planar_bipartite(n: usize, seed: GenSeed) -> Result<BipartiteInstance> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Infeasible(format!(
            "maximal planar bipartite generator needs an even n >= 4, got {n}"
        )));
    }
    let target = 2 * n - 4;
    let half = n / 2;
    let mut rng = seed.rng();
    let mut restarts = 0;
    loop {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut growth = Growth::new(order);
        let mut rejected = 0;
        while growth.edges.len() < target {
            // even ranks form one class, odd ranks the other
            let a = 2 * rng.gen_range(0..half);
            let b = 2 * rng.gen_range(0..half) + 1;
            if growth.try_insert(ordered(a, b)) {
                rejected = 0;
                continue;
            }
            rejected += 1;
            if rejected < REJECTIONS_PER_VERTEX * n {
                continue;
            }
            let mut candidates: Vec<(usize, usize)> = (0..half)
                .flat_map(|i| (0..half).map(move |j| ordered(2 * i, 2 * j + 1)))
                .collect();
            candidates.shuffle(&mut rng);
            match candidates
                .into_iter()
                .find(|&s| growth.fitting_page(s).is_some())
            {
                Some(span) => {
                    growth.try_insert(span);
                    rejected = 0;
                }
                None => break,
            }
        }
        if growth.edges.len() < target {
            restarts += 1;
            continue;
        }
        return Ok(finish(growth, restarts));
    }
}

fn finish(growth: Growth, restarts: usize) -> BipartiteInstance {
    let Growth { order, edges, .. } = growth;
    let n = order.len();
    let graph = Graph::new(n, edges.iter().map(|&((a, b), _)| (order[a], order[b])))
        .expect("generated edges are simple");
    let mut pages = vec![0; graph.edge_count()];
    for &((a, b), page) in &edges {
        pages[graph.edge_id(order[a], order[b]).unwrap()] = page;
    }
    let mut side = vec![false; n];
    for (r, &v) in order.iter().enumerate() {
        side[v] = r % 2 == 1;
    }
    let order = VertexOrder::from_sequence(order).unwrap();
    let spec = PageSpec {
        stacks: 2,
        queues: 0,
    };
    let witness = MixedLayout::new(&graph, order, spec, pages).unwrap();
    BipartiteInstance {
        graph,
        side,
        witness,
        restarts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::is_valid_layout;

    #[test]
    fn four_vertices_give_a_four_cycle() {
        let b = max_planar_bipartite(4, GenSeed(0)).unwrap();
        assert_eq!(b.graph.edge_count(), 4);
        assert!((0..4).all(|v| b.graph.degree(v) == 2));
    }

    #[test]
    fn class_invariants() {
        for s in 0..40 {
            let n = 4 + 2 * (s as usize % 20);
            let b = max_planar_bipartite(n, GenSeed(s)).unwrap();
            let g = &b.graph;
            assert_eq!(g.edge_count(), 2 * n - 4);
            assert!(g.is_connected());
            assert!(g.bipartition().is_some());
            assert!(g.edges().iter().all(|&(u, v)| b.side[u] != b.side[v]));
            assert!(is_valid_layout(g, &b.witness));
        }
    }

    #[test]
    fn rejects_odd_or_small() {
        assert!(max_planar_bipartite(5, GenSeed(0)).is_err());
        assert!(max_planar_bipartite(2, GenSeed(0)).is_err());
    }

    #[test]
    fn deterministic() {
        let a = max_planar_bipartite(30, GenSeed(9)).unwrap();
        let b = max_planar_bipartite(30, GenSeed(9)).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.witness, b.witness);
    }
}
