//! Simple undirected graphs and vertex orders.

use std::fmt;

use crate::error::{Error, Result};

/// An undirected edge stored as `(min, max)`.
pub type Edge = (usize, usize);

/// A simple undirected graph on the vertices `0..n`.
///
/// Edges are kept in canonical form: each edge as `(min, max)` and the list
/// sorted lexicographically. The index of an edge in [`Graph::edges`] is its
/// edge id everywhere else in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { edge: (u, v), n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: canon,
            adjacency,
        })
    }

    /// The graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list; position in this slice is the edge id.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Id of the edge `{u, v}`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Two-coloring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let c = color[v].unwrap();
                for &w in &self.adjacency[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// A linear order of the vertices, stored in both directions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexOrder {
    /// rank -> vertex
    sequence: Vec<usize>,
    /// vertex -> rank
    rank: Vec<usize>,
}

impl VertexOrder {
    /// Builds an order from the vertex sequence (first vertex has rank 0).
    pub fn from_sequence(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut rank = vec![usize::MAX; n];
        for (r, &v) in sequence.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::NotAPermutation);
            }
            rank[v] = r;
        }
        Ok(VertexOrder { sequence, rank })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrder {
            sequence: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn vertex_at(&self, r: usize) -> usize {
        self.sequence[r]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// The edge's endpoint ranks as `(left, right)`.
    pub fn span(&self, (u, v): Edge) -> (usize, usize) {
        let (a, b) = (self.rank[u], self.rank[v]);
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn reversed(&self) -> Self {
        let mut seq = self.sequence.clone();
        seq.reverse();
        VertexOrder::from_sequence(seq).expect("reversal of a permutation")
    }

    pub(crate) fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.len() != g.vertex_count() {
            return Err(Error::OrderSize {
                order: self.len(),
                graph: g.vertex_count(),
            });
        }
        Ok(())
    }
}
