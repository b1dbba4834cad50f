//! Vertex-order heuristics run before page assignment.
//!
//! Tie-breaking is fixed so that every heuristic is a deterministic function
//! of the graph and the seed:
//!
//! * `rbfs`: breadth-first search from a uniformly random start; neighbors are
//!   enqueued by ascending degree, then id.
//! * `avsdf`: depth-first search with an explicit stack from a minimum-degree
//!   vertex (lowest id); the smallest-degree unvisited neighbor is expanded first.
//! * `con_greedy`: places the vertex with the most placed neighbors (then
//!   higher degree, then lower id) into the slot of the partial order that
//!   creates the fewest crossings with already placed edges, all edges being
//!   treated as one stack page. The first vertex is a random maximum-degree one.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexOrder};
use crate::rng::GenSeed;

/// Uniformly random permutation.
pub fn random_order(g: &Graph, seed: GenSeed) -> VertexOrder {
    let mut seq: Vec<usize> = (0..g.vertex_count()).collect();
    seq.shuffle(&mut seed.rng());
    VertexOrder::from_sequence(seq).unwrap()
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

fn by_degree(g: &Graph, v: usize) -> Vec<usize> {
    let mut nb = g.neighbors(v).to_vec();
    nb.sort_by_key(|&w| (g.degree(w), w));
    nb
}

pub fn rbfs(g: &Graph, seed: GenSeed) -> Result<VertexOrder> {
    require_connected(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(VertexOrder::identity(0));
    }
    let start = *(0..n).collect::<Vec<_>>().choose(&mut seed.rng()).unwrap();
    Ok(bfs_from(g, start))
}

pub(crate) fn bfs_from(g: &Graph, start: usize) -> VertexOrder {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        seq.push(v);
        for w in by_degree(g, v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    VertexOrder::from_sequence(seq).unwrap()
}

/// Adjacent-vertex-smallest-degree-first DFS. The seed is unused; the
/// signature matches the other heuristics.
pub fn avsdf(g: &Graph, _seed: GenSeed) -> Result<VertexOrder> {
    require_connected(g)?;
    let n = g.vertex_count();
    let Some(start) = (0..n).min_by_key(|&v| (g.degree(v), v)) else {
        return Ok(VertexOrder::identity(0));
    };
    let mut visited = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        seq.push(v);
        // reversed so the smallest (degree, id) ends on top
        for w in by_degree(g, v).into_iter().rev() {
            if !visited[w] {
                stack.push(w);
            }
        }
    }
    Ok(VertexOrder::from_sequence(seq).unwrap())
}

pub fn con_greedy(g: &Graph, seed: GenSeed) -> Result<VertexOrder> {
    require_connected(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(VertexOrder::identity(0));
    }
    let max_deg = (0..n).map(|v| g.degree(v)).max().unwrap();
    let top: Vec<usize> = (0..n).filter(|&v| g.degree(v) == max_deg).collect();
    let first = *top.choose(&mut seed.rng()).unwrap();

    let mut seq = vec![first];
    let mut pos = vec![usize::MAX; n];
    pos[first] = 0;
    let mut placed_neighbors = vec![0usize; n];
    for &w in g.neighbors(first) {
        placed_neighbors[w] += 1;
    }
    // realized edges as vertex pairs; positions are looked up on demand
    let mut realized: Vec<(usize, usize)> = Vec::new();

    for _ in 1..n {
        let v = (0..n)
            .filter(|&v| pos[v] == usize::MAX)
            .max_by_key(|&v| (placed_neighbors[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let anchors: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] != usize::MAX)
            .collect();
        let slot = cheapest_slot(seq.len(), &pos, &anchors, &realized);
        seq.insert(slot, v);
        for (r, &u) in seq.iter().enumerate().skip(slot) {
            pos[u] = r;
        }
        for &w in &anchors {
            realized.push((v, w));
        }
        for &w in g.neighbors(v) {
            placed_neighbors[w] += 1;
        }
    }
    Ok(VertexOrder::from_sequence(seq).unwrap())
}

/// Slot in `0..=len` minimizing crossings of the new vertex's edges to
/// `anchors` with the `realized` edges; ties go to the lowest slot.
///
/// Slot `p` puts the new vertex between positions `p - 1` and `p`. For a new
/// edge to anchor position `y` and an existing edge `(a, b)` not touching the
/// anchor, the crossing indicator is constant on slot ranges:
/// `[a + 1, b]` if `y` is outside `(a, b)`, else `[0, a] ∪ [b + 1, len]`.
fn cheapest_slot(
    len: usize,
    pos: &[usize],
    anchors: &[usize],
    realized: &[(usize, usize)],
) -> usize {
    let mut diff = vec![0i64; len + 2];
    let mut add = |lo: usize, hi: usize| {
        if lo <= hi {
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        }
    };
    for &w in anchors {
        let y = pos[w];
        for &(s, t) in realized {
            if s == w || t == w {
                continue;
            }
            let (a, b) = (pos[s].min(pos[t]), pos[s].max(pos[t]));
            if y < a || y > b {
                add(a + 1, b);
            } else {
                add(0, a);
                add(b + 1, len);
            }
        }
    }
    let mut best = (i64::MAX, 0);
    let mut cost = 0;
    for (p, d) in diff.iter().enumerate().take(len + 1) {
        cost += d;
        if cost < best.0 {
            best = (cost, p);
        }
    }
    best.1
}

/// The vertex-order heuristics by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderHeuristic {
    Identity,
    Random,
    Rbfs,
    Avsdf,
    ConGreedy,
}

impl OrderHeuristic {
    pub fn run(self, g: &Graph, seed: GenSeed) -> Result<VertexOrder> {
        match self {
            OrderHeuristic::Identity => Ok(VertexOrder::identity(g.vertex_count())),
            OrderHeuristic::Random => Ok(random_order(g, seed)),
            OrderHeuristic::Rbfs => rbfs(g, seed),
            OrderHeuristic::Avsdf => avsdf(g, seed),
            OrderHeuristic::ConGreedy => con_greedy(g, seed),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderHeuristic::Identity => "identity",
            OrderHeuristic::Random => "random",
            OrderHeuristic::Rbfs => "rbfs",
            OrderHeuristic::Avsdf => "avsdf",
            OrderHeuristic::ConGreedy => "congreedy",
        }
    }
}

impl fmt::Display for OrderHeuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderHeuristic {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "identity" => Ok(OrderHeuristic::Identity),
            "random" => Ok(OrderHeuristic::Random),
            "rbfs" => Ok(OrderHeuristic::Rbfs),
            "avsdf" => Ok(OrderHeuristic::Avsdf),
            "congreedy" | "con-greedy" => Ok(OrderHeuristic::ConGreedy),
            _ => Err(format!("unknown order heuristic {s:?}")),
        }
    }
}
