//! Delaunay triangulations of random points in the unit square.
//!
//! Triangulation is delegated to `spade`, which inserts points incrementally
//! and evaluates orientation and in-circle tests with exact arithmetic.
//! Cocircular or collinear inputs are therefore resolved consistently by
//! insertion order (vertex id), with no floating-point ambiguity.

use rand::Rng as _;
use spade::{DelaunayTriangulation, Point2, Triangulation};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::GenSeed;

pub type Point = (f64, f64);

/// A Delaunay graph together with its point set and triangles.
#[derive(Clone, Debug)]
pub struct DelaunayInstance {
    pub graph: Graph,
    /// `points[v]` is the position of vertex `v`.
    pub points: Vec<Point>,
    /// Inner faces as vertex triples.
    pub triangles: Vec<[usize; 3]>,
}

pub fn delaunay(n: usize, seed: GenSeed) -> Result<Graph> {
    delaunay_instance(n, seed).map(|d| d.graph)
}

pub fn delaunay_instance(n: usize, seed: GenSeed) -> Result<DelaunayInstance> {
    if n < 3 {
        return Err(Error::Infeasible(format!(
            "Delaunay graph needs n >= 3, got {n}"
        )));
    }
    let mut rng = seed.rng();
    let mut tri: DelaunayTriangulation<Point2<f64>> = DelaunayTriangulation::new();
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let p: Point = (rng.gen(), rng.gen());
        let before = tri.num_vertices();
        tri.insert(Point2::new(p.0, p.1))
            .map_err(|e| Error::Infeasible(format!("point {p:?} rejected: {e:?}")))?;
        // a duplicate position is merged into the existing vertex; draw again
        if tri.num_vertices() > before {
            points.push(p);
        }
    }
    let edges = tri.undirected_edges().map(|e| {
        let [a, b] = e.vertices();
        (a.fix().index(), b.fix().index())
    });
    let graph = Graph::new(n, edges)?;
    let triangles = tri
        .inner_faces()
        .map(|f| f.vertices().map(|v| v.fix().index()))
        .collect();
    Ok(DelaunayInstance {
        graph,
        points,
        triangles,
    })
}
