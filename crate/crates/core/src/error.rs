use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Edge),
    #[error("edge {edge:?} has an endpoint outside 0..{n}")]
    VertexOutOfRange { edge: (usize, usize), n: usize },
    #[error("vertex order is not a permutation")]
    NotAPermutation,
    #[error("vertex order has {order} vertices but the graph has {graph}")]
    OrderSize { order: usize, graph: usize },
    #[error("page spec needs at least one page")]
    NoPages,
    #[error("edge {0:?} is not assigned to a page")]
    UnassignedEdge(Edge),
    #[error("edge {edge:?} assigned to page {page}, but only {pages} pages exist")]
    PageOutOfRange {
        edge: Edge,
        page: usize,
        pages: usize,
    },
    #[error("edge sequence is not a permutation of the graph's edges")]
    BadEdgeSequence,
    #[error("graph is not connected")]
    Disconnected,
    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("job {job}: {source}")]
    Job { job: String, source: Box<Error> },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
