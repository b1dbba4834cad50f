//! Mixed stack/queue linear graph layouts.

pub mod assign;
pub mod conflict;
pub mod error;
pub mod exact;
pub mod gadgets;
pub mod gen;
pub mod graph;
pub mod io;
pub mod lab;
pub mod layout;
pub mod order;
pub mod rng;

pub use conflict::{
    count_conflicts, crosses, is_valid_layout, nests, validate_queue_page, validate_stack_page,
};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexOrder};
pub use layout::{ConflictReport, MixedLayout, PageKind, PageSpec};
pub use rng::GenSeed;
