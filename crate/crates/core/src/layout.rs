//! Page specifications and mixed stack/queue layouts.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexOrder};

/// Kind of a page: edges on a stack page must not cross, edges on a queue
/// page must not nest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PageKind {
    Stack,
    Queue,
}

/// Number of stack and queue pages. Page ids `0..stacks` are stack pages and
/// `stacks..stacks + queues` are queue pages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PageSpec {
    pub stacks: usize,
    pub queues: usize,
}

impl PageSpec {
    pub fn new(stacks: usize, queues: usize) -> Result<Self> {
        if stacks + queues == 0 {
            return Err(Error::NoPages);
        }
        Ok(PageSpec { stacks, queues })
    }

    /// One stack page and one queue page.
    pub const ONE_ONE: PageSpec = PageSpec {
        stacks: 1,
        queues: 1,
    };

    pub fn pages(&self) -> usize {
        self.stacks + self.queues
    }

    pub fn kind(&self, page: usize) -> PageKind {
        if page < self.stacks {
            PageKind::Stack
        } else {
            PageKind::Queue
        }
    }

    pub fn stack_pages(&self) -> std::ops::Range<usize> {
        0..self.stacks
    }

    pub fn queue_pages(&self) -> std::ops::Range<usize> {
        self.stacks..self.stacks + self.queues
    }
}

/// A vertex order together with a page for every edge (indexed by edge id).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedLayout {
    pub order: VertexOrder,
    pub spec: PageSpec,
    pub pages: Vec<usize>,
}

impl MixedLayout {
    /// Checks that `pages` assigns every edge of `g` to an existing page.
    pub fn new(g: &Graph, order: VertexOrder, spec: PageSpec, pages: Vec<usize>) -> Result<Self> {
        let layout = MixedLayout { order, spec, pages };
        layout.check(g)?;
        Ok(layout)
    }

    pub fn page_of(&self, edge: usize) -> usize {
        self.pages[edge]
    }

    /// Edge ids on `page`, in edge-id order.
    pub fn page_edges(&self, page: usize) -> impl Iterator<Item = usize> + '_ {
        self.pages
            .iter()
            .enumerate()
            .filter(move |&(_, &p)| p == page)
            .map(|(e, _)| e)
    }

    pub(crate) fn check(&self, g: &Graph) -> Result<()> {
        self.order.check_covers(g)?;
        if self.pages.len() < g.edge_count() {
            return Err(Error::UnassignedEdge(g.edges()[self.pages.len()]));
        }
        if self.pages.len() > g.edge_count() {
            return Err(Error::BadEdgeSequence);
        }
        for (e, &p) in self.pages.iter().enumerate() {
            if p >= self.spec.pages() {
                return Err(Error::PageOutOfRange {
                    edge: g.edges()[e],
                    page: p,
                    pages: self.spec.pages(),
                });
            }
        }
        Ok(())
    }
}

/// Conflict counts of a layout.
#[derive(Clone, Debug, PartialEq)]
pub struct ConflictReport {
    pub crossings_per_stack_page: Vec<u64>,
    pub nestings_per_queue_page: Vec<u64>,
    pub total: u64,
    pub edges: usize,
}

impl ConflictReport {
    /// Conflicts divided by the number of edges (0 for edgeless graphs).
    pub fn per_edge(&self) -> f64 {
        if self.edges == 0 {
            0.0
        } else {
            self.total as f64 / self.edges as f64
        }
    }
}
