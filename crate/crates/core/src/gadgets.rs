//! Builders for the double-K8 and positioning gadgets and for the
//! fixed-order page augmentations.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexOrder};
use crate::layout::{MixedLayout, PageSpec};

/// Named vertices of a gadget.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GadgetLabels {
    /// The two vertices common to both K8's (of the first double-K8 in the
    /// positioning gadget).
    pub shared: (usize, usize),
    /// The endpoints of the extra edge of a double-K8; in the positioning
    /// gadget, the outer vertices `w1`, `w2` joined to the anchor.
    pub outer: (usize, usize),
    pub anchor: Option<usize>,
    /// `[x1, x2, y1, y2, w1, w2]`.
    pub connectors: Option<[usize; 6]>,
}

impl GadgetLabels {
    /// All labeled vertices.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = vec![self.shared.0, self.shared.1, self.outer.0, self.outer.1];
        v.extend(self.anchor);
        v.extend(self.connectors.iter().flatten());
        v
    }
}

/// Edges of a clique on `vertices`.
fn clique(vertices: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    vertices
        .iter()
        .enumerate()
        .flat_map(move |(i, &a)| vertices[i + 1..].iter().map(move |&b| (a, b)))
}

const DOUBLE_K8_VERTICES: usize = 14;

/// Two K8's on `{0..7}` and `{6..13}` sharing `u = 6`, `v = 7`, plus the
/// edge between the outer vertices `w = 0` and `z = 13`.
pub fn double_k8() -> (Graph, GadgetLabels) {
    (double_k8_graph(0), double_k8_labels(0))
}

fn double_k8_edges(offset: usize) -> impl Iterator<Item = (usize, usize)> {
    let left: Vec<usize> = (0..8).collect();
    let right: Vec<usize> = (6..14).collect();
    let edges: Vec<_> = clique(&left)
        .chain(clique(&right).filter(|&e| e != (6, 7)))
        .chain([(0, 13)])
        .collect();
    edges
        .into_iter()
        .map(move |(a, b)| (a + offset, b + offset))
}

fn double_k8_graph(offset: usize) -> Graph {
    Graph::new(offset + DOUBLE_K8_VERTICES, double_k8_edges(offset)).expect("double-K8 is simple")
}

fn double_k8_labels(offset: usize) -> GadgetLabels {
    GadgetLabels {
        shared: (offset + 6, offset + 7),
        outer: (offset, offset + 13),
        ..Default::default()
    }
}

/// Pages of a conflict-free (2, 1) layout of [`double_k8`] on the identity
/// order, by edge id. Queue edges have page 2.
const DOUBLE_K8_PAGES: [usize; 56] = [
    0, 2, 2, 2, 1, 1, 0, 0, 0, 0, 2, 1, 0, 0, 0, 2, 1, 2, 2, 0, 1, 0, 2, 0, 0, 2, 0, 2, //
    0, 2, 2, 2, 1, 1, 1, 0, 0, 2, 1, 0, 0, 0, 2, 1, 2, 2, 0, 1, 0, 2, 0, 0, 2, 0, 2, 0,
];

/// A (2, 1) layout of [`double_k8`]: `w`, the rest of the first K8, `u`,
/// `v`, the rest of the second K8, `z`, i.e. the identity order.
pub fn double_k8_witness() -> MixedLayout {
    let (g, _) = double_k8();
    let spec = PageSpec {
        stacks: 2,
        queues: 1,
    };
    MixedLayout::new(
        &g,
        VertexOrder::identity(DOUBLE_K8_VERTICES),
        spec,
        DOUBLE_K8_PAGES.to_vec(),
    )
    .expect("witness matches the graph")
}

const POSITIONING_VERTICES: usize = 2 * DOUBLE_K8_VERTICES + 1;
const ANCHOR: usize = 2 * DOUBLE_K8_VERTICES;
// x1, x2 in w1's K8 and y1, y2 in w2's K8; w1 = 0 and w2 = 14 are the outer
// vertices of the two copies that the anchor is joined to
const CONNECTORS: [usize; 6] = [2, 1, 15, 16, 0, 14];

/// Two double-K8's (ids `0..14` and `14..28`) and the anchor `28`, with
/// edges `x1y1`, `x2y2`, `w1u`, `w2u`.
pub fn positioning_gadget() -> (Graph, GadgetLabels) {
    let [x1, x2, y1, y2, w1, w2] = CONNECTORS;
    let edges = double_k8_edges(0)
        .chain(double_k8_edges(DOUBLE_K8_VERTICES))
        .chain([(x1, y1), (x2, y2), (w1, ANCHOR), (w2, ANCHOR)]);
    let g = Graph::new(POSITIONING_VERTICES, edges).expect("gadget is simple");
    let labels = GadgetLabels {
        shared: (6, 7),
        outer: (w1, w2),
        anchor: Some(ANCHOR),
        connectors: Some(CONNECTORS),
    };
    (g, labels)
}

/// Order of the positioning gadget: the first double-K8 reversed (ending
/// `x1 x2 w1`), then the anchor, then the second double-K8 (starting
/// `w2 y1 y2`), with `between` inserted right after the anchor.
fn positioning_order(between: &[usize]) -> Vec<usize> {
    let mut seq: Vec<usize> = (0..DOUBLE_K8_VERTICES).rev().collect();
    seq.push(ANCHOR);
    seq.extend_from_slice(between);
    seq.extend(DOUBLE_K8_VERTICES..2 * DOUBLE_K8_VERTICES);
    seq
}

/// Pages for the gadget edges of `g` (which contains the positioning gadget
/// on its first 29 vertices): both copies as in [`double_k8_witness`],
/// `x1y1`, `x2y2` on the queue and the anchor edges on the first stack.
fn positioning_pages(g: &Graph, pages: &mut [usize]) {
    let (k8, _) = double_k8();
    for copy in 0..2 {
        let offset = copy * DOUBLE_K8_VERTICES;
        for (e, &(a, b)) in k8.edges().iter().enumerate() {
            pages[g.edge_id(a + offset, b + offset).unwrap()] = DOUBLE_K8_PAGES[e];
        }
    }
    let [x1, x2, y1, y2, w1, w2] = CONNECTORS;
    pages[g.edge_id(x1, y1).unwrap()] = 2;
    pages[g.edge_id(x2, y2).unwrap()] = 2;
    pages[g.edge_id(w1, ANCHOR).unwrap()] = 0;
    pages[g.edge_id(w2, ANCHOR).unwrap()] = 0;
}

/// A (2, 1) layout of [`positioning_gadget`] with `w1 < u < w2`.
pub fn positioning_witness() -> MixedLayout {
    let (g, _) = positioning_gadget();
    let mut pages = vec![0; g.edge_count()];
    positioning_pages(&g, &mut pages);
    let order = VertexOrder::from_sequence(positioning_order(&[])).unwrap();
    MixedLayout::new(
        &g,
        order,
        PageSpec {
            stacks: 2,
            queues: 1,
        },
        pages,
    )
    .expect("witness matches the graph")
}

/// The positioning gadget with its anchor identified with vertex 0 of `g`;
/// vertex `i > 0` of `g` becomes `28 + i`. The result has a (2, 1) layout
/// iff `g` has a two-stack layout.
pub fn reduce_subhamiltonian(g: &Graph) -> Graph {
    let n = g.vertex_count().max(1);
    let map = |v: usize| if v == 0 { ANCHOR } else { ANCHOR + v };
    let (gadget, _) = positioning_gadget();
    let edges = gadget
        .edges()
        .iter()
        .copied()
        .chain(g.edges().iter().map(|&(a, b)| (map(a), map(b))));
    Graph::new(POSITIONING_VERTICES + n - 1, edges).expect("disjoint union is simple")
}

/// Lifts a two-stack layout of `g` to a (2, 1) layout of
/// [`reduce_subhamiltonian`]`(g)`. The stack order is rotated so that vertex
/// 0 comes first and placed between `w1` and `w2`, where every edge of `g`
/// is nested by the queue edges `x1y1` and `x2y2`.
pub fn reduction_witness(g: &Graph, layout: &MixedLayout) -> Result<MixedLayout> {
    layout.check(g)?;
    if layout.spec.queues > 0 || layout.spec.stacks > 2 {
        return Err(Error::Infeasible(
            "expected a layout on at most two stacks".into(),
        ));
    }
    let reduced = reduce_subhamiltonian(g);
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Infeasible("empty graph has no vertex 0".into()));
    }
    // crossings on a stack depend only on the cyclic order
    let start = layout.order.rank(0);
    let rotated: Vec<usize> = (1..n)
        .map(|i| layout.order.vertex_at((start + i) % n))
        .collect();
    let between: Vec<usize> = rotated.iter().map(|&v| ANCHOR + v).collect();
    let order = VertexOrder::from_sequence(positioning_order(&between))?;
    let mut pages = vec![0; reduced.edge_count()];
    positioning_pages(&reduced, &mut pages);
    let map = |v: usize| if v == 0 { ANCHOR } else { ANCHOR + v };
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        pages[reduced.edge_id(map(a), map(b)).unwrap()] = layout.pages[e];
    }
    MixedLayout::new(
        &reduced,
        order,
        PageSpec {
            stacks: 2,
            queues: 1,
        },
        pages,
    )
}

/// Adds `s + 1` pairwise crossing edges, each nesting every edge of `g`:
/// new vertices `L_1..L_{s+1}` precede the order and `R_1..R_{s+1}` follow
/// it, with edges `L_i R_i`. New ids start at `n`.
pub fn augment_queue_page(
    g: &Graph,
    order: &VertexOrder,
    spec: PageSpec,
) -> Result<(Graph, VertexOrder)> {
    order.check_covers(g)?;
    let n = g.vertex_count();
    let k = spec.stacks + 1;
    let left: Vec<usize> = (n..n + k).collect();
    let right: Vec<usize> = (n + k..n + 2 * k).collect();
    let edges = g
        .edges()
        .iter()
        .copied()
        .chain(left.iter().zip(&right).map(|(&a, &b)| (a, b)));
    let graph = Graph::new(n + 2 * k, edges)?;
    let seq: Vec<usize> = left
        .iter()
        .chain(order.sequence())
        .chain(&right)
        .copied()
        .collect();
    Ok((graph, VertexOrder::from_sequence(seq)?))
}

/// New vertices added by [`augment_stack_page`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackAugmentation {
    pub graph: Graph,
    pub order: VertexOrder,
    /// Center of the star.
    pub center: usize,
    /// Star edges, by edge id in `graph`.
    pub star_edges: Vec<usize>,
    /// Edges of the nested matchings `M_1..M_q`, innermost first.
    pub nested_matchings: Vec<Vec<usize>>,
    /// Edges of the final matching `M`.
    pub matching: Vec<usize>,
}

/// Adds a star whose center precedes the order and whose leaves sit between
/// consecutive vertices, `q` nested matchings of `s + 2` pairwise crossing
/// edges between the center and the original vertices, and a matching of `s`
/// pairwise crossing edges from before the center to just before the
/// original vertices. New ids start at `n`.
pub fn augment_stack_page(
    g: &Graph,
    order: &VertexOrder,
    spec: PageSpec,
) -> Result<StackAugmentation> {
    order.check_covers(g)?;
    let n = g.vertex_count();
    let (s, q) = (spec.stacks, spec.queues);
    let mut next = n;
    let mut fresh = |count: usize| {
        let ids: Vec<usize> = (next..next + count).collect();
        next += count;
        ids
    };
    let m_left = fresh(s);
    let center = fresh(1)[0];
    let width = s + 2;
    let blocks: Vec<(Vec<usize>, Vec<usize>)> =
        (0..q).map(|_| (fresh(width), fresh(width))).collect();
    let m_right = fresh(s);
    let leaves = fresh(n.saturating_sub(1));

    let mut seq = m_left.clone();
    seq.push(center);
    // M_q outermost
    for (l, _) in blocks.iter().rev() {
        seq.extend(l);
    }
    for (_, r) in &blocks {
        seq.extend(r);
    }
    seq.extend(&m_right);
    for (i, &v) in order.sequence().iter().enumerate() {
        seq.push(v);
        if i + 1 < n {
            seq.push(leaves[i]);
        }
    }

    let star: Vec<(usize, usize)> = leaves.iter().map(|&z| (center, z)).collect();
    let nested: Vec<Vec<(usize, usize)>> = blocks
        .iter()
        .map(|(l, r)| l.iter().zip(r).map(|(&a, &b)| (a, b)).collect())
        .collect();
    let matching: Vec<(usize, usize)> =
        m_left.iter().zip(&m_right).map(|(&a, &b)| (a, b)).collect();
    let graph = Graph::new(
        next,
        g.edges()
            .iter()
            .copied()
            .chain(star.iter().copied())
            .chain(nested.iter().flatten().copied())
            .chain(matching.iter().copied()),
    )?;
    let ids = |edges: &[(usize, usize)]| -> Vec<usize> {
        edges
            .iter()
            .map(|&(a, b)| graph.edge_id(a, b).unwrap())
            .collect()
    };
    Ok(StackAugmentation {
        order: VertexOrder::from_sequence(seq)?,
        center,
        star_edges: ids(&star),
        nested_matchings: nested.iter().map(|m| ids(m)).collect(),
        matching: ids(&matching),
        graph,
    })
}
