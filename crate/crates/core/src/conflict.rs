//! Crossing and nesting predicates, pairwise conflict counting and the
//! linear-time stack/queue page validators.

use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{Edge, Graph, VertexOrder};
use crate::layout::{ConflictReport, MixedLayout, PageKind};

/// Whether two edges with endpoint ranks `a` and `b` (each `(left, right)`)
/// interleave strictly.
#[inline]
pub fn spans_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    let (first, second) = if a.0 < b.0 { (a, b) } else { (b, a) };
    first.0 < second.0 && second.0 < first.1 && first.1 < second.1
}

/// Whether one span strictly encloses the other.
#[inline]
pub fn spans_nest(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.1 < a.1) || (b.0 < a.0 && a.1 < b.1)
}

#[inline]
pub(crate) fn spans_conflict(kind: PageKind, a: (usize, usize), b: (usize, usize)) -> bool {
    match kind {
        PageKind::Stack => spans_cross(a, b),
        PageKind::Queue => spans_nest(a, b),
    }
}

pub fn crosses(e1: Edge, e2: Edge, order: &VertexOrder) -> bool {
    spans_cross(order.span(e1), order.span(e2))
}

pub fn nests(e1: Edge, e2: Edge, order: &VertexOrder) -> bool {
    spans_nest(order.span(e1), order.span(e2))
}

/// Pairwise O(m²) conflict count of a layout.
pub fn count_conflicts(g: &Graph, layout: &MixedLayout) -> Result<ConflictReport> {
    layout.check(g)?;
    let spec = layout.spec;
    let spans: Vec<_> = g.edges().iter().map(|&e| layout.order.span(e)).collect();
    let mut per_page: Vec<u64> = (0..spec.pages())
        .map(|page| {
            let kind = spec.kind(page);
            let members: Vec<_> = layout.page_edges(page).map(|e| spans[e]).collect();
            let mut count = 0;
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    if spans_conflict(kind, a, b) {
                        count += 1;
                    }
                }
            }
            count
        })
        .collect();
    let total = per_page.iter().sum();
    let nestings = per_page.split_off(spec.stacks);
    Ok(ConflictReport {
        crossings_per_stack_page: per_page,
        nestings_per_queue_page: nestings,
        total,
        edges: g.edge_count(),
    })
}

/// Spans sorted by left endpoint with the per-vertex closing lists, shared by
/// both validators.
fn sweep_events(edges: &[Edge], order: &VertexOrder) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let spans: Vec<_> = edges.iter().map(|&e| order.span(e)).collect();
    let mut closing = vec![Vec::new(); order.len()];
    for (i, &(_, r)) in spans.iter().enumerate() {
        closing[r].push(i);
    }
    (spans, closing)
}

/// True iff no two of `edges` cross under `order`.
///
/// Sweeps the vertices left to right: edges are pushed at their left endpoint
/// (longer first when they share it) and must be on top of the stack when
/// their right endpoint is reached.
pub fn validate_stack_page(edges: &[Edge], order: &VertexOrder) -> bool {
    let (spans, mut closing) = sweep_events(edges, order);
    let mut opening = vec![Vec::new(); order.len()];
    for (i, &(l, _)) in spans.iter().enumerate() {
        opening[l].push(i);
    }
    let mut stack: Vec<usize> = Vec::new();
    for r in 0..order.len() {
        // innermost (largest left rank) closes first
        closing[r].sort_unstable_by_key(|&i| std::cmp::Reverse(spans[i].0));
        for &i in &closing[r] {
            if stack.pop() != Some(i) {
                return false;
            }
        }
        opening[r].sort_unstable_by_key(|&i| std::cmp::Reverse(spans[i].1));
        stack.extend(&opening[r]);
    }
    true
}

/// True iff no edge of `edges` nests another under `order`.
///
/// Same sweep with a FIFO queue: shorter edges are enqueued first and every
/// edge must be at the front when its right endpoint is reached.
pub fn validate_queue_page(edges: &[Edge], order: &VertexOrder) -> bool {
    let (spans, mut closing) = sweep_events(edges, order);
    let mut opening = vec![Vec::new(); order.len()];
    for (i, &(l, _)) in spans.iter().enumerate() {
        opening[l].push(i);
    }
    let mut queue: VecDeque<usize> = VecDeque::new();
    for r in 0..order.len() {
        closing[r].sort_unstable_by_key(|&i| spans[i].0);
        for &i in &closing[r] {
            if queue.pop_front() != Some(i) {
                return false;
            }
        }
        opening[r].sort_unstable_by_key(|&i| spans[i].1);
        queue.extend(&opening[r]);
    }
    true
}

/// True iff every page of the layout is conflict-free.
pub fn is_valid_layout(g: &Graph, layout: &MixedLayout) -> bool {
    if layout.check(g).is_err() {
        return false;
    }
    (0..layout.spec.pages()).all(|page| {
        let edges: Vec<Edge> = layout.page_edges(page).map(|e| g.edges()[e]).collect();
        match layout.spec.kind(page) {
            PageKind::Stack => validate_stack_page(&edges, &layout.order),
            PageKind::Queue => validate_queue_page(&edges, &layout.order),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::PageSpec;

    fn k4() -> Graph {
        Graph::new(4, (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v)))).unwrap()
    }

    /// Truth table over the relative orders of four distinct ranks: the pair
    /// crosses iff exactly one endpoint of the second edge lies inside the first.
    fn crossing_by_inside_count(a: (usize, usize), b: (usize, usize)) -> bool {
        let inside = |x: usize| a.0 < x && x < a.1;
        let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
        !shared && (inside(b.0) != inside(b.1))
    }

    fn nesting_by_inside_count(a: (usize, usize), b: (usize, usize)) -> bool {
        let inside_a = |x: usize| a.0 < x && x < a.1;
        let inside_b = |x: usize| b.0 < x && x < b.1;
        let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
        !shared && ((inside_a(b.0) && inside_a(b.1)) || (inside_b(a.0) && inside_b(a.1)))
    }

    #[test]
    fn predicate_examples() {
        let id = VertexOrder::identity(4);
        assert!(crosses((0, 2), (1, 3), &id));
        assert!(!crosses((0, 3), (0, 2), &id));
        assert!(!crosses((0, 3), (1, 2), &id));
        assert!(nests((0, 3), (1, 2), &id));
        assert!(nests((1, 2), (0, 3), &id));
        assert!(!nests((0, 2), (1, 3), &id));
        assert!(!nests((0, 2), (0, 1), &id));
    }

    #[test]
    fn predicates_match_truth_table_on_all_orders_of_six() {
        let n = 6;
        let pairs: Vec<Edge> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut orders = Vec::new();
        permute(&mut perm, 0, &mut orders);
        assert_eq!(orders.len(), 720);
        for seq in orders {
            let o = VertexOrder::from_sequence(seq).unwrap();
            for &e in &pairs {
                for &f in &pairs {
                    let (a, b) = (o.span(e), o.span(f));
                    let c = crosses(e, f, &o);
                    let m = nests(e, f, &o);
                    assert_eq!(c, crossing_by_inside_count(a, b));
                    assert_eq!(m, nesting_by_inside_count(a, b));
                    assert!(!(c && m));
                    assert_eq!(c, crosses(f, e, &o));
                    assert_eq!(m, nests(f, e, &o));
                }
            }
        }
    }

    fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == v.len() {
            out.push(v.clone());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, out);
            v.swap(k, i);
        }
    }

    #[test]
    fn k4_single_page_counts() {
        let g = k4();
        let id = VertexOrder::identity(4);
        let stack =
            MixedLayout::new(&g, id.clone(), PageSpec::new(1, 0).unwrap(), vec![0; 6]).unwrap();
        let r = count_conflicts(&g, &stack).unwrap();
        assert_eq!(r.total, 1);
        assert_eq!(r.crossings_per_stack_page, vec![1]);
        let queue = MixedLayout::new(&g, id, PageSpec::new(0, 1).unwrap(), vec![0; 6]).unwrap();
        let r = count_conflicts(&g, &queue).unwrap();
        assert_eq!(r.total, 1);
        assert_eq!(r.nestings_per_queue_page, vec![1]);
        assert!((r.per_edge() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn one_edge_per_page_is_conflict_free() {
        let g = k4();
        let spec = PageSpec::new(3, 3).unwrap();
        let l = MixedLayout::new(&g, VertexOrder::identity(4), spec, (0..6).collect()).unwrap();
        assert_eq!(count_conflicts(&g, &l).unwrap().total, 0);
        assert!(is_valid_layout(&g, &l));
    }

    #[test]
    fn count_requires_full_assignment() {
        let g = k4();
        let l = MixedLayout {
            order: VertexOrder::identity(4),
            spec: PageSpec::ONE_ONE,
            pages: vec![0; 5],
        };
        assert!(count_conflicts(&g, &l).is_err());
        assert!(!is_valid_layout(&g, &l));
    }

    #[test]
    fn validator_examples() {
        let id = VertexOrder::identity(4);
        assert!(validate_stack_page(
            &[(0, 1), (1, 2), (2, 3), (0, 2), (0, 3)],
            &id
        ));
        assert!(!validate_stack_page(&[(0, 2), (1, 3)], &id));
        assert!(validate_stack_page(&[], &id));
        assert!(validate_queue_page(&[(0, 2), (1, 3)], &id));
        assert!(!validate_queue_page(&[(0, 3), (1, 2)], &id));
        assert!(validate_queue_page(&[(0, 1), (0, 2), (0, 3)], &id));
        assert!(validate_queue_page(&[], &id));
    }

    #[test]
    fn validators_with_shared_closing_vertex() {
        let id = VertexOrder::identity(5);
        // three edges ending at 4, nested; fine on a stack, not on a queue
        assert!(validate_stack_page(&[(0, 4), (1, 4), (2, 4), (2, 3)], &id));
        assert!(!validate_queue_page(&[(0, 4), (2, 3)], &id));
        // fan into one vertex is fine on a queue
        assert!(validate_queue_page(&[(0, 4), (1, 4), (2, 4), (3, 4)], &id));
        assert!(!validate_stack_page(&[(0, 3), (1, 4), (2, 4)], &id));
    }

    #[test]
    fn layout_validity_examples() {
        let g = k4();
        let id = VertexOrder::identity(4);
        // edge ids: 01 02 03 12 13 23
        let pages = vec![0, 0, 0, 0, 1, 0];
        let l = MixedLayout::new(&g, id.clone(), PageSpec::ONE_ONE, pages).unwrap();
        assert!(is_valid_layout(&g, &l));
        assert_eq!(count_conflicts(&g, &l).unwrap().total, 0);
        let all = MixedLayout::new(&g, id, PageSpec::new(1, 0).unwrap(), vec![0; 6]).unwrap();
        assert!(!is_valid_layout(&g, &all));

        let single = Graph::new(2, [(0, 1)]).unwrap();
        for spec in [PageSpec::new(1, 0).unwrap(), PageSpec::new(0, 1).unwrap()] {
            let l = MixedLayout::new(&single, VertexOrder::identity(2), spec, vec![0]).unwrap();
            assert!(is_valid_layout(&single, &l));
        }
    }
}
