//! Page assignment for a fixed vertex order.
//!
//! [`stack_queue`] sweeps the order once, keeping every open edge in a stack
//! and in a queue at the same time. When an edge closes, the number of open
//! edges it would conflict with in each structure estimates the conflicts it
//! causes later, and the counters accumulated from earlier decisions hold
//! the conflicts it already has. [`e_len`] and [`ceil_floor`] are greedy
//! first-fit assignments by decreasing linear and cyclic edge length.

use std::fmt;
use std::str::FromStr;

use crate::conflict::spans_conflict;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexOrder};
use crate::layout::{MixedLayout, PageKind, PageSpec};

/// State of the stack-queue sweep.
#[derive(Clone, Debug, Default)]
pub struct SweepState {
    /// Open edges, bottom to top.
    pub stack: Vec<usize>,
    /// Open edges, front to back.
    pub queue: Vec<usize>,
    /// Crossing counter per edge.
    pub crossing: Vec<u32>,
    /// Nesting counter per edge.
    pub nesting: Vec<u32>,
}

/// One decision of the sweep, recorded for inspection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AssignStep {
    pub edge: usize,
    pub crossing: u32,
    pub nesting: u32,
    /// Conflict-capable open edges above the edge in the stack.
    pub above: u32,
    /// Conflict-capable open edges in front of the edge in the queue.
    pub in_front: u32,
    pub page: usize,
}

impl AssignStep {
    pub fn side(&self, spec: PageSpec) -> PageKind {
        spec.kind(self.page)
    }
}

/// The stack-queue heuristic.
pub fn stack_queue(g: &Graph, order: &VertexOrder, spec: PageSpec) -> Result<MixedLayout> {
    stack_queue_traced(g, order, spec).map(|(l, _)| l)
}

/// [`stack_queue`] that also returns every assignment step in sweep order.
pub fn stack_queue_traced(
    g: &Graph,
    order: &VertexOrder,
    spec: PageSpec,
) -> Result<(MixedLayout, Vec<AssignStep>)> {
    order.check_covers(g)?;
    let m = g.edge_count();
    let n = g.vertex_count();
    let spans: Vec<(usize, usize)> = g.edges().iter().map(|&e| order.span(e)).collect();

    let mut opening = vec![Vec::new(); n];
    let mut closing = vec![Vec::new(); n];
    for (e, &(l, r)) in spans.iter().enumerate() {
        opening[l].push(e);
        closing[r].push(e);
    }

    let mut state = SweepState {
        crossing: vec![0; m],
        nesting: vec![0; m],
        ..Default::default()
    };
    let mut pages = vec![usize::MAX; m];
    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); spec.pages()];
    let mut steps = Vec::with_capacity(m);

    for r in 0..n {
        // innermost first: edges closing here with the larger left end go first
        closing[r].sort_unstable_by_key(|&e| std::cmp::Reverse(spans[e].0));
        for &e in &closing[r] {
            let si = state.stack.iter().position(|&x| x == e).unwrap();
            let qi = state.queue.iter().position(|&x| x == e).unwrap();
            let above: Vec<usize> = state.stack[si + 1..]
                .iter()
                .copied()
                .filter(|&x| spans[x].1 > r)
                .collect();
            let in_front: Vec<usize> = state.queue[..qi]
                .iter()
                .copied()
                .filter(|&x| spans[x].1 > r)
                .collect();
            let c = state.crossing[e];
            let nc = state.nesting[e];
            // c + s/2 <= n + q/2, in integers
            let prefers_stack = 2 * c as usize + above.len() <= 2 * nc as usize + in_front.len();
            let side = match (spec.stacks, spec.queues) {
                (0, _) => PageKind::Queue,
                (_, 0) => PageKind::Stack,
                _ if prefers_stack => PageKind::Stack,
                _ => PageKind::Queue,
            };
            match side {
                PageKind::Stack => above.iter().for_each(|&x| state.crossing[x] += 1),
                PageKind::Queue => in_front.iter().for_each(|&x| state.nesting[x] += 1),
            }
            let candidates = match side {
                PageKind::Stack => spec.stack_pages(),
                PageKind::Queue => spec.queue_pages(),
            };
            let page = least_conflicting_page(candidates, spec, &spans, &assigned, spans[e]);
            pages[e] = page;
            assigned[page].push(e);
            steps.push(AssignStep {
                edge: e,
                crossing: c,
                nesting: nc,
                above: above.len() as u32,
                in_front: in_front.len() as u32,
                page,
            });
            state.stack.remove(si);
            state.queue.remove(qi);
        }
        opening[r].sort_unstable_by_key(|&e| spans[e].1);
        state.queue.extend(&opening[r]);
        state.stack.extend(opening[r].iter().rev());
    }
    debug_assert!(state.stack.is_empty() && state.queue.is_empty());
    let layout = MixedLayout::new(g, order.clone(), spec, pages)?;
    Ok((layout, steps))
}

/// Page of `candidates` with the fewest conflicts against the already
/// assigned edges; ties go to the lowest page id.
fn least_conflicting_page(
    candidates: std::ops::Range<usize>,
    spec: PageSpec,
    spans: &[(usize, usize)],
    assigned: &[Vec<usize>],
    span: (usize, usize),
) -> usize {
    if candidates.len() == 1 {
        return candidates.start;
    }
    candidates
        .min_by_key(|&p| {
            let kind = spec.kind(p);
            let conflicts = assigned[p]
                .iter()
                .filter(|&&f| spans_conflict(kind, spans[f], span))
                .count();
            (conflicts, p)
        })
        .unwrap()
}

/// Assigns edges in `sequence` (edge ids) one by one to the page where they
/// cause the fewest conflicts with the edges assigned so far. Ties prefer
/// stack pages over queue pages, then the lowest page id.
pub fn greedy_assign(
    g: &Graph,
    order: &VertexOrder,
    spec: PageSpec,
    sequence: &[usize],
) -> Result<MixedLayout> {
    order.check_covers(g)?;
    let m = g.edge_count();
    let mut seen = vec![false; m];
    if sequence.len() != m
        || sequence
            .iter()
            .any(|&e| e >= m || std::mem::replace(&mut seen[e], true))
    {
        return Err(Error::BadEdgeSequence);
    }
    let spans: Vec<(usize, usize)> = g.edges().iter().map(|&e| order.span(e)).collect();
    let mut pages = vec![usize::MAX; m];
    let mut done: Vec<usize> = Vec::with_capacity(m);
    let mut counts = vec![0usize; spec.pages()];
    for &e in sequence {
        counts.iter_mut().for_each(|c| *c = 0);
        for &f in &done {
            let p = pages[f];
            if spans_conflict(spec.kind(p), spans[f], spans[e]) {
                counts[p] += 1;
            }
        }
        // stack pages have the lower ids, so the first minimum is the tie rule
        let best = (0..spec.pages()).min_by_key(|&p| counts[p]).unwrap();
        pages[e] = best;
        done.push(e);
    }
    MixedLayout::new(g, order.clone(), spec, pages)
}

/// Edge ids by decreasing linear length, ties by endpoint ranks.
pub fn e_len_sequence(g: &Graph, order: &VertexOrder) -> Vec<usize> {
    let mut seq: Vec<usize> = (0..g.edge_count()).collect();
    seq.sort_by_key(|&e| {
        let (l, r) = order.span(g.edges()[e]);
        (std::cmp::Reverse(r - l), l, r)
    });
    seq
}

/// Edge ids by decreasing cyclic length `min(d, n - d)`, ties by endpoint ranks.
pub fn ceil_floor_sequence(g: &Graph, order: &VertexOrder) -> Vec<usize> {
    let n = order.len();
    let mut seq: Vec<usize> = (0..g.edge_count()).collect();
    seq.sort_by_key(|&e| {
        let (l, r) = order.span(g.edges()[e]);
        (std::cmp::Reverse(cyclic_length(l, r, n)), l, r)
    });
    seq
}

pub fn cyclic_length(l: usize, r: usize, n: usize) -> usize {
    let d = r.abs_diff(l);
    d.min(n - d)
}

pub fn e_len(g: &Graph, order: &VertexOrder, spec: PageSpec) -> Result<MixedLayout> {
    order.check_covers(g)?;
    greedy_assign(g, order, spec, &e_len_sequence(g, order))
}

pub fn ceil_floor(g: &Graph, order: &VertexOrder, spec: PageSpec) -> Result<MixedLayout> {
    order.check_covers(g)?;
    greedy_assign(g, order, spec, &ceil_floor_sequence(g, order))
}

/// The three page-assignment heuristics by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AssignHeuristic {
    StackQueue,
    ELen,
    CeilFloor,
}

impl AssignHeuristic {
    pub const ALL: [AssignHeuristic; 3] = [
        AssignHeuristic::StackQueue,
        AssignHeuristic::ELen,
        AssignHeuristic::CeilFloor,
    ];

    pub fn run(self, g: &Graph, order: &VertexOrder, spec: PageSpec) -> Result<MixedLayout> {
        match self {
            AssignHeuristic::StackQueue => stack_queue(g, order, spec),
            AssignHeuristic::ELen => e_len(g, order, spec),
            AssignHeuristic::CeilFloor => ceil_floor(g, order, spec),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AssignHeuristic::StackQueue => "stack-queue",
            AssignHeuristic::ELen => "elen",
            AssignHeuristic::CeilFloor => "ceilfloor",
        }
    }
}

impl fmt::Display for AssignHeuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AssignHeuristic {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "stack-queue" | "stackqueue" => Ok(AssignHeuristic::StackQueue),
            "elen" | "eLen" => Ok(AssignHeuristic::ELen),
            "ceilfloor" | "ceilFloor" => Ok(AssignHeuristic::CeilFloor),
            _ => Err(format!("unknown assignment heuristic {s:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::{count_conflicts, crosses, nests};
    use crate::gen::{complete, random_gnm_connected};
    use crate::order::random_order;
    use crate::rng::GenSeed;

    fn path(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn total(g: &Graph, l: &MixedLayout) -> u64 {
        count_conflicts(g, l).unwrap().total
    }

    #[test]
    fn c4_identity_is_conflict_free() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let (l, steps) =
            stack_queue_traced(&g, &VertexOrder::identity(4), PageSpec::ONE_ONE).unwrap();
        assert_eq!(total(&g, &l), 0);
        // sweep order: 01, 12, then 23 before 03 (innermost first)
        let order: Vec<_> = steps.iter().map(|s| g.edges()[s.edge]).collect();
        assert_eq!(order, vec![(0, 1), (1, 2), (2, 3), (0, 3)]);
        // 12 sees 03 in front of it in the queue
        assert_eq!(steps[1].in_front, 1);
        assert!(steps.iter().all(|s| s.page == 0));
    }

    #[test]
    fn single_edge_goes_to_stack() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        for o in [vec![0, 1], vec![1, 0]] {
            let o = VertexOrder::from_sequence(o).unwrap();
            assert_eq!(
                stack_queue(&g, &o, PageSpec::ONE_ONE).unwrap().pages,
                vec![0]
            );
            assert_eq!(e_len(&g, &o, PageSpec::ONE_ONE).unwrap().pages, vec![0]);
            assert_eq!(
                ceil_floor(&g, &o, PageSpec::ONE_ONE).unwrap().pages,
                vec![0]
            );
        }
    }

    #[test]
    fn e_len_k4() {
        let g = complete(4);
        let id = VertexOrder::identity(4);
        let seq: Vec<_> = e_len_sequence(&g, &id)
            .iter()
            .map(|&e| g.edges()[e])
            .collect();
        assert_eq!(seq, vec![(0, 3), (0, 2), (1, 3), (0, 1), (1, 2), (2, 3)]);
        let l = e_len(&g, &id, PageSpec::ONE_ONE).unwrap();
        let queue: Vec<_> = l.page_edges(1).map(|e| g.edges()[e]).collect();
        assert_eq!(queue, vec![(1, 3)]);
        assert_eq!(total(&g, &l), 0);
    }

    #[test]
    fn ceil_floor_k4() {
        let g = complete(4);
        let id = VertexOrder::identity(4);
        let seq: Vec<_> = ceil_floor_sequence(&g, &id)
            .iter()
            .map(|&e| g.edges()[e])
            .collect();
        assert_eq!(seq, vec![(0, 2), (1, 3), (0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(cyclic_length(0, 3, 4), 1);
        assert_eq!(cyclic_length(0, 2, 4), 2);
        assert_eq!(cyclic_length(1, 4, 6), 3);
        assert_eq!(
            total(&g, &ceil_floor(&g, &id, PageSpec::ONE_ONE).unwrap()),
            0
        );
    }

    #[test]
    fn paths_and_stars_are_conflict_free() {
        use crate::order::{avsdf, con_greedy, rbfs};
        for n in 2..15 {
            // a path in an arbitrary order may need conflicts; traversal orders do not
            let p = path(n);
            for seed in 0..5 {
                for h in [rbfs, avsdf, con_greedy] {
                    let o = h(&p, GenSeed(seed)).unwrap();
                    assert_eq!(
                        total(&p, &stack_queue(&p, &o, PageSpec::ONE_ONE).unwrap()),
                        0
                    );
                }
            }
            let s = Graph::new(n, (1..n).map(|i| (0, i))).unwrap();
            for seed in 0..5 {
                let o = random_order(&s, GenSeed(seed));
                assert_eq!(
                    total(&s, &stack_queue(&s, &o, PageSpec::ONE_ONE).unwrap()),
                    0
                );
            }
            let id = VertexOrder::identity(n);
            let l = e_len(&p, &id, PageSpec::ONE_ONE).unwrap();
            assert!(l.pages.iter().all(|&pg| pg == 0));
        }
    }

    #[test]
    fn q_zero_degenerates_to_stacks() {
        // outerplanar hexagon plus a crossing chord
        let g = Graph::new(
            6,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (0, 5),
                (0, 3),
                (1, 4),
            ],
        )
        .unwrap();
        let id = VertexOrder::identity(6);
        let spec = PageSpec::new(2, 0).unwrap();
        let l = e_len(&g, &id, spec).unwrap();
        assert_eq!(total(&g, &l), 0);
        assert!(l.pages.iter().all(|&p| p < 2));
        let sq = stack_queue(&g, &id, spec).unwrap();
        assert!(sq.pages.iter().all(|&p| p < 2));
        assert_eq!(total(&g, &sq), 0);
    }

    #[test]
    fn greedy_rejects_bad_sequences() {
        let g = complete(3);
        let id = VertexOrder::identity(3);
        assert!(greedy_assign(&g, &id, PageSpec::ONE_ONE, &[0, 1]).is_err());
        assert!(greedy_assign(&g, &id, PageSpec::ONE_ONE, &[0, 1, 1]).is_err());
        assert!(greedy_assign(&g, &id, PageSpec::ONE_ONE, &[0, 1, 3]).is_err());
        assert!(greedy_assign(&g, &id, PageSpec::ONE_ONE, &[2, 0, 1]).is_ok());
    }

    #[test]
    fn rejects_foreign_order() {
        let g = complete(4);
        assert!(stack_queue(&g, &VertexOrder::identity(3), PageSpec::ONE_ONE).is_err());
    }

    /// At every step the counters equal the conflicts with edges already on
    /// the respective side.
    #[test]
    fn counters_match_realized_conflicts() {
        for seed in 0..40 {
            let g = random_gnm_connected(20, 60, GenSeed(seed)).unwrap();
            let o = random_order(&g, GenSeed(seed + 1000));
            let (_, steps) = stack_queue_traced(&g, &o, PageSpec::ONE_ONE).unwrap();
            let mut stack_side = Vec::new();
            let mut queue_side = Vec::new();
            for s in &steps {
                let e = g.edges()[s.edge];
                let c = stack_side.iter().filter(|&&f| crosses(e, f, &o)).count();
                let n = queue_side.iter().filter(|&&f| nests(e, f, &o)).count();
                assert_eq!(s.crossing as usize, c);
                assert_eq!(s.nesting as usize, n);
                if s.page == 0 {
                    stack_side.push(e);
                } else {
                    queue_side.push(e);
                }
            }
        }
    }

    #[test]
    fn multi_page_specs_assign_everything() {
        for seed in 0..10 {
            let g = random_gnm_connected(30, 90, GenSeed(seed)).unwrap();
            let o = random_order(&g, GenSeed(seed));
            for (s, q) in [(1, 1), (2, 1), (1, 2), (3, 2), (1, 0), (0, 1)] {
                let spec = PageSpec::new(s, q).unwrap();
                for h in AssignHeuristic::ALL {
                    let l = h.run(&g, &o, spec).unwrap();
                    assert_eq!(l.pages.len(), 90);
                    assert!(l.pages.iter().all(|&p| p < s + q));
                }
            }
        }
    }

    #[test]
    fn more_pages_never_hurt_greedy_much() {
        // sanity: splitting the stack side over two pages lowers conflicts
        let g = complete(12);
        let id = VertexOrder::identity(12);
        let one = total(&g, &stack_queue(&g, &id, PageSpec::ONE_ONE).unwrap());
        let two = total(
            &g,
            &stack_queue(&g, &id, PageSpec::new(2, 1).unwrap()).unwrap(),
        );
        assert!(two < one);
    }

    #[test]
    fn heuristic_names_roundtrip() {
        for h in AssignHeuristic::ALL {
            assert_eq!(h.name().parse::<AssignHeuristic>().unwrap(), h);
        }
        assert!("foo".parse::<AssignHeuristic>().is_err());
    }
}
