//! Exact existence decisions for small instances and exhaustive checks of
//! the K8 layout observations.
//!
//! Two search layers share one solver. For a fixed vertex order, pages are
//! assigned edge by edge (sorted by left endpoint, then by decreasing right
//! endpoint) with forward checking. Over vertex orders, a prefix is grown one
//! vertex at a time; every edge with exactly one placed endpoint is modeled
//! as a span ending at a virtual vertex past the prefix, so that a prefix
//! survives iff its closed edges and these open stubs admit a conflict-free
//! assignment.

mod observations;
mod orders;
mod solver;

use std::time::Duration;

use crate::error::Result;
use crate::graph::{Graph, VertexOrder};
use crate::layout::{MixedLayout, PageSpec};

pub use observations::{
    double_k8_claims, verify_double_k8_observations, verify_k8_observations,
    verify_k8_observations_with, Clause, ObservationReport, Outcome, Violation, K8_CLAUSES,
    OUTER_ENDS, SHARED_MIDDLE,
};
pub use orders::{decide_layout, twin_classes};

use solver::{Flow, Meter, Solver};

/// Limits for one search. Exceeding either yields
/// [`Decision::Inconclusive`] rather than an answer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            max_seconds: None,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            max_seconds: None,
        }
    }

    pub fn new(max_nodes: Option<u64>, max_seconds: Option<f64>) -> Self {
        SearchBudget {
            max_nodes: max_nodes.unwrap_or(u64::MAX),
            max_seconds: max_seconds.map(Duration::from_secs_f64),
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::unlimited()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decision {
    /// A conflict-free layout.
    Yes(MixedLayout),
    /// No conflict-free layout exists.
    No,
    /// The budget ran out after visiting `nodes` search nodes.
    Inconclusive { nodes: u64 },
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No)
    }

    pub fn certificate(&self) -> Option<&MixedLayout> {
        match self {
            Decision::Yes(l) => Some(l),
            _ => None,
        }
    }
}

/// Edge ids sorted by left endpoint rank, then by decreasing right rank.
fn edge_sequence(g: &Graph, order: &VertexOrder) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..g.edge_count()).collect();
    ids.sort_by_key(|&e| {
        let (l, r) = order.span(g.edges()[e]);
        (l, std::cmp::Reverse(r))
    });
    ids
}

/// Runs the fixed-order solver and reports every solution as pages indexed
/// by edge id.
fn search_fixed(
    g: &Graph,
    order: &VertexOrder,
    spec: PageSpec,
    quotient: bool,
    meter: &mut Meter,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<Flow> {
    order.check_covers(g)?;
    let ids = edge_sequence(g, order);
    let spans: Vec<_> = ids.iter().map(|&e| order.span(g.edges()[e])).collect();
    let mut solver = Solver::new(&spans, spec, quotient);
    let mut pages = vec![0; ids.len()];
    Ok(solver.run(meter, &mut |assignment| {
        for (&e, &p) in ids.iter().zip(assignment) {
            pages[e] = p;
        }
        visit(&pages)
    }))
}

/// Decides whether the edges of `g` can be assigned to the pages of `spec`
/// without conflicts on the fixed `order`.
pub fn decide_assignment(
    g: &Graph,
    order: &VertexOrder,
    spec: PageSpec,
    budget: SearchBudget,
) -> Result<Decision> {
    let mut meter = Meter::new(&budget);
    let mut found = None;
    let flow = search_fixed(g, order, spec, true, &mut meter, &mut |pages| {
        found = Some(pages.to_vec());
        false
    })?;
    Ok(match (flow, found) {
        (_, Some(pages)) => Decision::Yes(MixedLayout::new(g, order.clone(), spec, pages)?),
        (Flow::Aborted, None) => Decision::Inconclusive { nodes: meter.nodes },
        _ => Decision::No,
    })
}

/// Calls `visit` with every conflict-free layout of `g` on `order`, in
/// lexicographic order of the page sequence along the sorted edges, until it
/// returns false. With `quotient`, only one layout per relabeling of
/// interchangeable pages is produced (pages used in first-use order).
pub fn visit_layouts(
    g: &Graph,
    spec: PageSpec,
    order: &VertexOrder,
    quotient: bool,
    mut visit: impl FnMut(&MixedLayout) -> bool,
) -> Result<()> {
    let mut meter = Meter::new(&SearchBudget::unlimited());
    search_fixed(g, order, spec, quotient, &mut meter, &mut |pages| {
        let layout = MixedLayout {
            order: order.clone(),
            spec,
            pages: pages.to_vec(),
        };
        visit(&layout)
    })?;
    Ok(())
}

/// All conflict-free layouts of `g` on `order`, page labels distinguished.
pub fn enumerate_layouts(
    g: &Graph,
    spec: PageSpec,
    order: &VertexOrder,
) -> Result<Vec<MixedLayout>> {
    let mut all = Vec::new();
    visit_layouts(g, spec, order, false, |l| {
        all.push(l.clone());
        true
    })?;
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::{is_valid_layout, validate_queue_page, validate_stack_page};
    use crate::gen::complete;
    use crate::order::random_order;
    use crate::rng::GenSeed;

    fn spec(s: usize, q: usize) -> PageSpec {
        PageSpec::new(s, q).unwrap()
    }

    /// All `k^m` assignments on a fixed order, filtered by validity.
    fn brute_force_count(g: &Graph, order: &VertexOrder, spec: PageSpec) -> usize {
        let m = g.edge_count();
        let k = spec.pages();
        let mut count = 0;
        let mut pages = vec![0; m];
        loop {
            let l = MixedLayout::new(g, order.clone(), spec, pages.clone()).unwrap();
            if is_valid_layout(g, &l) {
                count += 1;
            }
            let mut i = 0;
            while i < m && pages[i] == k - 1 {
                pages[i] = 0;
                i += 1;
            }
            if i == m {
                return count;
            }
            pages[i] += 1;
        }
    }

    #[test]
    fn k4_fixed_order() {
        let k4 = complete(4);
        let id = VertexOrder::identity(4);
        let yes = decide_assignment(&k4, &id, spec(1, 1), SearchBudget::unlimited()).unwrap();
        assert!(is_valid_layout(&k4, yes.certificate().unwrap()));
        let no = decide_assignment(&k4, &id, spec(1, 0), SearchBudget::unlimited()).unwrap();
        assert!(no.is_no());
        assert_eq!(brute_force_count(&k4, &id, spec(1, 0)), 0);
    }

    #[test]
    fn empty_graph_is_yes() {
        for (s, q) in [(1, 0), (0, 1), (2, 3)] {
            let g = Graph::empty(5);
            let d = decide_assignment(
                &g,
                &VertexOrder::identity(5),
                spec(s, q),
                SearchBudget::unlimited(),
            )
            .unwrap();
            assert!(d.is_yes());
        }
    }

    #[test]
    fn enumeration_counts() {
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(
            enumerate_layouts(&edge, spec(1, 1), &VertexOrder::identity(2))
                .unwrap()
                .len(),
            2
        );
        let k3 = complete(3);
        assert_eq!(
            enumerate_layouts(&k3, spec(1, 0), &VertexOrder::identity(3))
                .unwrap()
                .len(),
            1
        );
        let k4 = complete(4);
        for s in [spec(1, 1), spec(2, 0), spec(0, 2), spec(2, 1)] {
            for seed in 0..3 {
                let o = random_order(&k4, GenSeed(seed));
                let all = enumerate_layouts(&k4, s, &o).unwrap();
                assert_eq!(all.len(), brute_force_count(&k4, &o, s), "{s:?}");
                assert!(all.iter().all(|l| is_valid_layout(&k4, l)));
                let mut sorted = all.clone();
                sorted.dedup();
                assert_eq!(sorted.len(), all.len());
            }
        }
    }

    #[test]
    fn quotient_enumeration_picks_one_per_relabeling() {
        let k5 = complete(5);
        let o = VertexOrder::identity(5);
        let s = spec(2, 1);
        let mut canonical = 0;
        visit_layouts(&k5, s, &o, true, |_| {
            canonical += 1;
            true
        })
        .unwrap();
        let all = enumerate_layouts(&k5, s, &o).unwrap();
        // swapping the stacks is an involution fixing only stack-free layouts
        let fixed = all
            .iter()
            .filter(|l| l.pages.iter().all(|&p| p == 2))
            .count();
        assert!(canonical > 0);
        assert_eq!(2 * canonical, all.len() + fixed);
    }

    #[test]
    fn single_page_matches_validators() {
        for seed in 0..200u64 {
            let n = 2 + (seed as usize % 9);
            let m = (n - 1 + seed as usize % n).min(n * (n - 1) / 2);
            let g = crate::gen::random_gnm_connected(n, m, GenSeed(seed)).unwrap();
            let o = random_order(&g, GenSeed(seed + 1000));
            let stack = decide_assignment(&g, &o, spec(1, 0), SearchBudget::unlimited()).unwrap();
            assert_eq!(stack.is_yes(), validate_stack_page(g.edges(), &o));
            let queue = decide_assignment(&g, &o, spec(0, 1), SearchBudget::unlimited()).unwrap();
            assert_eq!(queue.is_yes(), validate_queue_page(g.edges(), &o));
        }
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let k8 = complete(8);
        let d = decide_assignment(
            &k8,
            &VertexOrder::identity(8),
            spec(1, 1),
            SearchBudget::nodes(3),
        )
        .unwrap();
        assert!(matches!(d, Decision::Inconclusive { .. }));
    }
}
