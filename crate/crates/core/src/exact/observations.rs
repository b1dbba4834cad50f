//! Exhaustive checks of structural claims about (2, 1) layouts of K8 and of
//! the double-K8.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::exact::orders::OrderSearch;
use crate::exact::solver::{Flow, Meter, Pool, Solver};
use crate::exact::SearchBudget;
use crate::gadgets::double_k8;
use crate::gen::complete;
use crate::graph::{Graph, VertexOrder};
use crate::layout::{MixedLayout, PageKind, PageSpec};

const SPEC: PageSpec = PageSpec {
    stacks: 2,
    queues: 1,
};

/// A property of a layout, phrased on vertex ranks (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// The edge between the two ranks lies on a stack page.
    OnStack(usize, usize),
    /// The edge between the two ranks lies on a queue page.
    OnQueue(usize, usize),
    /// The two edges lie on distinct stack pages.
    DifferentStacks((usize, usize), (usize, usize)),
}

/// The claims for every (2, 1) layout of K8, by rank: 1-8, 1-7 and 2-8 are
/// on stacks, 1-7 and 2-8 on different stacks, 1-3 and 6-8 on the queue.
pub const K8_CLAUSES: [Clause; 6] = [
    Clause::OnStack(0, 7),
    Clause::OnStack(0, 6),
    Clause::OnStack(1, 7),
    Clause::DifferentStacks((0, 6), (1, 7)),
    Clause::OnQueue(0, 2),
    Clause::OnQueue(5, 7),
];

impl Clause {
    pub fn holds(&self, g: &Graph, layout: &MixedLayout) -> bool {
        let page = |(a, b): (usize, usize)| {
            let u = layout.order.vertex_at(a);
            let v = layout.order.vertex_at(b);
            layout.pages[g.edge_id(u, v).expect("clause names an edge")]
        };
        let kind = |p: usize| layout.spec.kind(p);
        match *self {
            Clause::OnStack(a, b) => kind(page((a, b))) == PageKind::Stack,
            Clause::OnQueue(a, b) => kind(page((a, b))) == PageKind::Queue,
            Clause::DifferentStacks(e, f) => {
                let (p, q) = (page(e), page(f));
                kind(p) == PageKind::Stack && kind(q) == PageKind::Stack && p != q
            }
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // ranks are printed 1-based, v1..v8
        match *self {
            Clause::OnStack(a, b) => write!(f, "v{}v{} on a stack", a + 1, b + 1),
            Clause::OnQueue(a, b) => write!(f, "v{}v{} on the queue", a + 1, b + 1),
            Clause::DifferentStacks((a, b), (c, d)) => {
                write!(
                    f,
                    "v{}v{} and v{}v{} on different stacks",
                    a + 1,
                    b + 1,
                    c + 1,
                    d + 1
                )
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
        })
    }
}

/// A layout breaking a claim.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub layout: MixedLayout,
    pub claim: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObservationReport {
    pub outcome: Outcome,
    /// Complete vertex orders examined.
    pub orders: u64,
    /// Orders admitting at least one conflict-free layout.
    pub orders_with_layout: u64,
    /// Layouts checked against the claims.
    pub layouts: u64,
    /// Layouts breaking at least one claim.
    pub violations: u64,
    /// Every claim with the number of layouts breaking it.
    pub claims: Vec<(String, u64)>,
    /// The violation found first in search order.
    pub first_violation: Option<Violation>,
    pub nodes: u64,
    pub seconds: f64,
}

impl ObservationReport {
    /// Violation count of the named claim.
    pub fn violations_of(&self, claim: &str) -> Option<u64> {
        self.claims
            .iter()
            .find(|(c, _)| c == claim)
            .map(|&(_, v)| v)
    }

    /// One machine-readable line.
    pub fn summary_line(&self) -> String {
        format!(
            "summary outcome={} orders={} orders_with_layout={} layouts={} violations={} nodes={} seconds={:.3}",
            self.outcome,
            self.orders,
            self.orders_with_layout,
            self.layouts,
            self.violations,
            self.nodes,
            self.seconds
        )
    }
}

impl fmt::Display for ObservationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "outcome: {}", self.outcome)?;
        writeln!(f, "orders examined: {}", self.orders)?;
        writeln!(f, "orders with a layout: {}", self.orders_with_layout)?;
        writeln!(f, "layouts inspected: {}", self.layouts)?;
        for (claim, v) in &self.claims {
            writeln!(f, "  {claim}: {v} violations")?;
        }
        if let Some(v) = &self.first_violation {
            let seq: Vec<String> = v
                .layout
                .order
                .sequence()
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(
                f,
                "first violation: order {} breaks \"{}\"",
                seq.join(" "),
                v.claim
            )?;
        }
        writeln!(f, "search nodes: {}", self.nodes)?;
        write!(f, "{}", self.summary_line())
    }
}

struct Tally {
    orders: u64,
    orders_with_layout: u64,
    layouts: u64,
    violations: u64,
    per_claim: Vec<u64>,
    first_violation: Option<Violation>,
    aborted: bool,
}

impl Tally {
    fn new(claims: usize) -> Self {
        Tally {
            orders: 0,
            orders_with_layout: 0,
            layouts: 0,
            violations: 0,
            per_claim: vec![0; claims],
            first_violation: None,
            aborted: false,
        }
    }

    /// Records one layout given which claims it breaks.
    fn record(&mut self, layout: impl FnOnce() -> MixedLayout, broken: &[bool], names: &[String]) {
        self.layouts += 1;
        let mut any = None;
        for (i, &b) in broken.iter().enumerate() {
            if b {
                self.per_claim[i] += 1;
                any = any.or(Some(i));
            }
        }
        if let Some(i) = any {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(Violation {
                    layout: layout(),
                    claim: names[i].clone(),
                });
            }
        }
    }

    /// Merges `other`, which comes later in search order.
    fn merge(mut self, other: Tally) -> Tally {
        self.orders += other.orders;
        self.orders_with_layout += other.orders_with_layout;
        self.layouts += other.layouts;
        self.violations += other.violations;
        for (a, b) in self.per_claim.iter_mut().zip(other.per_claim) {
            *a += b;
        }
        self.first_violation = self.first_violation.or(other.first_violation);
        self.aborted |= other.aborted;
        self
    }

    fn report(self, names: Vec<String>, nodes: u64, started: Instant) -> ObservationReport {
        let outcome = if self.violations > 0 {
            Outcome::Fail
        } else if self.aborted || self.layouts == 0 {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        };
        ObservationReport {
            outcome,
            orders: self.orders,
            orders_with_layout: self.orders_with_layout,
            layouts: self.layouts,
            violations: self.violations,
            claims: names.into_iter().zip(self.per_claim).collect(),
            first_violation: self.first_violation,
            nodes,
            seconds: started.elapsed().as_secs_f64(),
        }
    }
}

/// Checks [`K8_CLAUSES`] on every (2, 1) layout of K8, up to swapping the
/// stacks, over all vertex orders with vertex 0 before vertex 1.
pub fn verify_k8_observations(budget: SearchBudget) -> ObservationReport {
    verify_k8_observations_with(&K8_CLAUSES, budget)
}

/// Like [`verify_k8_observations`] with a custom clause list.
pub fn verify_k8_observations_with(clauses: &[Clause], budget: SearchBudget) -> ObservationReport {
    let started = Instant::now();
    let deadline = budget.max_seconds.map(|d| started + d);
    let pool = Arc::new(Pool::default());
    let k8 = complete(8);
    let names: Vec<String> = clauses.iter().map(|c| c.to_string()).collect();
    let spans_of = |order: &VertexOrder| -> (Vec<usize>, Vec<(usize, usize)>) {
        let mut ids: Vec<usize> = (0..k8.edge_count()).collect();
        ids.sort_by_key(|&e| {
            let (l, r) = order.span(k8.edges()[e]);
            (l, std::cmp::Reverse(r))
        });
        let spans = ids.iter().map(|&e| order.span(k8.edges()[e])).collect();
        (ids, spans)
    };
    // one task per choice of the first two vertices
    let heads: Vec<(usize, usize)> = (0..8)
        .flat_map(|a| (0..8).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let tally = heads
        .par_iter()
        .map(|&(a, b)| {
            let mut meter = Meter::shared(&budget, deadline, pool.clone());
            let mut tally = Tally::new(clauses.len());
            let rest: Vec<usize> = (0..8).filter(|&v| v != a && v != b).collect();
            for_each_permutation(&rest, &mut |tail| {
                if tally.aborted {
                    return;
                }
                let mut seq = vec![a, b];
                seq.extend_from_slice(tail);
                let order = VertexOrder::from_sequence(seq).unwrap();
                // reversal quotient
                if order.rank(0) > order.rank(1) {
                    return;
                }
                tally.orders += 1;
                let (ids, spans) = spans_of(&order);
                let mut solver = Solver::new(&spans, SPEC, true);
                let mut found = false;
                let flow = solver.run(&mut meter, &mut |assignment| {
                    found = true;
                    let mut pages = vec![0; ids.len()];
                    for (&e, &p) in ids.iter().zip(assignment) {
                        pages[e] = p;
                    }
                    let layout = MixedLayout {
                        order: order.clone(),
                        spec: SPEC,
                        pages,
                    };
                    let broken: Vec<bool> =
                        clauses.iter().map(|c| !c.holds(&k8, &layout)).collect();
                    tally.record(|| layout, &broken, &names);
                    true
                });
                tally.orders_with_layout += found as u64;
                if flow == Flow::Aborted {
                    tally.aborted = true;
                }
            });
            meter.finish();
            tally
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::new(clauses.len()), Tally::merge);
    tally.report(names, pool.nodes(), started)
}

fn for_each_permutation(items: &[usize], f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
        if i == items.len() {
            f(items);
            return;
        }
        for j in i..items.len() {
            items[i..=j].rotate_right(1);
            rec(items, i + 1, f);
            items[i..=j].rotate_left(1);
        }
    }
    rec(&mut items.to_vec(), 0, f);
}

/// Claim names checked by [`verify_double_k8_observations`].
pub const SHARED_MIDDLE: &str = "shared vertices on the two middle ranks";
pub const OUTER_ENDS: &str = "outer vertices on the first and last rank";

/// Whether an order of the double-K8 (ids as in [`double_k8`]) satisfies
/// [`SHARED_MIDDLE`] and [`OUTER_ENDS`].
pub fn double_k8_claims(order: &VertexOrder) -> (bool, bool) {
    let (_, labels) = double_k8();
    let (u, v) = labels.shared;
    let (w, z) = labels.outer;
    let n = order.len();
    let mid = [n / 2 - 1, n / 2];
    let ends = [0, n - 1];
    (
        mid.contains(&order.rank(u)) && mid.contains(&order.rank(v)),
        ends.contains(&order.rank(w)) && ends.contains(&order.rank(z)),
    )
}

/// Searches all vertex orders of the double-K8 that admit a (2, 1) layout,
/// up to twin symmetry and reversal, and checks the position claims of
/// [`double_k8_claims`] on each, with one witness layout per order.
pub fn verify_double_k8_observations(budget: SearchBudget) -> ObservationReport {
    let started = Instant::now();
    let deadline = budget.max_seconds.map(|d| started + d);
    let pool = Arc::new(Pool::default());
    let (g, _) = double_k8();
    let n = g.vertex_count();
    let names = vec![SHARED_MIDDLE.to_string(), OUTER_ENDS.to_string()];
    let heads: Vec<[usize; 3]> = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c])))
        .filter(|&[a, b, c]| a != b && b != c && a != c)
        .collect();
    let tally = heads
        .par_iter()
        .map(|head| {
            let mut meter = Meter::shared(&budget, deadline, pool.clone());
            let mut tally = Tally::new(names.len());
            let mut search = OrderSearch::new(&g, SPEC, true);
            let flow = search.run(head, &mut meter, &mut |seq, pages| {
                tally.orders += 1;
                tally.orders_with_layout += 1;
                let order = VertexOrder::from_sequence(seq.to_vec()).unwrap();
                let (shared, outer) = double_k8_claims(&order);
                let layout = || MixedLayout {
                    order: order.clone(),
                    spec: SPEC,
                    pages: pages.to_vec(),
                };
                tally.record(layout, &[!shared, !outer], &names);
                true
            });
            tally.aborted = flow == Flow::Aborted;
            meter.finish();
            tally
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::new(names.len()), Tally::merge);
    tally.report(names, pool.nodes(), started)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_complete() {
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(&[3, 1, 4, 5], &mut |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn clauses_invariant_under_stack_swap() {
        let k8 = complete(8);
        let order = VertexOrder::identity(8);
        let mut checked = 0;
        crate::exact::visit_layouts(&k8, SPEC, &order, false, |l| {
            let mut swapped = l.clone();
            for p in &mut swapped.pages {
                if *p < 2 {
                    *p = 1 - *p;
                }
            }
            for c in K8_CLAUSES {
                assert_eq!(c.holds(&k8, l), c.holds(&k8, &swapped));
            }
            checked += 1;
            true
        })
        .unwrap();
        assert!(checked > 0);
    }

    #[test]
    fn clause_display_uses_one_based_names() {
        assert_eq!(Clause::OnQueue(0, 2).to_string(), "v1v3 on the queue");
    }
}
