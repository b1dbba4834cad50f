//! Depth-first search over vertex orders with prefix feasibility pruning.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use crate::error::Result;
use crate::exact::solver::{Flow, Meter, Solver};
use crate::exact::{Decision, SearchBudget};
use crate::graph::{Graph, VertexOrder};
use crate::layout::{MixedLayout, PageSpec};

const UNPLACED: usize = usize::MAX;

/// Classes of vertices with equal neighborhoods apart from each other
/// (`N(u) - v = N(v) - u`), each sorted, ordered by smallest member.
/// Swapping two members of a class is an automorphism.
pub fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut closed: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let mut key = g.neighbors(v).to_vec();
        key.push(v);
        key.sort_unstable();
        closed.entry(key).or_default().push(v);
    }
    let mut classes = Vec::new();
    let mut open: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for members in closed.into_values() {
        if members.len() > 1 {
            classes.push(members);
        } else {
            let v = members[0];
            open.entry(g.neighbors(v).to_vec()).or_default().push(v);
        }
    }
    classes.extend(open.into_values());
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

#[derive(Clone, Copy)]
enum Var {
    Edge(usize),
    /// Open edges leaving the placed vertex, bundled into one span.
    Stub(usize),
}

/// Grows order prefixes. With symmetry reduction, twins are placed in
/// increasing id order and, when two singleton classes exist, the first is
/// placed before the second (quotienting reversal).
pub(crate) struct OrderSearch<'a> {
    g: &'a Graph,
    spec: PageSpec,
    prev_twin: Vec<Option<usize>>,
    reversal: Option<(usize, usize)>,
    pos: Vec<usize>,
    seq: Vec<usize>,
}

impl<'a> OrderSearch<'a> {
    pub fn new(g: &'a Graph, spec: PageSpec, symmetric: bool) -> Self {
        let n = g.vertex_count();
        let mut prev_twin = vec![None; n];
        let mut reversal = None;
        if symmetric {
            let classes = twin_classes(g);
            for c in &classes {
                for w in c.windows(2) {
                    prev_twin[w[1]] = Some(w[0]);
                }
            }
            let singles: Vec<usize> = classes
                .iter()
                .filter(|c| c.len() == 1)
                .map(|c| c[0])
                .collect();
            if singles.len() >= 2 {
                reversal = Some((singles[0], singles[1]));
            }
        }
        OrderSearch {
            g,
            spec,
            prev_twin,
            reversal,
            pos: vec![UNPLACED; n],
            seq: Vec::with_capacity(n),
        }
    }

    /// Starts the search from the given prefix (which must respect the
    /// symmetry constraints). `visit` receives each complete order with the
    /// pages of one conflict-free assignment (by edge id) and returns true to
    /// continue with the next order.
    pub fn run(
        &mut self,
        prefix: &[usize],
        meter: &mut Meter,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> Flow {
        let m = self.g.edge_count();
        let n = self.g.vertex_count();
        let mut edge_hint = vec![None; m];
        let mut open_hint = vec![None; n];
        for &v in prefix {
            if !self.placeable(v) {
                return Flow::Done;
            }
            match self.place(v, &edge_hint, &open_hint, meter) {
                Step::Feasible(e, o) => {
                    edge_hint = e;
                    open_hint = o;
                }
                Step::Infeasible => return Flow::Done,
                Step::Aborted => return Flow::Aborted,
            }
        }
        self.extend(&edge_hint, &open_hint, meter, visit)
    }

    pub fn placeable(&self, v: usize) -> bool {
        if self.pos[v] != UNPLACED {
            return false;
        }
        if let Some(t) = self.prev_twin[v] {
            if self.pos[t] == UNPLACED {
                return false;
            }
        }
        match self.reversal {
            Some((a, b)) if v == b => self.pos[a] != UNPLACED,
            _ => true,
        }
    }

    fn extend(
        &mut self,
        edge_hint: &[Option<usize>],
        open_hint: &[Option<usize>],
        meter: &mut Meter,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> Flow {
        let n = self.g.vertex_count();
        if self.seq.len() == n {
            let pages: Vec<usize> = edge_hint
                .iter()
                .map(|p| p.expect("all edges closed"))
                .collect();
            return if visit(&self.seq, &pages) {
                Flow::Done
            } else {
                Flow::Stopped
            };
        }
        for v in 0..n {
            if !self.placeable(v) {
                continue;
            }
            let flow = match self.place(v, edge_hint, open_hint, meter) {
                Step::Feasible(e, o) => self.extend(&e, &o, meter, visit),
                Step::Infeasible => Flow::Done,
                Step::Aborted => Flow::Aborted,
            };
            self.unplace(v);
            if flow != Flow::Done {
                return flow;
            }
        }
        Flow::Done
    }

    fn unplace(&mut self, v: usize) {
        self.pos[v] = UNPLACED;
        self.seq.pop();
    }

    /// Appends `v` and checks the new prefix. On success returns the pages of
    /// closed edges and of open stubs, used as hints one level deeper. On
    /// failure the vertex stays placed; callers unplace it.
    fn place(
        &mut self,
        v: usize,
        edge_hint: &[Option<usize>],
        open_hint: &[Option<usize>],
        meter: &mut Meter,
    ) -> Step {
        let g = self.g;
        let k = self.seq.len();
        self.pos[v] = k;
        self.seq.push(v);
        if !meter.tick() {
            return Step::Aborted;
        }
        let virtual_end = k + 1;
        let mut vars: Vec<((usize, usize), Var)> = Vec::new();
        for (id, &(a, b)) in g.edges().iter().enumerate() {
            let (pa, pb) = (self.pos[a], self.pos[b]);
            if pa != UNPLACED && pb != UNPLACED {
                vars.push(((pa.min(pb), pa.max(pb)), Var::Edge(id)));
            }
        }
        for &b in &self.seq {
            if g.neighbors(b).iter().any(|&x| self.pos[x] == UNPLACED) {
                vars.push(((self.pos[b], virtual_end), Var::Stub(b)));
            }
        }
        vars.sort_by_key(|&((l, r), _)| (l, Reverse(r)));
        let spans: Vec<_> = vars.iter().map(|&(s, _)| s).collect();
        let hint = vars
            .iter()
            .map(|&(_, var)| match var {
                Var::Edge(id) => edge_hint[id].or_else(|| {
                    let (a, b) = g.edges()[id];
                    open_hint[if a == v { b } else { a }]
                }),
                Var::Stub(b) => open_hint[b],
            })
            .collect();
        let mut solver = Solver::new(&spans, self.spec, true).fail_first();
        solver.set_hint(hint);
        let mut solution = None;
        let flow = solver.run(meter, &mut |pages| {
            solution = Some(pages.to_vec());
            false
        });
        match solution {
            Some(pages) => {
                let mut e = edge_hint.to_vec();
                let mut o = vec![None; g.vertex_count()];
                for (&(_, var), &p) in vars.iter().zip(&pages) {
                    match var {
                        Var::Edge(id) => e[id] = Some(p),
                        Var::Stub(b) => o[b] = Some(p),
                    }
                }
                Step::Feasible(e, o)
            }
            None if flow == Flow::Aborted => Step::Aborted,
            None => Step::Infeasible,
        }
    }
}

enum Step {
    Feasible(Vec<Option<usize>>, Vec<Option<usize>>),
    Infeasible,
    Aborted,
}

/// Decides whether `g` has a conflict-free layout with the pages of `spec`
/// under some vertex order.
pub fn decide_layout(g: &Graph, spec: PageSpec, budget: SearchBudget) -> Result<Decision> {
    decide_layout_with(g, spec, budget, true)
}

pub(crate) fn decide_layout_with(
    g: &Graph,
    spec: PageSpec,
    budget: SearchBudget,
    symmetric: bool,
) -> Result<Decision> {
    let mut meter = Meter::new(&budget);
    let mut found = None;
    let flow = OrderSearch::new(g, spec, symmetric).run(&[], &mut meter, &mut |seq, pages| {
        found = Some((seq.to_vec(), pages.to_vec()));
        false
    });
    Ok(match (flow, found) {
        (_, Some((seq, pages))) => Decision::Yes(MixedLayout::new(
            g,
            VertexOrder::from_sequence(seq)?,
            spec,
            pages,
        )?),
        (Flow::Aborted, None) => Decision::Inconclusive { nodes: meter.nodes },
        _ => Decision::No,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::is_valid_layout;
    use crate::gen::{complete, random_gnm_connected};
    use crate::rng::GenSeed;

    fn spec(s: usize, q: usize) -> PageSpec {
        PageSpec::new(s, q).unwrap()
    }

    fn decide(g: &Graph, s: PageSpec) -> Decision {
        let d = decide_layout(g, s, SearchBudget::unlimited()).unwrap();
        if let Some(l) = d.certificate() {
            assert!(is_valid_layout(g, l));
        }
        d
    }

    /// Every order, every assignment.
    fn naive(g: &Graph, s: PageSpec) -> bool {
        let n = g.vertex_count();
        let m = g.edge_count();
        let k = s.pages();
        let mut seq: Vec<usize> = (0..n).collect();
        let mut found = false;
        permute(&mut seq, 0, &mut |seq| {
            let order = VertexOrder::from_sequence(seq.to_vec()).unwrap();
            let total = k.pow(m as u32);
            for code in 0..total {
                let mut c = code;
                let pages = (0..m)
                    .map(|_| {
                        let p = c % k;
                        c /= k;
                        p
                    })
                    .collect();
                let l = MixedLayout::new(g, order.clone(), s, pages).unwrap();
                if is_valid_layout(g, &l) {
                    found = true;
                    return;
                }
            }
        });
        found
    }

    fn permute(seq: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
        if i == seq.len() {
            f(seq);
            return;
        }
        for j in i..seq.len() {
            seq.swap(i, j);
            permute(seq, i + 1, f);
            seq.swap(i, j);
        }
    }

    #[test]
    fn small_complete_graphs() {
        assert!(decide(&complete(3), spec(1, 0)).is_yes());
        assert!(decide(&complete(4), spec(1, 0)).is_no());
        assert!(decide(&complete(4), spec(0, 1)).is_no());
        assert!(decide(&complete(4), spec(1, 1)).is_yes());
        assert!(decide(&complete(5), spec(2, 0)).is_no());
        assert!(decide(&complete(8), spec(2, 1)).is_yes());
        assert!(decide(&Graph::empty(0), spec(1, 0)).is_yes());
        assert!(decide(&Graph::empty(4), spec(0, 1)).is_yes());
    }

    #[test]
    fn twins() {
        let k8 = complete(8);
        assert_eq!(twin_classes(&k8), vec![(0..8).collect::<Vec<_>>()]);
        // path 0-1-2: the ends are false twins
        let p = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(twin_classes(&p), vec![vec![0, 2], vec![1]]);
        // C4: opposite corners are false twins
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(twin_classes(&c4), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn matches_naive_on_small_graphs() {
        for seed in 0..60u64 {
            let n = 3 + seed as usize % 3;
            let max = n * (n - 1) / 2;
            let m = n - 1 + seed as usize % (max - n + 2);
            let g = random_gnm_connected(n, m, GenSeed(seed)).unwrap();
            for s in [spec(1, 0), spec(0, 1), spec(1, 1), spec(2, 0)] {
                let expected = naive(&g, s);
                assert_eq!(decide(&g, s).is_yes(), expected, "seed {seed} {s:?}");
                let plain = decide_layout_with(&g, s, SearchBudget::unlimited(), false).unwrap();
                assert_eq!(plain.is_yes(), expected);
            }
        }
    }

    #[test]
    fn budget_gives_inconclusive() {
        let d = decide_layout(&complete(9), spec(1, 1), SearchBudget::nodes(50)).unwrap();
        assert!(matches!(d, Decision::Inconclusive { .. }));
    }
}
