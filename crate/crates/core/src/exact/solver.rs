//! Backtracking page assignment for a fixed set of spans.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Instant;

use crate::conflict::{spans_cross, spans_nest};
use crate::exact::SearchBudget;
use crate::layout::{PageKind, PageSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Flow {
    /// Search space exhausted.
    Done,
    /// The solution callback asked to stop.
    Stopped,
    /// Budget exceeded.
    Aborted,
}

/// Node/time accounting for one search. Meters created with
/// [`Meter::shared`] draw from a common pool so that parallel workers
/// respect one budget.
pub(crate) struct Meter {
    pub nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    pool: Option<Arc<Pool>>,
    unflushed: u64,
    pub aborted: bool,
}

#[derive(Default)]
pub(crate) struct Pool {
    nodes: AtomicU64,
    stop: AtomicBool,
}

impl Pool {
    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

const FLUSH: u64 = 1024;

impl Meter {
    pub fn new(budget: &SearchBudget) -> Self {
        Meter {
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: budget.max_seconds.map(|s| Instant::now() + s),
            pool: None,
            unflushed: 0,
            aborted: false,
        }
    }

    pub fn shared(budget: &SearchBudget, deadline: Option<Instant>, pool: Arc<Pool>) -> Self {
        Meter {
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline,
            pool: Some(pool),
            unflushed: 0,
            aborted: false,
        }
    }

    /// Counts a node; returns false once the budget is exhausted.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.unflushed += 1;
        if self.pool.is_none() && self.nodes > self.max_nodes {
            self.aborted = true;
        }
        if self.unflushed >= FLUSH {
            self.flush();
        }
        !self.aborted
    }

    fn flush(&mut self) {
        let total = match &self.pool {
            Some(pool) => {
                let total =
                    pool.nodes.fetch_add(self.unflushed, Ordering::Relaxed) + self.unflushed;
                if pool.stop.load(Ordering::Relaxed) {
                    self.aborted = true;
                }
                total
            }
            None => self.nodes,
        };
        self.unflushed = 0;
        if total > self.max_nodes || self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.aborted = true;
        }
        if self.aborted {
            if let Some(pool) = &self.pool {
                pool.stop.store(true, Ordering::Relaxed);
            }
        }
    }

    /// Pushes outstanding counts to the pool.
    pub fn finish(&mut self) {
        if self.unflushed > 0 {
            self.flush();
        }
    }
}

/// Constraint-propagating search over page assignments of `spans`.
pub(crate) struct Solver {
    spec: PageSpec,
    /// For every variable, the variables it conflicts with on a stack page
    /// (crossing) and on a queue page (nesting).
    cross: Vec<Vec<u32>>,
    nest: Vec<Vec<u32>>,
    domain: Vec<u64>,
    page: Vec<usize>,
    trail: Vec<(u32, u64)>,
    hint: Vec<Option<usize>>,
    /// Page standing in for each hinted label, once chosen.
    hint_map: [usize; 64],
    quotient: bool,
    fail_first: bool,
    used_stacks: usize,
    used_queues: usize,
}

const UNSET: usize = usize::MAX;

impl Solver {
    /// `quotient` restricts labels so that interchangeable pages are used in
    /// first-use order, yielding one assignment per relabeling class.
    /// Variables are taken in index order.
    pub fn new(spans: &[(usize, usize)], spec: PageSpec, quotient: bool) -> Self {
        assert!(spec.pages() <= 64, "at most 64 pages are supported");
        let v = spans.len();
        let mut cross = vec![Vec::new(); v];
        let mut nest = vec![Vec::new(); v];
        for i in 0..v {
            for j in i + 1..v {
                if spans_cross(spans[i], spans[j]) {
                    cross[i].push(j as u32);
                    cross[j].push(i as u32);
                } else if spans_nest(spans[i], spans[j]) {
                    nest[i].push(j as u32);
                    nest[j].push(i as u32);
                }
            }
        }
        let full = if spec.pages() == 64 {
            u64::MAX
        } else {
            (1u64 << spec.pages()) - 1
        };
        Solver {
            spec,
            cross,
            nest,
            domain: vec![full; v],
            page: vec![UNSET; v],
            trail: Vec::new(),
            hint: vec![None; v],
            hint_map: [UNSET; 64],
            quotient,
            fail_first: false,
            used_stacks: 0,
            used_queues: 0,
        }
    }

    /// Picks the unassigned variable with the fewest allowed pages next
    /// (lowest index on ties) instead of following index order. Only sound
    /// for existence queries and unquotiented enumeration.
    pub fn fail_first(mut self) -> Self {
        self.fail_first = true;
        self
    }

    /// Preferred page per variable, tried first. With page quotienting the
    /// hinted labels are matched to pages as they are first used.
    pub fn set_hint(&mut self, hint: Vec<Option<usize>>) {
        debug_assert_eq!(hint.len(), self.page.len());
        self.hint = hint;
    }

    fn allowed(&self, i: usize) -> u64 {
        let d = self.domain[i];
        if !self.quotient {
            return d;
        }
        let s = self.spec.stacks;
        let stacks = (self.used_stacks + 1).min(s);
        let queues = (self.used_queues + 1).min(self.spec.queues);
        let mask = ((1u64 << stacks) - 1) | (((1u64 << queues) - 1) << s);
        d & mask
    }

    /// The page a hinted label stands for, if it can still be chosen.
    fn hinted_page(&self, h: usize) -> Option<usize> {
        if h >= self.spec.pages() {
            return None;
        }
        if !self.quotient {
            return Some(h);
        }
        if self.hint_map[h] != UNSET {
            return Some(self.hint_map[h]);
        }
        if h < self.spec.stacks {
            (self.used_stacks < self.spec.stacks).then_some(self.used_stacks)
        } else {
            (self.used_queues < self.spec.queues).then_some(self.spec.stacks + self.used_queues)
        }
    }

    /// Assigns `p` to `i` and prunes the domains of unassigned conflicting
    /// variables; false on a wipe-out.
    fn assign(&mut self, i: usize, p: usize) -> bool {
        self.page[i] = p;
        let bit = 1u64 << p;
        let list = match self.spec.kind(p) {
            PageKind::Stack => &self.cross[i],
            PageKind::Queue => &self.nest[i],
        };
        for &j in list {
            let j = j as usize;
            if self.page[j] != UNSET {
                continue;
            }
            let d = self.domain[j];
            if d & bit != 0 {
                self.trail.push((j as u32, d));
                self.domain[j] = d & !bit;
                if d & !bit == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (j, d) = self.trail.pop().unwrap();
            self.domain[j as usize] = d;
        }
    }

    fn next_var(&self, depth: usize) -> usize {
        if !self.fail_first {
            return depth;
        }
        let mut best = UNSET;
        let mut best_size = u32::MAX;
        for i in 0..self.page.len() {
            if self.page[i] == UNSET {
                let size = self.allowed(i).count_ones();
                if size < best_size {
                    best = i;
                    best_size = size;
                    if size <= 1 {
                        break;
                    }
                }
            }
        }
        best
    }

    /// Depth-first search; `on_solution` returns true to keep enumerating.
    pub fn run(
        &mut self,
        meter: &mut Meter,
        on_solution: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Flow {
        if self.domain.contains(&0) {
            return Flow::Done;
        }
        self.search(0, meter, on_solution)
    }

    fn search(
        &mut self,
        depth: usize,
        meter: &mut Meter,
        on_solution: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Flow {
        if depth == self.page.len() {
            return if on_solution(&self.page) {
                Flow::Done
            } else {
                Flow::Stopped
            };
        }
        let i = self.next_var(depth);
        let allowed = self.allowed(i);
        let mut candidates = [0usize; 64];
        let mut count = 0;
        let hinted = self.hint[i].and_then(|h| self.hinted_page(h).map(|p| (h, p)));
        if let Some((_, p)) = hinted {
            if allowed & (1 << p) != 0 {
                candidates[0] = p;
                count = 1;
            }
        }
        let mut rest = allowed;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if count == 0 || candidates[0] != p {
                candidates[count] = p;
                count += 1;
            }
        }
        for (k, &p) in candidates[..count].iter().enumerate() {
            if !meter.tick() {
                return Flow::Aborted;
            }
            let mark = self.trail.len();
            let (us, uq) = (self.used_stacks, self.used_queues);
            if p < self.spec.stacks {
                self.used_stacks = self.used_stacks.max(p + 1);
            } else {
                self.used_queues = self.used_queues.max(p - self.spec.stacks + 1);
            }
            let mut mapped = None;
            if let Some((h, hp)) = hinted {
                if k == 0 && hp == p && self.quotient && self.hint_map[h] == UNSET {
                    self.hint_map[h] = p;
                    mapped = Some(h);
                }
            }
            let flow = if self.assign(i, p) {
                self.search(depth + 1, meter, on_solution)
            } else {
                Flow::Done
            };
            self.undo(mark);
            self.used_stacks = us;
            self.used_queues = uq;
            if let Some(h) = mapped {
                self.hint_map[h] = UNSET;
            }
            if flow != Flow::Done {
                self.page[i] = UNSET;
                return flow;
            }
        }
        self.page[i] = UNSET;
        Flow::Done
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(spans: &[(usize, usize)], spec: PageSpec, quotient: bool) -> usize {
        let mut s = Solver::new(spans, spec, quotient);
        let mut meter = Meter::new(&SearchBudget::unlimited());
        let mut c = 0;
        s.run(&mut meter, &mut |_| {
            c += 1;
            true
        });
        c
    }

    #[test]
    fn counts_small_cases() {
        let spec = PageSpec::ONE_ONE;
        assert_eq!(count(&[(0, 1)], spec, false), 2);
        // a crossing pair cannot share the stack
        assert_eq!(count(&[(0, 2), (1, 3)], spec, false), 3);
        // a nesting pair cannot share the queue
        assert_eq!(count(&[(0, 3), (1, 2)], spec, false), 3);
        assert_eq!(count(&[], spec, false), 1);
    }

    #[test]
    fn quotient_divides_by_page_relabelings() {
        let spans = [(0, 2), (1, 3), (4, 5)];
        let spec = PageSpec::new(2, 0).unwrap();
        // 2 ways for the crossing pair, 2 for the free edge
        assert_eq!(count(&spans, spec, false), 4);
        assert_eq!(count(&spans, spec, true), 2);
    }

    #[test]
    fn hint_is_tried_first() {
        let spans = [(0, 1), (2, 3)];
        let mut s = Solver::new(&spans, PageSpec::ONE_ONE, false);
        s.set_hint(vec![Some(1), Some(1)]);
        let mut first = None;
        s.run(&mut Meter::new(&SearchBudget::unlimited()), &mut |p| {
            first = Some(p.to_vec());
            false
        });
        assert_eq!(first, Some(vec![1, 1]));
    }

    #[test]
    fn budget_aborts() {
        let spans: Vec<_> = (0..20).map(|i| (2 * i, 2 * i + 1)).collect();
        let mut s = Solver::new(&spans, PageSpec::ONE_ONE, false);
        let mut meter = Meter::new(&SearchBudget::nodes(100));
        assert_eq!(s.run(&mut meter, &mut |_| true), Flow::Aborted);
    }
}
