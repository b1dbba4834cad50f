use std::collections::HashSet;

use rayon::prelude::*;

use linlay::exact::{
    decide_layout, verify_double_k8_observations, verify_k8_observations_with, Clause, Outcome,
    SearchBudget,
};
use linlay::gadgets::{double_k8, double_k8_witness};
use linlay::{is_valid_layout, Edge, Graph, PageSpec, VertexOrder};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for v in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=p.len()).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, v);
                    q
                })
            })
            .collect();
    }
    out
}

fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<Edge> = (0..pairs.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        if !g.is_connected() {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                let mut e: Vec<Edge> = edges
                    .iter()
                    .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canonical) {
            out.push(g);
        }
    }
    out
}

/// Plain backtracking over edges in id order, checking each new edge
/// against the edges already on its page.
fn oracle_exists(g: &Graph, s: PageSpec) -> bool {
    fn place(spans: &[(usize, usize)], pages: &mut Vec<usize>, s: PageSpec) -> bool {
        let i = pages.len();
        if i == spans.len() {
            return true;
        }
        let (a, b) = spans[i];
        for p in 0..s.stacks + s.queues {
            let clash = (0..i).filter(|&j| pages[j] == p).any(|j| {
                let (c, d) = spans[j];
                if p < s.stacks {
                    (a < c && c < b && b < d) || (c < a && a < d && d < b)
                } else {
                    (a < c && d < b) || (c < a && b < d)
                }
            });
            if !clash {
                pages.push(p);
                if place(spans, pages, s) {
                    return true;
                }
                pages.pop();
            }
        }
        false
    }
    permutations(g.vertex_count()).into_iter().any(|seq| {
        let mut pos = vec![0; seq.len()];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        let spans: Vec<_> = g
            .edges()
            .iter()
            .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
            .collect();
        place(&spans, &mut Vec::new(), s)
    })
}

#[test]
fn decide_layout_is_complete_up_to_six_vertices() {
    let graphs: Vec<Graph> = (1..=6).flat_map(connected_graphs).collect();
    assert_eq!(graphs.len(), 1 + 1 + 2 + 6 + 21 + 112);
    let specs = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)].map(|(s, q)| PageSpec::new(s, q).unwrap());
    let mismatches: Vec<String> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            specs.iter().filter_map(move |&s| {
                let d = decide_layout(g, s, SearchBudget::unlimited()).unwrap();
                assert!(d.is_yes() || d.is_no());
                if let Some(l) = d.certificate() {
                    assert!(is_valid_layout(g, l));
                }
                (d.is_yes() != oracle_exists(g, s)).then(|| format!("{:?} {s:?}", g.edges()))
            })
        })
        .collect();
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn corrupted_k8_clause_fails_on_the_first_layout() {
    let report = verify_k8_observations_with(&[Clause::OnQueue(0, 1)], SearchBudget::nodes(50_000));
    assert_eq!(report.outcome, Outcome::Fail);
    let v = report.first_violation.unwrap();
    assert_eq!(v.layout.order, VertexOrder::identity(8));
    assert_eq!(v.claim, "v1v2 on the queue");
    let k8 = linlay::gen::complete(8);
    assert!(is_valid_layout(&k8, &v.layout));
}

#[test]
fn double_k8_budgeted_run_never_passes_early() {
    let report = verify_double_k8_observations(SearchBudget::nodes(1_000_000));
    assert_ne!(report.outcome, Outcome::Pass);
    let (g, _) = double_k8();
    if let Some(v) = report.first_violation {
        assert!(is_valid_layout(&g, &v.layout));
    }
}

#[test]
fn double_k8_witness_fits_the_claims() {
    let (g, labels) = double_k8();
    let l = double_k8_witness();
    assert!(is_valid_layout(&g, &l));
    let n = g.vertex_count();
    let (u, v) = labels.shared;
    let (w, z) = labels.outer;
    let mut middle = [l.order.rank(u), l.order.rank(v)];
    middle.sort_unstable();
    assert_eq!(middle, [n / 2 - 1, n / 2]);
    let mut ends = [l.order.rank(w), l.order.rank(z)];
    ends.sort_unstable();
    assert_eq!(ends, [0, n - 1]);
}
