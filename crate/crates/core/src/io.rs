//! Plain-text formats.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with 0-based vertex
//! ids in canonical order (`u < v`, sorted).
//!
//! Layout: a line `s q`, a line with the `n` vertex ids in layout order, then
//! `m` lines `u v p` in canonical edge order, `p` being the page id.
//!
//! Output is ASCII, newline-terminated, single spaces, no trailing whitespace.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexOrder};
use crate::layout::{MixedLayout, PageSpec};

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(12 * (g.edge_count() + 1));
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_order(order: &VertexOrder) -> String {
    let mut out = join(order.sequence());
    out.push('\n');
    out
}

pub fn write_layout(g: &Graph, layout: &MixedLayout) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", layout.spec.stacks, layout.spec.queues);
    out.push_str(&write_order(&layout.order));
    for (&(u, v), &p) in g.edges().iter().zip(&layout.pages) {
        let _ = writeln!(out, "{u} {v} {p}");
    }
    out
}

fn join(values: &[usize]) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out
}

/// Non-empty lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("expected a non-negative integer, found {tok:?}"),
            })
        })
        .collect()
}

fn expect_len(line: usize, values: &[usize], len: usize) -> Result<()> {
    if values.len() != len {
        return Err(Error::Parse {
            line,
            msg: format!("expected {len} values, found {}", values.len()),
        });
    }
    Ok(())
}

/// Parses the edge-list format. Lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let (line, header) = it.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let header = numbers(line, header)?;
    expect_len(line, &header, 2)?;
    let (n, m) = (header[0], header[1]);
    let mut edges = Vec::with_capacity(m);
    for (line, text) in it {
        let uv = numbers(line, text)?;
        expect_len(line, &uv, 2)?;
        edges.push((uv[0], uv[1]));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, edges)
}

/// Parses a single order line of `n` vertex ids.
pub fn parse_order(text: &str) -> Result<VertexOrder> {
    let (line, body) = lines(text).next().ok_or(Error::Parse {
        line: 1,
        msg: "missing order line".into(),
    })?;
    VertexOrder::from_sequence(numbers(line, body)?)
}

/// Parses the layout format against the graph it belongs to.
pub fn parse_layout(g: &Graph, text: &str) -> Result<MixedLayout> {
    let mut it = lines(text);
    let missing = |msg: &str| Error::Parse {
        line: 0,
        msg: msg.into(),
    };
    let (line, header) = it.next().ok_or_else(|| missing("missing page header"))?;
    let header = numbers(line, header)?;
    expect_len(line, &header, 2)?;
    let spec = PageSpec::new(header[0], header[1])?;
    let (line, order) = it.next().ok_or_else(|| missing("missing order line"))?;
    let order = VertexOrder::from_sequence(numbers(line, order)?)?;
    let mut pages = vec![usize::MAX; g.edge_count()];
    for (line, text) in it {
        let uvp = numbers(line, text)?;
        expect_len(line, &uvp, 3)?;
        let e = g.edge_id(uvp[0], uvp[1]).ok_or_else(|| Error::Parse {
            line,
            msg: format!("edge {} {} is not in the graph", uvp[0], uvp[1]),
        })?;
        pages[e] = uvp[2];
    }
    if let Some(e) = pages.iter().position(|&p| p == usize::MAX) {
        return Err(Error::UnassignedEdge(g.edges()[e]));
    }
    MixedLayout::new(g, order, spec, pages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_list_bit_exact() {
        let g = Graph::new(4, [(2, 3), (1, 0), (0, 3)]).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text, "4 3\n0 1\n0 3\n2 3\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn layout_bit_exact() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let order = VertexOrder::from_sequence(vec![2, 0, 1]).unwrap();
        let l = MixedLayout::new(&g, order, PageSpec::ONE_ONE, vec![0, 1, 0]).unwrap();
        let text = write_layout(&g, &l);
        assert_eq!(text, "1 1\n2 0 1\n0 1 0\n0 2 1\n1 2 0\n");
        assert_eq!(parse_layout(&g, &text).unwrap(), l);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 x\n").is_err());
        assert!(parse_edge_list("3 1\n0 0\n").is_err());
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            parse_layout(&g, "1 1\n0 1 2\n0 1 0\n"),
            Err(Error::UnassignedEdge((1, 2)))
        ));
        assert!(parse_layout(&g, "1 1\n0 1 2\n0 1 0\n0 2 1\n").is_err());
        assert!(parse_order("0 2 2").is_err());
    }

    proptest! {
        #[test]
        fn edge_list_roundtrip(n in 2usize..30, raw in proptest::collection::vec((0usize..30, 0usize..30), 0..60)) {
            let mut edges: Vec<_> = raw.into_iter()
                .map(|(u, v)| (u % n, v % n))
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            let g = Graph::new(n, edges).unwrap();
            let text = write_edge_list(&g);
            prop_assert_eq!(parse_edge_list(&text).unwrap(), g.clone());
            prop_assert_eq!(write_edge_list(&parse_edge_list(&text).unwrap()), text);
        }
    }
}
