use std::fmt::Write as _;

use crate::conflict::spans_conflict;
use crate::graph::Graph;
use crate::layout::{MixedLayout, PageKind};

const SPACING: f64 = 40.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SvgOptions {
    /// Draw edges involved in a same-page conflict thicker and dashed.
    pub highlight_conflicts: bool,
}

/// Arc diagram of a layout: vertices on a horizontal line in layout order,
/// stack edges as semicircles above it, queue edges below, one color per
/// page.
///
/// # Panics
///
/// If `layout` does not cover `g`.
pub fn render_arc_svg(g: &Graph, layout: &MixedLayout, opts: &SvgOptions) -> String {
    layout.check(g).expect("layout must cover the graph");
    let n = g.vertex_count();
    let spans: Vec<_> = g.edges().iter().map(|&e| layout.order.span(e)).collect();
    let radius = |(l, r): (usize, usize)| (r - l) as f64 * SPACING / 2.0;
    let kind = |e: usize| layout.spec.kind(layout.pages[e]);

    let mut up = 0.0f64;
    let mut down = 0.0f64;
    for (e, &s) in spans.iter().enumerate() {
        match kind(e) {
            PageKind::Stack => up = up.max(radius(s)),
            PageKind::Queue => down = down.max(radius(s)),
        }
    }
    let mut conflicted = vec![false; spans.len()];
    if opts.highlight_conflicts {
        for a in 0..spans.len() {
            for b in a + 1..spans.len() {
                if layout.pages[a] == layout.pages[b] && spans_conflict(kind(a), spans[a], spans[b])
                {
                    conflicted[a] = true;
                    conflicted[b] = true;
                }
            }
        }
    }

    let width = 2.0 * MARGIN + SPACING * n.saturating_sub(1) as f64;
    let height = 2.0 * MARGIN + up + down;
    let base = MARGIN + up;
    let x = |rank: usize| MARGIN + rank as f64 * SPACING;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r##"<line x1="{}" y1="{base}" x2="{}" y2="{base}" stroke="#999" stroke-width="1"/>"##,
        x(0),
        x(n.saturating_sub(1))
    );
    for (e, &(l, r)) in spans.iter().enumerate() {
        let page = layout.pages[e];
        let (class, sweep) = match kind(e) {
            PageKind::Stack => ("arc stack", 1),
            PageKind::Queue => ("arc queue", 0),
        };
        let rad = radius((l, r));
        let extra = if conflicted[e] {
            r#" stroke-width="3" stroke-dasharray="6 3""#
        } else {
            r#" stroke-width="1.5""#
        };
        let _ = writeln!(
            out,
            r#"<path class="{class}" data-page="{page}" d="M {} {base} A {rad} {rad} 0 0 {sweep} {} {base}" fill="none" stroke="{}"{extra}/>"#,
            x(l),
            x(r),
            PALETTE[page % PALETTE.len()]
        );
    }
    for (rank, &v) in layout.order.sequence().iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{}" cy="{base}" r="4" fill="black"/>"#,
            x(rank)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">{v}</text>"#,
            x(rank),
            base + 14.0
        );
    }
    out.push_str("</svg>\n");
    out
}
