//! Deterministic SVG drawings: arc diagrams (stacks above the spine, queues
//! below) and grid matrices of separated layouts.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Edge;
use crate::grid::GridIndex;
use crate::layout::{validate_layout, LinearLayout, PageKind, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RenderStyle {
    #[default]
    ArcDiagram,
    GridMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub style: RenderStyle,
    pub width: f64,
    pub height: f64,
    /// Draw edges involved in violations with a dashed outline.
    pub highlight_violations: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            style: RenderStyle::ArcDiagram,
            width: 800.0,
            height: 480.0,
            highlight_violations: false,
        }
    }
}

impl RenderSpec {
    pub fn grid() -> Self {
        RenderSpec {
            style: RenderStyle::GridMatrix,
            width: 600.0,
            height: 600.0,
            ..Default::default()
        }
    }
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22",
    "#7f7f7f",
];

/// Colour of page `i`; cycles after ten pages.
pub fn page_color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn bad_edges(layout: &LinearLayout) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for v in validate_layout(layout).violations {
        match v {
            Violation::Conflict { first, second, .. } => {
                out.insert(first);
                out.insert(second);
            }
            Violation::DuplicatedEdge { edge, .. } | Violation::UnknownEdge { edge, .. } => {
                out.insert(edge);
            }
            Violation::MissingEdge { .. } => {}
        }
    }
    out
}

fn header(svg: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

pub fn render(layout: &LinearLayout, spec: &RenderSpec) -> Result<String> {
    let bad = if spec.highlight_violations {
        bad_edges(layout)
    } else {
        BTreeSet::new()
    };
    match spec.style {
        RenderStyle::ArcDiagram => Ok(arc_diagram(layout, spec, &bad)),
        RenderStyle::GridMatrix => grid_matrix(layout, spec, &bad),
    }
}

fn arc_diagram(layout: &LinearLayout, spec: &RenderSpec, bad: &BTreeSet<Edge>) -> String {
    let n = layout.order().len();
    let margin = 24.0;
    let legend = 18.0 * layout.pages().len() as f64;
    let (w, h) = (spec.width, spec.height + legend);
    let spine = margin + (spec.height - 2.0 * margin) / 2.0;
    let step = if n > 1 { (w - 2.0 * margin) / (n - 1) as f64 } else { 0.0 };
    let x = |v: usize| margin + step * layout.order().position(v) as f64;
    // Arcs are half ellipses whose height grows with span, capped by the band.
    let band = spine - margin;
    let span_max = (n.max(2) - 1) as f64;

    let mut svg = String::new();
    header(&mut svg, w, h);
    let _ = writeln!(
        svg,
        r#"<line x1="{margin:.2}" y1="{spine:.2}" x2="{:.2}" y2="{spine:.2}" stroke="black" stroke-width="1"/>"#,
        w - margin
    );
    for (i, page) in layout.pages().iter().enumerate() {
        let color = page_color(i);
        let _ = writeln!(svg, r#"<g class="page {}" data-page="{i}" stroke="{color}" fill="none">"#, page.kind);
        for &e in &page.edges {
            let (a, b) = (x(e.u()).min(x(e.v())), x(e.u()).max(x(e.v())));
            let rx = (b - a) / 2.0;
            let ry = band * ((b - a) / step.max(1.0) / span_max).max(0.08);
            // Upper arcs sweep clockwise from left to right, lower ones counter-clockwise.
            let sweep = match page.kind {
                PageKind::Stack => 1,
                PageKind::Queue => 0,
            };
            let dash = if bad.contains(&e) { r#" stroke-dasharray="4 2" stroke-width="3""# } else { r#" stroke-width="1.5""# };
            let _ = writeln!(
                svg,
                r#"<path d="M {a:.2} {spine:.2} A {rx:.2} {ry:.2} 0 0 {sweep} {b:.2} {spine:.2}"{dash}/>"#
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    for (p, &v) in layout.order().as_slice().iter().enumerate() {
        let cx = margin + step * p as f64;
        let _ = writeln!(svg, r#"<circle cx="{cx:.2}" cy="{spine:.2}" r="4" fill="black"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{cx:.2}" y="{:.2}" font-size="10" text-anchor="middle">{v}</text>"#,
            spine + 14.0
        );
    }
    write_legend(&mut svg, layout, margin, spec.height);
    svg.push_str("</svg>\n");
    svg
}

fn write_legend(svg: &mut String, layout: &LinearLayout, x: f64, top: f64) {
    for (i, page) in layout.pages().iter().enumerate() {
        let y = top + 18.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{y:.2}" width="12" height="12" fill="{}"/><text x="{:.2}" y="{:.2}" font-size="12">page {i}: {} ({} edges)</text>"#,
            page_color(i),
            x + 18.0,
            y + 10.0,
            page.kind,
            page.edges.len()
        );
    }
}

fn grid_matrix(layout: &LinearLayout, spec: &RenderSpec, bad: &BTreeSet<Edge>) -> Result<String> {
    let gi = GridIndex::of(layout)?;
    let margin = 30.0;
    let legend = 18.0 * layout.pages().len() as f64;
    let (cols, rows) = (gi.cols.len().max(1), gi.rows.len().max(1));
    let cw = (spec.width - 2.0 * margin) / cols as f64;
    let ch = (spec.height - 2.0 * margin) / rows as f64;
    let mut svg = String::new();
    header(&mut svg, spec.width, spec.height + legend);
    // Row 0 at the bottom, as in a coordinate plane.
    let cx = |c: usize| margin + cw * (c as f64 + 0.5);
    let cy = |r: usize| spec.height - margin - ch * (r as f64 + 0.5);
    let _ = writeln!(svg, r##"<g stroke="#dddddd" stroke-width="1">"##);
    for c in 0..=cols {
        let xx = margin + cw * c as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{xx:.2}" y1="{margin:.2}" x2="{xx:.2}" y2="{:.2}"/>"#,
            spec.height - margin
        );
    }
    for r in 0..=rows {
        let yy = margin + ch * r as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{margin:.2}" y1="{yy:.2}" x2="{:.2}" y2="{yy:.2}"/>"#,
            spec.width - margin
        );
    }
    svg.push_str("</g>\n");
    for (i, &v) in gi.cols.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{v}</text>"#,
            cx(i),
            spec.height - margin + 14.0
        );
    }
    for (j, &v) in gi.rows.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="end">{v}</text>"#,
            margin - 4.0,
            cy(j) + 3.0
        );
    }
    let r = (cw.min(ch) * 0.35).clamp(1.5, 8.0);
    for (i, page) in layout.pages().iter().enumerate() {
        let _ = writeln!(svg, r#"<g class="page {}" data-page="{i}" fill="{}">"#, page.kind, page_color(i));
        for &e in &page.edges {
            let (c, rr) = gi.point(e);
            let extra = if bad.contains(&e) { r#" stroke="black" stroke-width="2""# } else { "" };
            let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="{r:.2}"{extra}/>"#, cx(c), cy(rr));
        }
        svg.push_str("</g>\n");
    }
    write_legend(&mut svg, layout, margin, spec.height);
    svg.push_str("</svg>\n");
    Ok(svg)
}
