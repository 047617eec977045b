//! Typed linear layouts: a vertex order plus an edge partition into stack
//! and queue pages.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Side};
use crate::order::VertexOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PageKind {
    Stack,
    Queue,
}

impl PageKind {
    pub fn flip(self) -> PageKind {
        match self {
            PageKind::Stack => PageKind::Queue,
            PageKind::Queue => PageKind::Stack,
        }
    }
}

impl fmt::Display for PageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PageKind::Stack => f.write_str("stack"),
            PageKind::Queue => f.write_str("queue"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    pub kind: PageKind,
    pub edges: Vec<Edge>,
}

impl Page {
    pub fn new(kind: PageKind, edges: Vec<Edge>) -> Self {
        Page { kind, edges }
    }

    pub fn stack(edges: Vec<Edge>) -> Self {
        Page::new(PageKind::Stack, edges)
    }

    pub fn queue(edges: Vec<Edge>) -> Self {
        Page::new(PageKind::Queue, edges)
    }
}

/// Returns the positions of an edge's endpoints, left first.
fn span(order: &VertexOrder, e: Edge) -> Result<(usize, usize)> {
    let a = order.try_position(e.u())?;
    let b = order.try_position(e.v())?;
    Ok(if a < b { (a, b) } else { (b, a) })
}

/// True iff the endpoints of `e1` and `e2` strictly interleave under `order`.
pub fn edges_cross(order: &VertexOrder, e1: Edge, e2: Edge) -> Result<bool> {
    let (a, b) = span(order, e1)?;
    let (c, d) = span(order, e2)?;
    Ok((a < c && c < b && b < d) || (c < a && a < d && d < b))
}

/// True iff one edge's endpoints strictly enclose the other's under `order`.
pub fn edges_nest(order: &VertexOrder, e1: Edge, e2: Edge) -> Result<bool> {
    let (a, b) = span(order, e1)?;
    let (c, d) = span(order, e2)?;
    Ok((a < c && d < b) || (c < a && b < d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConflictKind {
    Cross,
    Nest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Violation {
    Conflict {
        page: usize,
        first: Edge,
        second: Edge,
        kind: ConflictKind,
    },
    MissingEdge {
        edge: Edge,
    },
    DuplicatedEdge {
        edge: Edge,
        pages: Vec<usize>,
    },
    UnknownEdge {
        page: usize,
        edge: Edge,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn conflicts(&self) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(|v| matches!(v, Violation::Conflict { .. }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearLayout {
    graph: Graph,
    order: VertexOrder,
    pages: Vec<Page>,
}

impl LinearLayout {
    /// Assembles a layout. Only shape is checked here (order length and
    /// edge endpoints in range); page validity is [`validate_layout`]'s job.
    pub fn new(graph: Graph, order: VertexOrder, pages: Vec<Page>) -> Result<Self> {
        if order.len() != graph.n() {
            return Err(Error::OrderLength {
                order: order.len(),
                graph: graph.n(),
            });
        }
        for e in pages.iter().flat_map(|p| &p.edges) {
            if e.v() >= graph.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: e.v(),
                    n: graph.n(),
                });
            }
        }
        Ok(LinearLayout { graph, order, pages })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> &VertexOrder {
        &self.order
    }

    pub fn pages(&self) -> &[Page] {
        &self.pages
    }

    pub fn into_parts(self) -> (Graph, VertexOrder, Vec<Page>) {
        (self.graph, self.order, self.pages)
    }

    /// `(number of stack pages, number of queue pages)`.
    pub fn signature(&self) -> (usize, usize) {
        let s = self.pages.iter().filter(|p| p.kind == PageKind::Stack).count();
        (s, self.pages.len() - s)
    }

    pub fn is_pure_queue(&self) -> bool {
        self.pages.iter().all(|p| p.kind == PageKind::Queue)
    }

    pub fn is_pure_stack(&self) -> bool {
        self.pages.iter().all(|p| p.kind == PageKind::Stack)
    }

    pub fn with_order(&self, order: VertexOrder) -> Result<Self> {
        LinearLayout::new(self.graph.clone(), order, self.pages.clone())
    }

    pub fn with_pages(&self, pages: Vec<Page>) -> Result<Self> {
        LinearLayout::new(self.graph.clone(), self.order.clone(), pages)
    }

    /// Drops empty pages, keeping the relative order of the others.
    pub fn without_empty_pages(mut self) -> Self {
        self.pages.retain(|p| !p.edges.is_empty());
        self
    }

    /// Page index of every edge, if each edge sits in exactly one page.
    pub fn page_of_edges(&self) -> BTreeMap<Edge, usize> {
        let mut map = BTreeMap::new();
        for (i, p) in self.pages.iter().enumerate() {
            for &e in &p.edges {
                map.entry(e).or_insert(i);
            }
        }
        map
    }

    /// The side placed first, if the layout is separated; `Ok(None)` if it
    /// is not separated.
    pub fn separated_first_side(&self) -> Result<Option<Side>> {
        let sides = self.graph.sides().ok_or(Error::NoBipartition)?;
        let n = self.order.len();
        if n == 0 {
            return Ok(Some(Side::A));
        }
        let first = sides[self.order.vertex_at(0)];
        let switches = (1..n)
            .filter(|&p| sides[self.order.vertex_at(p)] != sides[self.order.vertex_at(p - 1)])
            .count();
        Ok(if switches <= 1 { Some(first) } else { None })
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let report = validate_layout(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidLayout(format!(
                "{} violation(s), first: {:?}",
                report.violations.len(),
                report.violations[0]
            )))
        }
    }

    pub(crate) fn require_separated(&self) -> Result<Side> {
        self.separated_first_side()?.ok_or(Error::NotSeparated)
    }
}

/// Conflicting pairs inside one page, by left endpoint sweep.
fn page_conflicts(order: &VertexOrder, page: &Page, index: usize, out: &mut Vec<Violation>) {
    let mut spans: Vec<(usize, usize, Edge)> = page
        .edges
        .iter()
        .map(|&e| {
            let (a, b) = (order.position(e.u()), order.position(e.v()));
            (a.min(b), a.max(b), e)
        })
        .collect();
    spans.sort();
    for i in 0..spans.len() {
        let (a, b, e1) = spans[i];
        for &(c, d, e2) in &spans[i + 1..] {
            if c >= b {
                break;
            }
            let hit = match page.kind {
                PageKind::Stack => a < c && b < d,
                PageKind::Queue => a < c && d < b,
            };
            if hit {
                out.push(Violation::Conflict {
                    page: index,
                    first: e1,
                    second: e2,
                    kind: match page.kind {
                        PageKind::Stack => ConflictKind::Cross,
                        PageKind::Queue => ConflictKind::Nest,
                    },
                });
            }
        }
    }
}

/// Lists every defect of `layout`: conflicting pairs inside a page and
/// partition defects. An empty report means the layout is valid.
pub fn validate_layout(layout: &LinearLayout) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, page) in layout.pages.iter().enumerate() {
        for &e in &page.edges {
            if layout.graph.has_edge(e.u(), e.v()) {
                seen.entry(e).or_default().push(i);
            } else {
                violations.push(Violation::UnknownEdge { page: i, edge: e });
            }
        }
    }
    for &e in layout.graph.edges() {
        match seen.get(&e) {
            None => violations.push(Violation::MissingEdge { edge: e }),
            Some(pages) if pages.len() > 1 => violations.push(Violation::DuplicatedEdge {
                edge: e,
                pages: pages.clone(),
            }),
            _ => {}
        }
    }
    for (i, page) in layout.pages.iter().enumerate() {
        page_conflicts(&layout.order, page, i, &mut violations);
    }
    ValidationReport { violations }
}

/// True iff all of A precedes all of B, or vice versa.
pub fn is_separated(layout: &LinearLayout) -> Result<bool> {
    Ok(layout.separated_first_side()?.is_some())
}

/// Reverses the order on positions `from..=to`; pages are kept as they are.
pub fn reverse_segment(layout: &LinearLayout, from: usize, to: usize) -> Result<LinearLayout> {
    layout.with_order(layout.order.reverse_segment(from, to)?)
}

/// Reverses the A-block of a valid separated layout, turning every stack
/// into a queue and every queue into a stack.
pub fn separated_flip(layout: &LinearLayout) -> Result<LinearLayout> {
    let first = layout.require_separated()?;
    layout.require_valid()?;
    let a_len = layout
        .graph
        .sides()
        .expect("separated implies bipartition")
        .iter()
        .filter(|&&s| s == Side::A)
        .count();
    let n = layout.graph.n();
    let flipped = if a_len == 0 {
        layout.clone()
    } else {
        let (from, to) = match first {
            Side::A => (0, a_len - 1),
            Side::B => (n - a_len, n - 1),
        };
        reverse_segment(layout, from, to)?
    };
    let pages = flipped
        .pages
        .iter()
        .map(|p| Page::new(p.kind.flip(), p.edges.clone()))
        .collect();
    flipped.with_pages(pages)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(v: &[usize]) -> VertexOrder {
        VertexOrder::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cross_and_nest_basics() {
        let o = ord(&[0, 1, 2, 3]);
        let e = Edge::new;
        assert!(edges_cross(&o, e(0, 2), e(1, 3)).unwrap());
        assert!(!edges_cross(&o, e(0, 3), e(1, 2)).unwrap());
        assert!(!edges_cross(&o, e(0, 2), e(2, 3)).unwrap());
        assert!(edges_nest(&o, e(0, 3), e(1, 2)).unwrap());
        assert!(!edges_nest(&o, e(0, 2), e(1, 3)).unwrap());
        assert!(!edges_nest(&o, e(0, 1), e(1, 3)).unwrap());
        assert!(edges_cross(&o, e(0, 7), e(1, 2)).is_err());
    }

    #[test]
    fn path_in_one_queue_is_valid() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let l = LinearLayout::new(
            g,
            VertexOrder::identity(3),
            vec![Page::queue(vec![Edge::new(0, 1), Edge::new(1, 2)])],
        )
        .unwrap();
        assert!(validate_layout(&l).is_valid());
    }

    #[test]
    fn partition_defects_are_reported() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let l = LinearLayout::new(
            g,
            VertexOrder::identity(4),
            vec![
                Page::queue(vec![Edge::new(0, 1), Edge::new(0, 3)]),
                Page::stack(vec![Edge::new(0, 1)]),
            ],
        )
        .unwrap();
        let r = validate_layout(&l);
        assert!(r.violations.contains(&Violation::UnknownEdge {
            page: 0,
            edge: Edge::new(0, 3)
        }));
        assert!(r.violations.contains(&Violation::MissingEdge { edge: Edge::new(1, 2) }));
        assert!(r.violations.contains(&Violation::DuplicatedEdge {
            edge: Edge::new(0, 1),
            pages: vec![0, 1]
        }));
    }

    #[test]
    fn separation_checks() {
        let g = Graph::new(4, [(0, 2), (1, 3)])
            .unwrap()
            .with_bipartition(&[0, 1], &[2, 3])
            .unwrap();
        let mk = |o: &[usize]| LinearLayout::new(g.clone(), ord(o), vec![]).unwrap();
        assert!(is_separated(&mk(&[0, 1, 2, 3])).unwrap());
        assert!(!is_separated(&mk(&[0, 2, 1, 3])).unwrap());
        assert!(is_separated(&mk(&[3, 2, 1, 0])).unwrap());
        let plain = Graph::new(2, [(0, 1)]).unwrap();
        let l = LinearLayout::new(plain, VertexOrder::identity(2), vec![]).unwrap();
        assert_eq!(is_separated(&l), Err(Error::NoBipartition));
    }

    #[test]
    fn reversal_round_trip() {
        let g = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        let l = LinearLayout::new(g, VertexOrder::identity(4), vec![]).unwrap();
        let r = reverse_segment(&reverse_segment(&l, 0, 3).unwrap(), 0, 3).unwrap();
        assert_eq!(r, l);
        assert_eq!(reverse_segment(&l, 2, 2).unwrap(), l);
        assert!(reverse_segment(&l, 0, 4).is_err());
    }
}
