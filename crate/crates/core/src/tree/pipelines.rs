//! Subdivisions that bring any mixed layout down to a fixed page budget.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::tokens::Builder;
use super::{ceil_log2, tree_layout_to_mixed, EdgeColor, SubdivisionRecord, Tree};
use crate::error::{Error, Result};
use crate::graph::{Edge, Side};
use crate::layout::{validate_layout, LinearLayout, Page, PageKind};
use crate::transforms::{contract, separate, MinorMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pipeline {
    /// Any mixed layout to a 3-stack subdivision.
    #[serde(rename = "3stack")]
    ThreeStack,
    /// Any mixed layout to a 1-stack 1-queue subdivision.
    #[serde(rename = "1s1q")]
    OneStackOneQueue,
    /// Separated 1-stack q-queue layouts to separated 1-stack 6-queue ones.
    #[serde(rename = "sep-1s6q")]
    SeparatedSixQueue,
}

impl Pipeline {
    pub const ALL: [Pipeline; 3] = [
        Pipeline::ThreeStack,
        Pipeline::OneStackOneQueue,
        Pipeline::SeparatedSixQueue,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::ThreeStack => "3stack",
            Pipeline::OneStackOneQueue => "1s1q",
            Pipeline::SeparatedSixQueue => "sep-1s6q",
        }
    }

    pub fn run(self, layout: &LinearLayout) -> Result<(SubdivisionRecord, LinearLayout)> {
        match self {
            Pipeline::ThreeStack => mixed_to_3stack_subdivision(layout),
            Pipeline::OneStackOneQueue => mixed_to_1s1q_subdivision(layout),
            Pipeline::SeparatedSixQueue => separated_1sq_to_1s6q_subdivision(layout),
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pipeline::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown pipeline {s:?}")))
    }
}

/// Pages split by kind, keeping their relative order.
fn pages_by_kind(layout: &LinearLayout) -> (Vec<&Page>, Vec<&Page>) {
    layout.pages().iter().partition(|p| p.kind == PageKind::Stack)
}

fn height_for(layout: &LinearLayout) -> usize {
    let (s, q) = layout.signature();
    ceil_log2(s.max(q))
}

/// Hangs a complete binary tree of the given height below `at` with every
/// tree edge subdivided by one extra node.
fn grow_subdivided_binary(tree: &mut Tree, at: usize, height: usize) {
    if height == 0 {
        return;
    }
    for _ in 0..2 {
        let mid = tree.add_child(at);
        let c = tree.add_child(mid);
        grow_subdivided_binary(tree, c, height - 1);
    }
}

fn finish_checked(
    b: Builder,
    node_order: &[usize],
    coloring: Vec<EdgeColor>,
) -> Result<(SubdivisionRecord, LinearLayout)> {
    let (record, mut tl) = b.finish();
    tl.coloring = Some(coloring);
    let out = tree_layout_to_mixed(&record.host, &tl, node_order)?;
    Ok((record, out))
}

/// Subdivides stack edges `2h+2` and queue edges `2h+3` times, with
/// `h = ⌈log₂ max(s, q)⌉`, and lays the result out in 3 stacks.
///
/// Stack pages sit at the leaves of one binary subtree below the root and
/// queue pages at the leaves of another; the queue leaves then push their
/// edges one level further down, which turns each queue into two
/// increasing chains that a reversed child bag makes into stacks.
pub fn mixed_to_3stack_subdivision(layout: &LinearLayout) -> Result<(SubdivisionRecord, LinearLayout)> {
    layout.require_valid()?;
    let h = height_for(layout);
    let (stacks, queues) = pages_by_kind(layout);
    let mut tree = Tree::single();
    let mut assign = Vec::new();
    let mut queue_leaves = Vec::new();
    for (pages, kind) in [(&stacks, PageKind::Stack), (&queues, PageKind::Queue)] {
        if pages.is_empty() {
            continue;
        }
        let c = tree.add_child(0);
        tree.grow_binary(c, h);
        let leaves = tree.leaves_from(c);
        for (p, &leaf) in pages.iter().zip(&leaves) {
            assign.push((kind, p.edges.as_slice(), leaf));
        }
        if kind == PageKind::Queue {
            queue_leaves = leaves;
        }
    }
    let is_queue_leaf = |x: usize| queue_leaves.contains(&x);
    let kind_of = |x: usize| {
        if is_queue_leaf(x) {
            PageKind::Queue
        } else {
            PageKind::Stack
        }
    };
    let mut b = Builder::new(layout.graph(), layout.order(), &assign, tree, kind_of)?;
    for &x in &queue_leaves {
        b.push_down_leaf(x);
    }
    let order = b.tree.preorder();
    let coloring = vec![EdgeColor::Blue; b.tree.len()];
    let (record, out) = finish_checked(b, &order, coloring)?;
    debug_assert!(out.is_pure_stack() && out.signature().0 <= 3);
    Ok((record, out))
}

/// Subdivides stack edges `4h+4` and queue edges `4h+6` times and lays the
/// result out in one stack and one queue.
///
/// The tree is the one used for [`mixed_to_3stack_subdivision`] with every
/// edge subdivided, plus one more level below the queue leaves. The two
/// edges leaving a branching node are coloured blue and red, all other
/// edges red except the ones into the extra queue leaves, and nodes are
/// ordered level by level: blue children by reversed parent position,
/// then red children by parent position.
pub fn mixed_to_1s1q_subdivision(layout: &LinearLayout) -> Result<(SubdivisionRecord, LinearLayout)> {
    layout.require_valid()?;
    let h = height_for(layout);
    let (stacks, queues) = pages_by_kind(layout);
    let mut tree = Tree::single();
    let mut assign = Vec::new();
    let mut queue_leaves = Vec::new();
    let mut side_root = Vec::new();
    for (pages, kind) in [(&stacks, PageKind::Stack), (&queues, PageKind::Queue)] {
        if pages.is_empty() {
            continue;
        }
        let mid = tree.add_child(0);
        side_root.push((mid, kind));
        let c = tree.add_child(mid);
        grow_subdivided_binary(&mut tree, c, h);
        let mut leaves = tree.leaves_from(c);
        if kind == PageKind::Queue {
            leaves = leaves.into_iter().map(|x| tree.add_child(x)).collect();
            queue_leaves = leaves.clone();
        }
        for (p, &leaf) in pages.iter().zip(&leaves) {
            assign.push((kind, p.edges.as_slice(), leaf));
        }
    }

    let t = tree.len();
    let mut coloring = vec![EdgeColor::Red; t];
    for x in 0..t {
        match tree.children(x) {
            [a, b] => {
                coloring[*a] = EdgeColor::Blue;
                coloring[*b] = EdgeColor::Red;
            }
            _ => {}
        }
    }
    for &(mid, kind) in &side_root {
        coloring[mid] = match kind {
            PageKind::Stack => EdgeColor::Blue,
            PageKind::Queue => EdgeColor::Red,
        };
    }
    for &x in &queue_leaves {
        coloring[x] = EdgeColor::Blue;
    }

    let mut order = vec![0];
    let mut level = vec![0];
    while !level.is_empty() {
        let mut blue = Vec::new();
        let mut red = Vec::new();
        for &y in &level {
            for &z in tree.children(y) {
                match coloring[z] {
                    EdgeColor::Blue => blue.push(z),
                    EdgeColor::Red => red.push(z),
                }
            }
        }
        // `level` is in order, so its children come grouped by parent position.
        blue.reverse();
        level = blue.into_iter().chain(red).collect();
        order.extend(&level);
    }

    let queue_set = queue_leaves.clone();
    let kind_of = move |x: usize| {
        if queue_set.contains(&x) {
            PageKind::Queue
        } else {
            PageKind::Stack
        }
    };
    let b = Builder::new(layout.graph(), layout.order(), &assign, tree, kind_of)?;
    let (record, out) = finish_checked(b, &order, coloring)?;
    debug_assert!(out.signature().0 <= 1 && out.signature().1 <= 1);
    Ok((record, out))
}

/// Subdivides the queue edges of a separated 1-stack q-queue layout
/// `2⌈log₂ q⌉` times, leaves the stack edges alone, and returns a separated
/// layout with one stack and at most six queues.
pub fn separated_1sq_to_1s6q_subdivision(layout: &LinearLayout) -> Result<(SubdivisionRecord, LinearLayout)> {
    layout.require_valid()?;
    let first = layout.require_separated()?;
    let (s, q) = layout.signature();
    if s > 1 {
        return Err(Error::WrongSignature {
            expected: "(1, q)".into(),
            stacks: s,
            queues: q,
        });
    }
    let g = layout.graph();
    let (stacks, queues) = pages_by_kind(layout);
    let stack_edges: Vec<Edge> = stacks.iter().flat_map(|p| p.edges.clone()).collect();
    let queue_graph = g.edge_subgraph(queues.iter().flat_map(|p| p.edges.clone()));

    let tree = Tree::complete_binary(ceil_log2(q));
    let leaves = tree.leaves();
    let assign: Vec<(PageKind, &[Edge], usize)> = queues
        .iter()
        .zip(&leaves)
        .map(|(p, &leaf)| (PageKind::Queue, p.edges.as_slice(), leaf))
        .collect();
    let order = tree.bfs();
    let b = Builder::new(&queue_graph, layout.order(), &assign, tree, |_| PageKind::Queue)?;
    let n_host = b.n_host;
    let coloring = vec![EdgeColor::Red; b.tree.len()];
    let (queue_record, queue_layout) = finish_checked(b, &order, coloring)?;

    // Sides alternate along each path; the originals keep theirs.
    let sides_orig = g.sides().expect("separated layouts are bipartitioned");
    let mut sides = vec![Side::A; n_host];
    sides[..g.n()].copy_from_slice(sides_orig);
    for p in queue_record.paths.values() {
        for (i, &v) in p.iter().enumerate().skip(1) {
            sides[v] = if i % 2 == 0 { sides[p[0]] } else { sides[p[0]].flip() };
        }
    }
    let (mut dq, dq_order, dq_pages) = queue_layout.into_parts();
    dq.set_sides(sides.clone())?;
    let separated = separate(&LinearLayout::new(dq, dq_order, dq_pages)?)?;
    debug_assert_eq!(separated.separated_first_side()?, Some(first));

    let mut paths = queue_record.paths;
    for &e in &stack_edges {
        paths.insert(e, vec![e.u(), e.v()]);
    }
    let mut host = crate::graph::Graph::from_edges_dedup(
        n_host,
        paths.values().flat_map(|p| p.windows(2).map(|w| Edge::new(w[0], w[1]))),
    );
    host.set_sides(sides)?;
    let mut pages = Vec::new();
    if !stack_edges.is_empty() {
        pages.push(Page::stack(stack_edges));
    }
    let (_, order, queue_pages) = separated.into_parts();
    pages.extend(queue_pages);
    let out = LinearLayout::new(host.clone(), order, pages)?;
    debug_assert!(validate_layout(&out).is_valid());
    let record = SubdivisionRecord {
        host,
        original: g.clone(),
        paths,
    };
    Ok((record, out))
}

/// Contracts every path back to its edge: the first half of the division
/// vertices (rounded up) joins `e.u()`'s branch set, the rest `e.v()`'s.
/// The map's radius is the largest half-path length.
pub fn contract_subdivision(rec: &SubdivisionRecord) -> Result<(crate::graph::Graph, MinorMap)> {
    rec.validate()?;
    let n = rec.original.n();
    let mut branch_sets: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut radius = 0;
    for (e, p) in &rec.paths {
        let inner = &p[1..p.len() - 1];
        let k = inner.len();
        let half = k.div_ceil(2);
        branch_sets[e.u()].extend(&inner[..half]);
        branch_sets[e.v()].extend(&inner[half..]);
        radius = radius.max(half);
    }
    for set in &mut branch_sets {
        set.sort_unstable();
    }
    let map = MinorMap { branch_sets, radius };
    let mut g = contract(&rec.host, &map)?;
    if let Some(sides) = rec.original.sides() {
        g.set_sides(sides.to_vec())?;
    }
    Ok((g, map))
}

