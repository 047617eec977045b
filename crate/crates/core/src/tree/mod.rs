//! Tree-partitions with ordered bags, the subdivisions built from them, and
//! their assembly back into linear layouts.
//!
//! A [`TreeLayout`] assigns every host vertex to a bag at a node of a rooted
//! tree. Host edges run inside a bag or between the bags of a tree edge.
//! `S(x)`/`Q(x)` bound the pages needed by the edges inside bag `x`, and
//! `K(x, y)` the number of increasing chains formed by the edges between
//! `x` and its child `y` (each chain is a queue when the bags are
//! concatenated as they are, and a stack when the child is reversed).

mod assemble;
mod tokens;
mod pipelines;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::grid::increasing_chain_cover;
use crate::layout::PageKind;

pub use assemble::{lambda_values, tree_layout_to_mixed};
pub use tokens::{subdivide_into_tree_layout, subdivide_once_separated};
pub use pipelines::{
    contract_subdivision, mixed_to_1s1q_subdivision, mixed_to_3stack_subdivision,
    separated_1sq_to_1s6q_subdivision, Pipeline,
};

/// A rooted tree on nodes `0..len`; node 0 is the root and children are
/// kept in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl Default for Tree {
    fn default() -> Self {
        Tree::single()
    }
}

impl Tree {
    /// Just the root.
    pub fn single() -> Self {
        Tree {
            parent: vec![None],
            children: vec![vec![]],
        }
    }

    /// Builds from parent links; node 0 must be the only root and every
    /// other node's parent must have a smaller index.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        let mut t = Tree {
            parent: vec![None],
            children: vec![vec![]],
        };
        if parents.first() != Some(&None) {
            return Err(Error::InvalidTree("node 0 must be the root".into()));
        }
        for (x, p) in parents.iter().enumerate().skip(1) {
            match *p {
                Some(p) if p < x => {
                    t.add_child(p);
                }
                _ => {
                    return Err(Error::InvalidTree(format!(
                        "node {x} needs a parent with a smaller index"
                    )))
                }
            }
        }
        Ok(t)
    }

    pub fn complete_binary(height: usize) -> Self {
        let mut t = Tree::single();
        t.grow_binary(0, height);
        t
    }

    /// Hangs a complete binary tree of the given height below `at`
    /// (`at` is its root).
    pub fn grow_binary(&mut self, at: usize, height: usize) {
        if height == 0 {
            return;
        }
        for _ in 0..2 {
            let c = self.add_child(at);
            self.grow_binary(c, height - 1);
        }
    }

    pub fn add_child(&mut self, p: usize) -> usize {
        let id = self.parent.len();
        self.parent.push(Some(p));
        self.children.push(Vec::new());
        self.children[p].push(id);
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    pub fn is_leaf(&self, x: usize) -> bool {
        self.children[x].is_empty()
    }

    pub fn depth(&self, mut x: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[x] {
            x = p;
            d += 1;
        }
        d
    }

    pub fn height(&self) -> usize {
        (0..self.len()).map(|x| self.depth(x)).max().unwrap_or(0)
    }

    /// Nodes on the path from the root to `x`, both included.
    pub fn path_from_root(&self, mut x: usize) -> Vec<usize> {
        let mut path = vec![x];
        while let Some(p) = self.parent[x] {
            path.push(p);
            x = p;
        }
        path.reverse();
        path
    }

    pub fn preorder(&self) -> Vec<usize> {
        self.preorder_from(0)
    }

    pub fn preorder_from(&self, start: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.children[x].iter().rev());
        }
        out
    }

    pub fn bfs(&self) -> Vec<usize> {
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            out.extend(&self.children[out[i]]);
            i += 1;
        }
        out
    }

    /// Leaves below `start` in preorder.
    pub fn leaves_from(&self, start: usize) -> Vec<usize> {
        self.preorder_from(start)
            .into_iter()
            .filter(|&x| self.is_leaf(x))
            .collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.leaves_from(0)
    }

    pub fn max_children(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColor {
    Blue,
    Red,
}

/// A tree-partition with ordered bags and page budgets.
///
/// Per-node vectors are indexed by node; `k_of[y]` and `coloring[y]` belong
/// to the tree edge from `y`'s parent to `y` (the root entries are unused).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeLayout {
    pub tree: Tree,
    pub bags: Vec<Vec<usize>>,
    pub s_of: Vec<usize>,
    pub q_of: Vec<usize>,
    pub k_of: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<EdgeColor>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TreeViolation {
    Shape { detail: String },
    VertexNotInBag { vertex: usize },
    VertexInTwoBags { vertex: usize, nodes: [usize; 2] },
    /// The edge's bags are neither equal nor joined by a tree edge.
    EdgeNotRespected { edge: Edge, nodes: [usize; 2] },
    /// Edges inside the bag do not fit into `S(x)` stacks and `Q(x)` queues.
    IntraBudget { node: usize, stacks: usize, queues: usize },
    /// More increasing chains between the bags than `K` allows.
    InterBudget { child: usize, declared: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SimplicityIssue {
    InnerBagNotIndependent { node: usize },
    LeafNotOnePage { node: usize, stacks: usize, queues: usize },
    KNotOne { child: usize, k: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeValidationReport {
    pub violations: Vec<TreeViolation>,
    /// Departures from a simple T-layout; these do not make it invalid.
    pub simplicity: Vec<SimplicityIssue>,
}

impl TreeValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.is_valid() && self.simplicity.is_empty()
    }
}

/// Host edges sorted into the bags they live in.
pub(crate) struct EdgeSplit {
    /// Edges inside each bag, as positions `(l, r)` in the bag order.
    pub intra: Vec<Vec<(Edge, usize, usize)>>,
    /// Edges from the parent's bag to each node's bag, as
    /// `(position in parent bag, position in child bag)`.
    pub inter: Vec<Vec<(Edge, usize, usize)>>,
}

pub(crate) struct BagIndex {
    pub node: Vec<usize>,
    pub pos: Vec<usize>,
}

impl TreeLayout {
    fn shape_errors(&self, host: &Graph) -> Option<String> {
        let t = self.tree.len();
        if [self.bags.len(), self.s_of.len(), self.q_of.len(), self.k_of.len()]
            .iter()
            .any(|&l| l != t)
        {
            return Some(format!("per-node vectors must have {t} entries"));
        }
        if let Some(c) = &self.coloring {
            if c.len() != t {
                return Some(format!("coloring must have {t} entries"));
            }
        }
        if let Some(v) = self.bags.iter().flatten().find(|&&v| v >= host.n()) {
            return Some(format!("bag vertex {v} is not a host vertex"));
        }
        None
    }

    pub(crate) fn bag_index(&self, host: &Graph) -> std::result::Result<BagIndex, Vec<TreeViolation>> {
        let none = usize::MAX;
        let mut node = vec![none; host.n()];
        let mut pos = vec![none; host.n()];
        let mut errs = Vec::new();
        for (x, bag) in self.bags.iter().enumerate() {
            for (i, &v) in bag.iter().enumerate() {
                if node[v] != none {
                    errs.push(TreeViolation::VertexInTwoBags {
                        vertex: v,
                        nodes: [node[v], x],
                    });
                } else {
                    node[v] = x;
                    pos[v] = i;
                }
            }
        }
        for (v, &x) in node.iter().enumerate() {
            if x == none {
                errs.push(TreeViolation::VertexNotInBag { vertex: v });
            }
        }
        if errs.is_empty() {
            Ok(BagIndex { node, pos })
        } else {
            Err(errs)
        }
    }

    pub(crate) fn split_edges(
        &self,
        host: &Graph,
        idx: &BagIndex,
    ) -> std::result::Result<EdgeSplit, Vec<TreeViolation>> {
        let t = self.tree.len();
        let mut intra = vec![Vec::new(); t];
        let mut inter = vec![Vec::new(); t];
        let mut errs = Vec::new();
        for &e in host.edges() {
            let (x, y) = (idx.node[e.u()], idx.node[e.v()]);
            let (pu, pv) = (idx.pos[e.u()], idx.pos[e.v()]);
            if x == y {
                intra[x].push((e, pu.min(pv), pu.max(pv)));
            } else if self.tree.parent(y) == Some(x) {
                inter[y].push((e, pu, pv));
            } else if self.tree.parent(x) == Some(y) {
                inter[x].push((e, pv, pu));
            } else {
                errs.push(TreeViolation::EdgeNotRespected { edge: e, nodes: [x, y] });
            }
        }
        if errs.is_empty() {
            Ok(EdgeSplit { intra, inter })
        } else {
            Err(errs)
        }
    }
}

/// Assigns spans `(l, r)` (with `l < r`) under a fixed order to pages of the
/// given kinds, or `None` if impossible. Plain backtracking: bags are small.
pub(crate) fn assign_fixed_order(spans: &[(usize, usize)], kinds: &[PageKind]) -> Option<Vec<usize>> {
    fn clash(kind: PageKind, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        match kind {
            PageKind::Stack => (a < c && c < b && b < d) || (c < a && a < d && d < b),
            PageKind::Queue => (a < c && d < b) || (c < a && b < d),
        }
    }
    fn go(
        i: usize,
        idx: &[usize],
        spans: &[(usize, usize)],
        kinds: &[PageKind],
        pages: &mut Vec<Vec<usize>>,
        out: &mut Vec<usize>,
    ) -> bool {
        if i == idx.len() {
            return true;
        }
        let e = idx[i];
        let mut tried_empty = [false; 2];
        for p in 0..kinds.len() {
            if pages[p].is_empty() {
                let slot = kinds[p] as usize;
                if tried_empty[slot] {
                    continue;
                }
                tried_empty[slot] = true;
            }
            if pages[p].iter().any(|&f| clash(kinds[p], spans[e], spans[f])) {
                continue;
            }
            pages[p].push(e);
            out[e] = p;
            if go(i + 1, idx, spans, kinds, pages, out) {
                return true;
            }
            pages[p].pop();
        }
        false
    }
    let mut idx: Vec<usize> = (0..spans.len()).collect();
    idx.sort_by_key(|&i| spans[i]);
    let mut pages = vec![Vec::new(); kinds.len()];
    let mut out = vec![0; spans.len()];
    go(0, &idx, spans, kinds, &mut pages, &mut out).then_some(out)
}

pub(crate) fn budget_kinds(s: usize, q: usize) -> Vec<PageKind> {
    std::iter::repeat(PageKind::Stack)
        .take(s)
        .chain(std::iter::repeat(PageKind::Queue).take(q))
        .collect()
}

/// Checks the T-partition property, the declared budgets against the bag
/// orders, and reports where the layout is not simple.
pub fn validate_tree_layout(host: &Graph, tl: &TreeLayout) -> TreeValidationReport {
    let mut report = TreeValidationReport::default();
    if let Some(detail) = tl.shape_errors(host) {
        report.violations.push(TreeViolation::Shape { detail });
        return report;
    }
    let idx = match tl.bag_index(host) {
        Ok(i) => i,
        Err(v) => {
            report.violations = v;
            return report;
        }
    };
    let split = match tl.split_edges(host, &idx) {
        Ok(s) => s,
        Err(v) => {
            report.violations = v;
            return report;
        }
    };
    for x in 0..tl.tree.len() {
        let spans: Vec<(usize, usize)> = split.intra[x].iter().map(|&(_, l, r)| (l, r)).collect();
        let (s, q) = (tl.s_of[x], tl.q_of[x]);
        let fits = spans.is_empty()
            || (s + q > 0 && assign_fixed_order(&spans, &budget_kinds(s, q)).is_some());
        if !fits {
            report.violations.push(TreeViolation::IntraBudget {
                node: x,
                stacks: s,
                queues: q,
            });
        }
        if x != tl.tree.root() {
            let points: Vec<(usize, usize)> = split.inter[x].iter().map(|&(_, a, b)| (a, b)).collect();
            let actual = increasing_chain_cover(&points).len();
            if actual > tl.k_of[x] {
                report.violations.push(TreeViolation::InterBudget {
                    child: x,
                    declared: tl.k_of[x],
                    actual,
                });
            }
            if tl.k_of[x] != 1 {
                report.simplicity.push(SimplicityIssue::KNotOne { child: x, k: tl.k_of[x] });
            }
        }
        if tl.tree.is_leaf(x) {
            if s + q != 1 {
                report.simplicity.push(SimplicityIssue::LeafNotOnePage {
                    node: x,
                    stacks: s,
                    queues: q,
                });
            }
        } else if s + q != 0 || !spans.is_empty() {
            report.simplicity.push(SimplicityIssue::InnerBagNotIndependent { node: x });
        }
    }
    report
}

/// A subdivision together with the path replacing every original edge.
///
/// `paths[e]` runs from `e.u()` to `e.v()`; its inner vertices are the
/// division vertices of `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionRecord {
    pub host: Graph,
    pub original: Graph,
    pub paths: BTreeMap<Edge, Vec<usize>>,
}

impl SubdivisionRecord {
    pub fn identity(graph: &Graph) -> Self {
        SubdivisionRecord {
            host: graph.clone(),
            original: graph.clone(),
            paths: graph.edges().iter().map(|&e| (e, vec![e.u(), e.v()])).collect(),
        }
    }

    pub fn division_count(&self, e: Edge) -> Option<usize> {
        self.paths.get(&e).map(|p| p.len() - 2)
    }

    pub fn max_division_count(&self) -> usize {
        self.paths.values().map(|p| p.len() - 2).max().unwrap_or(0)
    }

    /// Checks endpoints, disjointness of the inner vertices, and that the
    /// host edges are exactly the consecutive pairs of the paths.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidRecord(m));
        let n = self.original.n();
        if self.paths.keys().ne(self.original.edges().iter()) {
            return bad("paths must cover exactly the original edges".into());
        }
        let mut seen = vec![false; self.host.n()];
        let mut edges = Vec::new();
        for (e, p) in &self.paths {
            if p.len() < 2 || p[0] != e.u() || p[p.len() - 1] != e.v() {
                return bad(format!("path of {e} has wrong endpoints"));
            }
            for &d in &p[1..p.len() - 1] {
                if d < n || d >= self.host.n() || std::mem::replace(&mut seen[d], true) {
                    return bad(format!("division vertex {d} of {e} is invalid or shared"));
                }
            }
            edges.extend(p.windows(2).map(|w| Edge::new(w[0], w[1])));
        }
        if (n..self.host.n()).any(|d| !seen[d]) {
            return bad("host has vertices on no path".into());
        }
        edges.sort_unstable();
        if edges != self.host.edges() {
            return bad("host edges differ from the paths".into());
        }
        Ok(())
    }
}

pub(crate) fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}
