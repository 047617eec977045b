//! Subdividing every edge of a pure layout along a root-to-leaf path of a
//! tree, one token per path node at each end of the edge.

use std::collections::BTreeMap;

use super::{SubdivisionRecord, Tree, TreeLayout};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Side};
use crate::layout::{LinearLayout, Page, PageKind};
use crate::order::VertexOrder;

/// Mutable state shared by the constructions that start from a token
/// subdivision.
pub(crate) struct Builder {
    pub original: Graph,
    pub tree: Tree,
    pub bags: Vec<Vec<usize>>,
    pub s_of: Vec<usize>,
    pub q_of: Vec<usize>,
    pub k_of: Vec<usize>,
    pub n_host: usize,
    /// Paths from the left endpoint (in the layout order) to the right one.
    paths: BTreeMap<Edge, Vec<usize>>,
}

/// Sort key of a token inside its bag: the position of the original vertex
/// it hangs off, then left-going before right-going edges, then the far
/// endpoint (descending for stack pages, ascending for queue pages).
type TokenKey = (usize, u8, usize);

impl Builder {
    /// `pages` gives every page's kind and the leaf receiving it;
    /// `leaf_kind` gives the single page type declared at each leaf.
    pub fn new(
        graph: &Graph,
        order: &VertexOrder,
        pages: &[(PageKind, &[Edge], usize)],
        tree: Tree,
        leaf_kind: impl Fn(usize) -> PageKind,
    ) -> Result<Self> {
        let t = tree.len();
        let n = graph.n();
        let mut tokens: Vec<Vec<(TokenKey, usize)>> = vec![Vec::new(); t];
        let mut paths = BTreeMap::new();
        let mut next = n;
        let mut edges: Vec<(Edge, PageKind, usize)> = pages
            .iter()
            .flat_map(|&(kind, es, leaf)| es.iter().map(move |&e| (e, kind, leaf)))
            .collect();
        edges.sort_unstable();
        for (e, kind, leaf) in edges {
            if leaf >= t || !tree.is_leaf(leaf) {
                return Err(Error::InvalidTree(format!("node {leaf} is not a leaf")));
            }
            let (mut l, mut r) = e.endpoints();
            if order.position(l) > order.position(r) {
                std::mem::swap(&mut l, &mut r);
            }
            let (pl, pr) = (order.position(l), order.position(r));
            let far = |p: usize| match kind {
                PageKind::Stack => n - p,
                PageKind::Queue => p,
            };
            let below_root = &tree.path_from_root(leaf)[1..];
            let d = below_root.len();
            let left: Vec<usize> = (next..next + d).collect();
            let right: Vec<usize> = (next + d..next + 2 * d).rev().collect();
            next += 2 * d;
            for (i, &x) in below_root.iter().enumerate() {
                tokens[x].push(((pl, 1, far(pr)), left[i]));
                tokens[x].push(((pr, 0, far(pl)), right[i]));
            }
            let path: Vec<usize> = std::iter::once(l)
                .chain(left)
                .chain(right.into_iter().rev())
                .chain(std::iter::once(r))
                .collect();
            paths.insert(e, path);
        }
        let mut bags: Vec<Vec<usize>> = tokens
            .into_iter()
            .map(|mut ts| {
                ts.sort_unstable();
                ts.into_iter().map(|(_, id)| id).collect()
            })
            .collect();
        bags[tree.root()] = order.as_slice().to_vec();
        let mut s_of = vec![0; t];
        let mut q_of = vec![0; t];
        for x in tree.leaves() {
            match leaf_kind(x) {
                PageKind::Stack => s_of[x] = 1,
                PageKind::Queue => q_of[x] = 1,
            }
        }
        let mut k_of = vec![1; t];
        k_of[tree.root()] = 0;
        Ok(Builder {
            original: graph.clone(),
            tree,
            bags,
            s_of,
            q_of,
            k_of,
            n_host: next,
            paths,
        })
    }

    /// Subdivides every edge inside the bag of leaf `x` once more, moving
    /// the new vertices into a fresh child bag. The new tree edge needs two
    /// increasing chains and `x` becomes independent.
    pub fn push_down_leaf(&mut self, x: usize) -> usize {
        let pos: BTreeMap<usize, usize> = self.bags[x].iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut hits: Vec<((usize, usize), Edge, usize)> = Vec::new();
        for (&e, p) in &self.paths {
            for (i, w) in p.windows(2).enumerate() {
                if let (Some(&a), Some(&b)) = (pos.get(&w[0]), pos.get(&w[1])) {
                    hits.push(((a.min(b), a.max(b)), e, i));
                }
            }
        }
        hits.sort_unstable();
        let child = self.tree.add_child(x);
        let mut bag = Vec::with_capacity(hits.len());
        for (_, e, i) in hits {
            let m = self.n_host;
            self.n_host += 1;
            self.paths.get_mut(&e).unwrap().insert(i + 1, m);
            bag.push(m);
        }
        self.bags.push(bag);
        self.s_of[x] = 0;
        self.q_of[x] = 0;
        self.s_of.push(0);
        self.q_of.push(0);
        self.k_of.push(2);
        child
    }

    pub fn host(&self) -> Graph {
        Graph::from_edges_dedup(
            self.n_host,
            self.paths
                .values()
                .flat_map(|p| p.windows(2).map(|w| Edge::new(w[0], w[1]))),
        )
    }

    pub fn finish(self) -> (SubdivisionRecord, TreeLayout) {
        let host = self.host();
        let paths = self
            .paths
            .into_iter()
            .map(|(e, mut p)| {
                if p[0] != e.u() {
                    p.reverse();
                }
                (e, p)
            })
            .collect();
        let record = SubdivisionRecord {
            host,
            original: self.original,
            paths,
        };
        let tl = TreeLayout {
            tree: self.tree,
            bags: self.bags,
            s_of: self.s_of,
            q_of: self.q_of,
            k_of: self.k_of,
            coloring: None,
        };
        (record, tl)
    }
}

/// Subdivides a pure layout into a host graph with a simple tree layout on
/// `tree`: page `i` goes to the `i`-th leaf in preorder, and each of its
/// edges is subdivided twice per tree edge on the way to that leaf.
///
/// The tree must have at most two children per node and at least as many
/// leaves as the layout has pages.
pub fn subdivide_into_tree_layout(
    layout: &LinearLayout,
    tree: &Tree,
) -> Result<(SubdivisionRecord, TreeLayout)> {
    layout.require_valid()?;
    let kind = match layout.signature() {
        (0, _) => PageKind::Queue,
        (_, 0) => PageKind::Stack,
        (s, q) => {
            return Err(Error::WrongSignature {
                expected: "a pure stack or pure queue layout".into(),
                stacks: s,
                queues: q,
            })
        }
    };
    if tree.max_children() > 2 {
        return Err(Error::InvalidTree("nodes may have at most two children".into()));
    }
    let leaves = tree.leaves();
    if leaves.len() < layout.pages().len() {
        return Err(Error::InvalidTree(format!(
            "{} leaves for {} pages",
            leaves.len(),
            layout.pages().len()
        )));
    }
    let pages: Vec<(PageKind, &[Edge], usize)> = layout
        .pages()
        .iter()
        .zip(&leaves)
        .map(|(p, &leaf)| (p.kind, p.edges.as_slice(), leaf))
        .collect();
    let b = Builder::new(layout.graph(), layout.order(), &pages, tree.clone(), |_| kind)?;
    Ok(b.finish())
}

/// Subdivides every edge of a queue layout once and returns a separated
/// queue layout of the result with one more page: originals form one side
/// in their old order, division vertices the other, sorted by the span of
/// their edge.
pub fn subdivide_once_separated(layout: &LinearLayout) -> Result<(SubdivisionRecord, LinearLayout)> {
    layout.require_valid()?;
    let (s, q) = layout.signature();
    if s > 0 {
        return Err(Error::WrongSignature {
            expected: "a pure queue layout".into(),
            stacks: s,
            queues: q,
        });
    }
    let g = layout.graph();
    let order = layout.order();
    let n = g.n();
    let span = |e: Edge| {
        let (a, b) = (order.position(e.u()), order.position(e.v()));
        (a.min(b), a.max(b))
    };
    let mut edges: Vec<Edge> = g.edges().to_vec();
    edges.sort_by_key(|&e| span(e));
    let mid: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, n + i)).collect();
    let left = |e: Edge| order.vertex_at(span(e).0);
    let right = |e: Edge| order.vertex_at(span(e).1);

    let mut pages = vec![Page::queue(edges.iter().map(|&e| Edge::new(left(e), mid[&e])).collect())];
    for p in layout.pages() {
        pages.push(Page::queue(p.edges.iter().map(|&e| Edge::new(mid[&e], right(e))).collect()));
    }
    let mut host = Graph::from_edges_dedup(n + edges.len(), pages.iter().flat_map(|p| p.edges.clone()));
    let mut sides = vec![Side::A; n];
    sides.resize(n + edges.len(), Side::B);
    host.set_sides(sides)?;
    let new_order = VertexOrder::new(
        order
            .as_slice()
            .iter()
            .copied()
            .chain(n..n + edges.len())
            .collect(),
    )?;
    let paths: BTreeMap<Edge, Vec<usize>> = g
        .edges()
        .iter()
        .map(|&e| (e, vec![e.u(), mid[&e], e.v()]))
        .collect();
    let mut pages: Vec<Page> = pages.into_iter().map(|mut p| {
        p.edges.sort_unstable();
        p
    }).collect();
    pages.retain(|p| !p.edges.is_empty());
    let out = LinearLayout::new(host.clone(), new_order, pages)?;
    debug_assert!(crate::layout::validate_layout(&out).is_valid());
    let record = SubdivisionRecord {
        host,
        original: g.clone(),
        paths,
    };
    Ok((record, out))
}

