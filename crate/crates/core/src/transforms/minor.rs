//! Shallow minors: branch-set maps, contraction, the rerouting graph `H`
//! that trades stacks for queues, and the queue-number inequality for
//! shallow minors.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Side};
use crate::grid::GridIndex;
use crate::layout::{LinearLayout, Page, PageKind};
use crate::order::VertexOrder;
use crate::solver::Solver;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorMap {
    /// `branch_sets[v]`: the host vertices contracted into minor vertex `v`.
    pub branch_sets: Vec<Vec<usize>>,
    pub radius: usize,
}

impl MinorMap {
    pub fn identity(n: usize) -> Self {
        MinorMap {
            branch_sets: (0..n).map(|v| vec![v]).collect(),
            radius: 0,
        }
    }
}

/// Radius of the subgraph of `adj` induced by `set`, or `None` if it is
/// disconnected.
fn induced_radius(adj: &[Vec<usize>], set: &[usize], inside: &[usize], tag: usize) -> Option<usize> {
    let mut best = None;
    for &c in set {
        let mut dist = std::collections::HashMap::new();
        dist.insert(c, 0usize);
        let mut queue = VecDeque::from([c]);
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            for &y in &adj[x] {
                if inside[y] == tag && !dist.contains_key(&y) {
                    dist.insert(y, d + 1);
                    queue.push_back(y);
                }
            }
        }
        if dist.len() < set.len() {
            return None;
        }
        let ecc = dist.values().copied().max().unwrap_or(0);
        best = Some(best.map_or(ecc, |b: usize| b.min(ecc)));
    }
    best
}

/// The minor of `h` obtained by contracting every branch set. Vertices of
/// `h` outside all branch sets are deleted.
pub fn contract(h: &Graph, map: &MinorMap) -> Result<Graph> {
    let none = usize::MAX;
    let mut owner = vec![none; h.n()];
    for (v, set) in map.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::InvalidMinorMap(format!("branch set of {v} is empty")));
        }
        for &x in set {
            if x >= h.n() {
                return Err(Error::InvalidMinorMap(format!("host vertex {x} out of range")));
            }
            if owner[x] != none {
                return Err(Error::InvalidMinorMap(format!(
                    "host vertex {x} is in branch sets {} and {v}",
                    owner[x]
                )));
            }
            owner[x] = v;
        }
    }
    let adj = h.adjacency();
    for (v, set) in map.branch_sets.iter().enumerate() {
        match induced_radius(&adj, set, &owner, v) {
            None => {
                return Err(Error::InvalidMinorMap(format!("branch set of {v} is disconnected")))
            }
            Some(r) if r > map.radius => {
                return Err(Error::InvalidMinorMap(format!(
                    "branch set of {v} has radius {r} > {}",
                    map.radius
                )))
            }
            _ => {}
        }
    }
    let edges: BTreeSet<Edge> = h
        .edges()
        .iter()
        .filter_map(|e| {
            let (a, b) = (owner[e.u()], owner[e.v()]);
            (a != none && b != none && a != b).then(|| Edge::new(a, b))
        })
        .collect();
    Ok(Graph::from_edges_dedup(map.branch_sets.len(), edges))
}

/// Where a vertex of `H` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HVertex {
    /// A vertex of the input graph.
    Original { id: usize },
    /// `u^k_i`: copy of A-vertex `id` for rerouted stack `k` (1-based).
    U { k: usize, id: usize },
    /// `v^k_j`: copy of B-vertex `id` for rerouted stack `k` (1-based).
    V { k: usize, id: usize },
}

#[derive(Debug, Clone)]
pub struct ShallowGraph {
    pub graph: Graph,
    /// Separated 1-stack (s+q-1)-queue layout of `graph`.
    pub layout: LinearLayout,
    /// Contracting it gives back the input graph.
    pub map: MinorMap,
    pub legend: Vec<HVertex>,
}

/// Moves stacks `S_1..S_{s-1}` of a separated layout into private blocks
/// `U^k × V^k` joined to `A` and `B` by matchings.
///
/// For an edge `(a, b)` of `S_k` the graph gets the path `a, u^k_a, v^k_b,
/// b`. The columns of the new grid are `A, V^1, .., V^{s-1}` and its rows,
/// bottom to top, `U^{s-1}, .., U^1, B`; every copy block keeps the order of
/// its originals. Then the last stack and all `U^k × V^k` blocks form one
/// decreasing staircase, and `A × U^k` together with `V^k × B` is one
/// increasing set per `k`.
#[allow(non_snake_case)]
pub fn build_shallow_graph_H(layout: &LinearLayout) -> Result<ShallowGraph> {
    let gi = GridIndex::of(layout)?;
    layout.require_valid()?;
    let g = layout.graph();
    let n = g.n();
    let stacks: Vec<&Page> = layout.pages().iter().filter(|p| p.kind == PageKind::Stack).collect();
    let queues: Vec<&Page> = layout.pages().iter().filter(|p| p.kind == PageKind::Queue).collect();
    let s = stacks.len();
    if s == 0 {
        return Err(Error::NothingToReroute);
    }
    let sides = g.sides().expect("separated");
    let a_side = |e: Edge| if sides[e.u()] == Side::A { (e.u(), e.v()) } else { (e.v(), e.u()) };

    let mut legend: Vec<HVertex> = (0..n).map(|id| HVertex::Original { id }).collect();
    let mut branch_sets: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut h_sides: Vec<Side> = sides.to_vec();
    // copies[k][v]: id of the copy of v for rerouted stack k
    let mut u_blocks: Vec<Vec<usize>> = Vec::new();
    let mut v_blocks: Vec<Vec<usize>> = Vec::new();
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let mut stack_edges: BTreeSet<Edge> = BTreeSet::new();
    let mut extra_queues: Vec<Vec<Edge>> = Vec::new();

    for (k0, page) in stacks[..s - 1].iter().enumerate() {
        let k = k0 + 1;
        let touched: BTreeSet<usize> = page.edges.iter().flat_map(|e| [e.u(), e.v()]).collect();
        let mut copy = vec![usize::MAX; n];
        let mut u_block = Vec::new();
        for &a in gi.cols.iter().filter(|a| touched.contains(a)) {
            copy[a] = legend.len();
            legend.push(HVertex::U { k, id: a });
            h_sides.push(Side::B);
            branch_sets[a].push(copy[a]);
            u_block.push(copy[a]);
        }
        let mut v_block = Vec::new();
        for &b in gi.rows.iter().filter(|b| touched.contains(b)) {
            copy[b] = legend.len();
            legend.push(HVertex::V { k, id: b });
            h_sides.push(Side::A);
            branch_sets[b].push(copy[b]);
            v_block.push(copy[b]);
        }
        let mut q = BTreeSet::new();
        for &e in &page.edges {
            let (a, b) = a_side(e);
            q.insert(Edge::new(a, copy[a]));
            q.insert(Edge::new(copy[b], b));
            stack_edges.insert(Edge::new(copy[a], copy[b]));
        }
        edges.extend(&q);
        extra_queues.push(q.into_iter().collect());
        u_blocks.push(u_block);
        v_blocks.push(v_block);
    }
    stack_edges.extend(&stacks[s - 1].edges);
    edges.extend(&stack_edges);
    for q in &queues {
        edges.extend(&q.edges);
    }

    let hn = legend.len();
    let mut graph = Graph::build(hn, edges.iter().map(|e| e.endpoints()))?;
    graph.set_sides(h_sides)?;
    let cols: Vec<usize> = gi.cols.iter().chain(v_blocks.iter().flatten()).copied().collect();
    let rows: Vec<usize> = u_blocks.iter().rev().flatten().chain(&gi.rows).copied().collect();
    let order: Vec<usize> = match gi.first {
        Side::A => cols.iter().chain(&rows).copied().collect(),
        Side::B => rows.iter().chain(&cols).copied().collect(),
    };
    let mut pages = vec![Page::stack(stack_edges.into_iter().collect())];
    pages.extend(queues.iter().map(|q| (*q).clone()));
    pages.extend(extra_queues.into_iter().map(Page::queue));
    let h_layout = LinearLayout::new(graph.clone(), VertexOrder::new(order)?, pages)?;
    debug_assert!(crate::layout::validate_layout(&h_layout).is_valid());
    let map = MinorMap {
        radius: if s > 1 { 1 } else { 0 },
        branch_sets,
    };
    Ok(ShallowGraph {
        graph,
        layout: h_layout,
        map,
        legend,
    })
}

/// Both sides of `qn(G) <= (2r+1) (2 qn(H))^(2r+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionBound {
    pub holds: bool,
    pub radius: usize,
    pub qn_g: usize,
    pub qn_h: usize,
    /// False when `qn_h` is the edge-count lower bound because `H` is too
    /// large for the exact solver. The right-hand side grows with `qn(H)`,
    /// so the check stays sound.
    pub qn_h_exact: bool,
    pub rhs: u128,
}

/// Lower bound on the queue number: a queue on `n` vertices has at most
/// `2n - 3` edges.
pub fn queue_number_lower_bound(g: &Graph) -> usize {
    let cap = (2 * g.n()).saturating_sub(3).max(1);
    g.m().div_ceil(cap).max(1)
}

/// Checks the inequality with exact `qn(G)`. `qn(H)` is exact when `H` has
/// at most `exact_h_cap` vertices (and fits the solver), otherwise the
/// edge-count lower bound is used.
pub fn check_contraction_bound(
    g: &Graph,
    h: &Graph,
    map: &MinorMap,
    solver: &Solver,
    exact_h_cap: usize,
) -> Result<ContractionBound> {
    let minor = contract(h, map)?;
    if minor.edges() != g.edges() || minor.n() != g.n() {
        return Err(Error::InvalidMinorMap("contraction does not give the graph".into()));
    }
    let qn_g = solver.queue_number(g)?;
    let (qn_h, qn_h_exact) = if h.n() <= exact_h_cap.min(solver.config.max_vertices) {
        (solver.queue_number(h)?, true)
    } else {
        (queue_number_lower_bound(h), false)
    };
    let r = map.radius as u32;
    let rhs = (2 * r as u128 + 1).saturating_mul((2 * qn_h as u128).saturating_pow(2 * r + 1));
    Ok(ContractionBound {
        holds: (qn_g as u128) <= rhs,
        radius: map.radius,
        qn_g,
        qn_h,
        qn_h_exact,
        rhs,
    })
}
