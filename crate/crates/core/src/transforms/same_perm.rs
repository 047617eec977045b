//! Turning a separated mixed layout into a pure queue layout whose column
//! and row permutations coincide.
//!
//! The `i`-th column and `i`-th row are joined by an identity edge. A
//! separated queue layout of the augmented graph is obtained from an oracle;
//! sorting the columns by the row of their identity edge restores the
//! diagonal, and a bipartite riffle split keeps everything a queue layout.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Side};
use crate::grid::GridIndex;
use crate::layout::{validate_layout, LinearLayout, Page};
use crate::order::VertexOrder;
use crate::solver::{Measure, Solver};

use super::riffle::{riffle_split_bipartite, RiffleSpec};

/// Supplies separated pure-queue layouts.
pub trait QueueOracle {
    fn separated_queue_layout(&self, graph: &Graph) -> Result<LinearLayout>;
}

impl<F> QueueOracle for F
where
    F: Fn(&Graph) -> Result<LinearLayout>,
{
    fn separated_queue_layout(&self, graph: &Graph) -> Result<LinearLayout> {
        self(graph)
    }
}

/// Minimum separated queue layouts from the exact solver.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactOracle {
    pub solver: Solver,
}

impl QueueOracle for ExactOracle {
    fn separated_queue_layout(&self, graph: &Graph) -> Result<LinearLayout> {
        Ok(self.solver.minimize(graph, Measure::Sqn)?.1)
    }
}

#[derive(Debug, Clone)]
pub struct SamePermutation {
    /// Pure queue layout of the (possibly padded) input graph.
    pub layout: LinearLayout,
    /// Queue count of the oracle layout of the augmented graph.
    pub oracle_pages: usize,
    /// Vertices added to balance the sides.
    pub padding: Vec<usize>,
}

/// Appends isolated vertices to the smaller side, placed at the end of that
/// side's block.
fn pad(layout: &LinearLayout) -> Result<(LinearLayout, Vec<usize>)> {
    let gi = GridIndex::of(layout)?;
    let (na, nb) = (gi.cols.len(), gi.rows.len());
    let n = layout.graph().n();
    let extra = na.abs_diff(nb);
    if extra == 0 {
        return Ok((layout.clone(), vec![]));
    }
    let new: Vec<usize> = (n..n + extra).collect();
    let pad_side = if na < nb { Side::A } else { Side::B };
    let mut sides = layout.graph().sides().expect("separated").to_vec();
    sides.extend(std::iter::repeat(pad_side).take(extra));
    let mut g = Graph::build(n + extra, layout.graph().edges().iter().map(|e| e.endpoints()))?;
    g.set_sides(sides)?;
    let mut cols = gi.cols.clone();
    let mut rows = gi.rows.clone();
    match pad_side {
        Side::A => cols.extend(&new),
        Side::B => rows.extend(&new),
    }
    let order: Vec<usize> = match gi.first {
        Side::A => cols.iter().chain(&rows).copied().collect(),
        Side::B => rows.iter().chain(&cols).copied().collect(),
    };
    let l = LinearLayout::new(g, VertexOrder::new(order)?, layout.pages().to_vec())?;
    Ok((l, new))
}

pub fn same_permutation_transform(
    layout: &LinearLayout,
    oracle: &dyn QueueOracle,
    allow_padding: bool,
) -> Result<SamePermutation> {
    layout.require_separated()?;
    layout.require_valid()?;
    let gi = GridIndex::of(layout)?;
    let (na, nb) = (gi.cols.len(), gi.rows.len());
    let (layout, padding) = if na != nb {
        if !allow_padding {
            return Err(Error::UnbalancedSides { a: na, b: nb });
        }
        pad(layout)?
    } else {
        (layout.clone(), vec![])
    };
    let gi = GridIndex::of(&layout)?;
    let graph = layout.graph();
    let n = graph.n();
    let mut partner = vec![usize::MAX; n];
    for (&a, &b) in gi.cols.iter().zip(&gi.rows) {
        partner[a] = b;
        partner[b] = a;
    }
    let identity: Vec<Edge> = gi.cols.iter().map(|&a| Edge::new(a, partner[a])).collect();
    let augmented = {
        let mut g = Graph::build(
            n,
            graph
                .edges()
                .iter()
                .chain(identity.iter().filter(|e| !graph.has_edge(e.u(), e.v())))
                .map(|e| e.endpoints()),
        )?;
        g.set_sides(graph.sides().expect("separated").to_vec())?;
        g
    };

    let oracle_layout = oracle.separated_queue_layout(&augmented)?;
    if oracle_layout.graph() != &augmented
        || !oracle_layout.is_pure_queue()
        || !validate_layout(&oracle_layout).is_valid()
        || !crate::layout::is_separated(&oracle_layout)?
    {
        return Err(Error::Oracle(
            "oracle must return a valid separated pure-queue layout of the augmented graph".into(),
        ));
    }
    let f = oracle_layout.pages().len();
    let sigma = oracle_layout.order();
    let page_of = oracle_layout.page_of_edges();

    // A_t: columns whose identity edge is in oracle queue t, in oracle order.
    let mut a_parts: Vec<Vec<usize>> = vec![Vec::new(); f];
    let mut b_part = Vec::new();
    for &v in sigma.as_slice() {
        match graph.side(v).expect("bipartite") {
            Side::A => a_parts[page_of[&Edge::new(v, partner[v])]].push(v),
            Side::B => b_part.push(v),
        }
    }
    a_parts.retain(|p| !p.is_empty());
    let l = a_parts.len();
    let mut cols: Vec<usize> = gi.cols.clone();
    cols.sort_by_key(|&a| sigma.position(partner[a]));
    let order: Vec<usize> = match gi.first {
        Side::A => cols.iter().chain(&b_part).copied().collect(),
        Side::B => b_part.iter().chain(&cols).copied().collect(),
    };
    let mut parts = a_parts;
    parts.push(b_part);
    let spec = RiffleSpec::new(parts, order)?;
    let riffled = riffle_split_bipartite(&oracle_layout, &spec, l)?;

    let pages: Vec<Page> = riffled
        .pages()
        .iter()
        .map(|p| {
            Page::queue(
                p.edges
                    .iter()
                    .copied()
                    .filter(|e| graph.has_edge(e.u(), e.v()))
                    .collect(),
            )
        })
        .filter(|p| !p.edges.is_empty())
        .collect();
    let out = LinearLayout::new(graph.clone(), spec.target_order, pages)?;
    debug_assert!(validate_layout(&out).is_valid());
    Ok(SamePermutation {
        layout: out,
        oracle_pages: f,
        padding,
    })
}
