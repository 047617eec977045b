//! The reduced adjacency matrix of a separated layout.
//!
//! Side A vertices are columns and side B vertices are rows, both indexed
//! in layout order. A page is a queue iff its points are weakly increasing
//! and a stack iff they are weakly decreasing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Side};
use crate::layout::LinearLayout;
use crate::order::VertexOrder;

/// A lattice point `(column, row)`.
pub type Point = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRepresentation {
    /// A-vertices, left to right.
    pub cols: Vec<usize>,
    /// B-vertices, bottom to top.
    pub rows: Vec<usize>,
    /// One point per edge, sorted.
    pub points: Vec<Point>,
}

/// Column and row index of every vertex in a separated layout.
#[derive(Debug, Clone)]
pub(crate) struct GridIndex {
    pub cols: Vec<usize>,
    pub rows: Vec<usize>,
    pub index: Vec<usize>,
    pub side: Vec<Side>,
    pub first: Side,
}

impl GridIndex {
    pub fn of(layout: &LinearLayout) -> Result<Self> {
        let first = layout.require_separated()?;
        let side = layout.graph().sides().expect("separated").to_vec();
        let mut cols = Vec::new();
        let mut rows = Vec::new();
        let mut index = vec![0; side.len()];
        for &v in layout.order().as_slice() {
            match side[v] {
                Side::A => {
                    index[v] = cols.len();
                    cols.push(v);
                }
                Side::B => {
                    index[v] = rows.len();
                    rows.push(v);
                }
            }
        }
        Ok(GridIndex {
            cols,
            rows,
            index,
            side,
            first,
        })
    }

    pub fn point(&self, e: crate::graph::Edge) -> Point {
        let (a, b) = if self.side[e.u()] == Side::A {
            (e.u(), e.v())
        } else {
            (e.v(), e.u())
        };
        (self.index[a], self.index[b])
    }

    /// Rebuilds a separated order from permuted column and row lists, keeping
    /// the side arrangement of the original layout.
    pub fn order_from(&self, cols: &[usize], rows: &[usize]) -> VertexOrder {
        let order: Vec<usize> = match self.first {
            Side::A => cols.iter().chain(rows).copied().collect(),
            Side::B => rows.iter().chain(cols).copied().collect(),
        };
        VertexOrder::new(order).expect("columns and rows cover all vertices")
    }
}

/// Grid view of a separated layout.
pub fn to_grid(layout: &LinearLayout) -> Result<GridRepresentation> {
    let gi = GridIndex::of(layout)?;
    let mut points: Vec<Point> = layout.graph().edges().iter().map(|&e| gi.point(e)).collect();
    points.sort_unstable();
    Ok(GridRepresentation {
        cols: gi.cols,
        rows: gi.rows,
        points,
    })
}

/// Points of every page of a separated layout, page by page.
pub fn page_points(layout: &LinearLayout) -> Result<Vec<Vec<Point>>> {
    let gi = GridIndex::of(layout)?;
    Ok(layout
        .pages()
        .iter()
        .map(|p| p.edges.iter().map(|&e| gi.point(e)).collect())
        .collect())
}

/// Inverse of [`to_grid`]: the bipartite graph and its A-first separated
/// order.
pub fn from_grid(grid: &GridRepresentation) -> Result<(Graph, VertexOrder)> {
    let n = grid.cols.len() + grid.rows.len();
    let mut sides = vec![None; n];
    for (list, side) in [(&grid.cols, Side::A), (&grid.rows, Side::B)] {
        for &v in list {
            if v >= n || sides[v].is_some() {
                return Err(Error::InvalidBipartition(format!(
                    "grid vertex {v} is out of range or repeated"
                )));
            }
            sides[v] = Some(side);
        }
    }
    let mut edges = Vec::with_capacity(grid.points.len());
    for &(c, r) in &grid.points {
        let (Some(&a), Some(&b)) = (grid.cols.get(c), grid.rows.get(r)) else {
            return Err(Error::VertexOutOfRange {
                vertex: c.max(r),
                n: grid.cols.len().max(grid.rows.len()),
            });
        };
        edges.push((a, b));
    }
    let mut g = Graph::build(n, edges)?;
    g.set_sides(sides.into_iter().map(Option::unwrap).collect())?;
    let order = VertexOrder::new(grid.cols.iter().chain(&grid.rows).copied().collect())?;
    Ok((g, order))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonotoneClass {
    Increasing,
    Decreasing,
    Both,
    Neither,
}

impl MonotoneClass {
    pub fn is_increasing(self) -> bool {
        matches!(self, MonotoneClass::Increasing | MonotoneClass::Both)
    }

    pub fn is_decreasing(self) -> bool {
        matches!(self, MonotoneClass::Decreasing | MonotoneClass::Both)
    }
}

/// Whether a point set is weakly increasing, weakly decreasing, both
/// (a single row, column or point) or neither.
pub fn monotone_class(points: &[Point]) -> MonotoneClass {
    let mut up = points.to_vec();
    up.sort_unstable();
    let inc = up.windows(2).all(|w| w[0].1 <= w[1].1);
    let mut down = points.to_vec();
    down.sort_unstable_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1)));
    let dec = down.windows(2).all(|w| w[0].1 >= w[1].1);
    match (inc, dec) {
        (true, true) => MonotoneClass::Both,
        (true, false) => MonotoneClass::Increasing,
        (false, true) => MonotoneClass::Decreasing,
        (false, false) => MonotoneClass::Neither,
    }
}

/// Partitions points into the minimum number of weakly increasing chains.
///
/// Points are scanned in `(column, row)` order and each goes to the chain
/// whose last row is the largest one not above it. Returns index lists into
/// `points`; chains are numbered by creation.
pub fn increasing_chain_cover(points: &[Point]) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by_key(|&i| points[i]);
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut tops: Vec<usize> = Vec::new();
    for i in idx {
        let r = points[i].1;
        let best = tops
            .iter()
            .enumerate()
            .filter(|&(_, &t)| t <= r)
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(c, _)| c);
        match best {
            Some(c) => {
                chains[c].push(i);
                tops[c] = r;
            }
            None => {
                chains.push(vec![i]);
                tops.push(r);
            }
        }
    }
    chains
}

/// Minimum number of weakly decreasing chains, by mirroring the rows.
pub fn decreasing_chain_cover(points: &[Point]) -> Vec<Vec<usize>> {
    let max_row = points.iter().map(|p| p.1).max().unwrap_or(0);
    let mirrored: Vec<Point> = points.iter().map(|&(c, r)| (c, max_row - r)).collect();
    increasing_chain_cover(&mirrored)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_bipartite;
    use crate::layout::{Page, LinearLayout};

    #[test]
    fn classes() {
        assert_eq!(monotone_class(&[(0, 0), (1, 1), (2, 2)]), MonotoneClass::Increasing);
        assert_eq!(monotone_class(&[(0, 2), (1, 1), (2, 0)]), MonotoneClass::Decreasing);
        assert_eq!(monotone_class(&[(0, 0), (0, 1)]), MonotoneClass::Both);
        assert_eq!(monotone_class(&[(3, 1)]), MonotoneClass::Both);
        assert_eq!(monotone_class(&[]), MonotoneClass::Both);
        assert_eq!(
            monotone_class(&[(0, 0), (1, 2), (2, 1)]),
            MonotoneClass::Neither
        );
    }

    #[test]
    fn single_edge_grid() {
        let g = Graph::new(2, [(0, 1)]).unwrap().with_bipartition(&[0], &[1]).unwrap();
        let l = LinearLayout::new(g, VertexOrder::identity(2), vec![]).unwrap();
        let grid = to_grid(&l).unwrap();
        assert_eq!(grid.points, vec![(0, 0)]);
    }

    #[test]
    fn k33_fills_the_grid() {
        let g = complete_bipartite(3, 3).unwrap();
        let l = LinearLayout::new(g, VertexOrder::identity(6), vec![]).unwrap();
        let grid = to_grid(&l).unwrap();
        assert_eq!(grid.points.len(), 9);
        let (g2, o2) = from_grid(&grid).unwrap();
        assert_eq!(&g2, l.graph());
        assert_eq!(&o2, l.order());
    }

    #[test]
    fn b_first_layouts_use_the_same_orientation() {
        let g = Graph::new(4, [(0, 2), (1, 3)])
            .unwrap()
            .with_bipartition(&[0, 1], &[2, 3])
            .unwrap();
        let l = LinearLayout::new(
            g,
            VertexOrder::new(vec![2, 3, 0, 1]).unwrap(),
            vec![Page::queue(g_edges())],
        )
        .unwrap();
        assert_eq!(to_grid(&l).unwrap().points, vec![(0, 0), (1, 1)]);
        fn g_edges() -> Vec<crate::graph::Edge> {
            vec![crate::graph::Edge::new(0, 2), crate::graph::Edge::new(1, 3)]
        }
    }

    #[test]
    fn non_separated_has_no_grid() {
        let g = Graph::new(4, [(0, 2), (1, 3)])
            .unwrap()
            .with_bipartition(&[0, 1], &[2, 3])
            .unwrap();
        let l = LinearLayout::new(g, VertexOrder::new(vec![0, 2, 1, 3]).unwrap(), vec![]).unwrap();
        assert_eq!(to_grid(&l), Err(Error::NotSeparated));
    }

    #[test]
    fn chain_cover_is_minimal_on_antichain() {
        let pts = [(0, 3), (1, 2), (2, 1), (3, 0)];
        assert_eq!(increasing_chain_cover(&pts).len(), 4);
        assert_eq!(decreasing_chain_cover(&pts).len(), 1);
        let pts = [(0, 0), (0, 1), (1, 1), (2, 0)];
        assert_eq!(increasing_chain_cover(&pts).len(), 2);
    }
}
