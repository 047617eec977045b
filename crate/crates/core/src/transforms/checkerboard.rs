//! Checkerboard grids: when every other grid cell holds only stack points,
//! reversing every other block of columns and rows leaves only queues.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::grid::{monotone_class, GridIndex, MonotoneClass, Point};
use crate::layout::{LinearLayout, Page, PageKind};

/// Interior block boundaries of a grid: a cut at `c` starts a new block at
/// column (or row) `c`. Cuts are strictly increasing and lie strictly
/// inside the grid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    pub col_cuts: Vec<usize>,
    pub row_cuts: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckerboardGrid {
    pub col_cuts: Vec<usize>,
    pub row_cuts: Vec<usize>,
    /// Cells with `(col_block + row_block) % 2 == stack_parity` are the
    /// stack cells; all others hold queue points only.
    pub stack_parity: usize,
}

impl CheckerboardGrid {
    pub fn is_stack_cell(&self, col_block: usize, row_block: usize) -> bool {
        (col_block + row_block) % 2 == self.stack_parity
    }
}

fn block_of(cuts: &[usize], x: usize) -> usize {
    cuts.partition_point(|&c| c <= x)
}

fn check_cuts(cuts: &[usize], len: usize, what: &str) -> Result<()> {
    let increasing = cuts.windows(2).all(|w| w[0] < w[1]);
    let inside = cuts.iter().all(|&c| c > 0 && c < len);
    if increasing && inside {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!(
            "{what} cuts {cuts:?} are not increasing inside 1..{len}"
        )))
    }
}

/// Points of every page, grouped by `(page, col block, row block)`.
fn pieces(
    layout: &LinearLayout,
    gi: &GridIndex,
    col_cuts: &[usize],
    row_cuts: &[usize],
) -> BTreeMap<(usize, usize, usize), Vec<(Point, Edge)>> {
    let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for (pi, page) in layout.pages().iter().enumerate() {
        for &e in &page.edges {
            let p = gi.point(e);
            let key = (pi, block_of(col_cuts, p.0), block_of(row_cuts, p.1));
            out.entry(key).or_default().push((p, e));
        }
    }
    out
}

fn check_parity(
    layout: &LinearLayout,
    pieces: &BTreeMap<(usize, usize, usize), Vec<(Point, Edge)>>,
    grid: &CheckerboardGrid,
) -> Result<()> {
    for (&(pi, bc, br), items) in pieces {
        let kind = layout.pages()[pi].kind;
        let points: Vec<Point> = items.iter().map(|x| x.0).collect();
        let class = monotone_class(&points);
        let stack_cell = grid.is_stack_cell(bc, br);
        let ok = if stack_cell {
            class.is_decreasing()
        } else {
            class.is_increasing()
        };
        if !ok {
            return Err(Error::ParityViolation {
                col_block: bc,
                row_block: br,
                detail: format!(
                    "{kind} page {pi} has {class:?} points in a {} cell",
                    if stack_cell { "stack" } else { "queue" }
                ),
            });
        }
    }
    Ok(())
}

/// Reverses column block `b` when `b` is odd and row block `b` when
/// `b % 2 == stack_parity`, which flips exactly the stack cells. Every page
/// is then split into one queue per cell it touches; the page count is
/// whatever that split produces.
pub fn checkerboard_transform(layout: &LinearLayout, grid: &CheckerboardGrid) -> Result<LinearLayout> {
    let gi = GridIndex::of(layout)?;
    check_cuts(&grid.col_cuts, gi.cols.len(), "column")?;
    check_cuts(&grid.row_cuts, gi.rows.len(), "row")?;
    if grid.stack_parity > 1 {
        return Err(Error::InvalidParameters("stack parity must be 0 or 1".into()));
    }
    layout.require_valid()?;
    let pieces = pieces(layout, &gi, &grid.col_cuts, &grid.row_cuts);
    check_parity(layout, &pieces, grid)?;

    let reorder = |list: &[usize], cuts: &[usize], flip: &dyn Fn(usize) -> bool| -> Vec<usize> {
        let mut bounds = vec![0];
        bounds.extend_from_slice(cuts);
        bounds.push(list.len());
        let mut out = Vec::with_capacity(list.len());
        for (b, w) in bounds.windows(2).enumerate() {
            let mut block = list[w[0]..w[1]].to_vec();
            if flip(b) {
                block.reverse();
            }
            out.extend(block);
        }
        out
    };
    let cols = reorder(&gi.cols, &grid.col_cuts, &|b| b % 2 == 1);
    let rows = reorder(&gi.rows, &grid.row_cuts, &|b| b % 2 == grid.stack_parity);
    let order = gi.order_from(&cols, &rows);
    let pages = pieces
        .into_values()
        .map(|items| {
            let mut edges: Vec<Edge> = items.into_iter().map(|x| x.1).collect();
            edges.sort_unstable();
            Page::queue(edges)
        })
        .collect();
    let out = LinearLayout::new(layout.graph().clone(), order, pages)?;
    debug_assert!(crate::layout::validate_layout(&out).is_valid());
    Ok(out)
}

/// Cuts every block of `blocks` in half. When each cell holds one monotone
/// diagonal, increasing diagonals then sit in even sub-cells and decreasing
/// ones in odd sub-cells, so the result is a checkerboard with stack parity
/// one. A layout without stack edges needs no cuts at all.
pub fn halve_diagonal_grid(layout: &LinearLayout, blocks: &BlockStructure) -> Result<CheckerboardGrid> {
    let gi = GridIndex::of(layout)?;
    check_cuts(&blocks.col_cuts, gi.cols.len(), "column")?;
    check_cuts(&blocks.row_cuts, gi.rows.len(), "row")?;
    let mut cells: BTreeMap<(usize, usize), Vec<Point>> = BTreeMap::new();
    for &e in layout.graph().edges() {
        let p = gi.point(e);
        cells
            .entry((block_of(&blocks.col_cuts, p.0), block_of(&blocks.row_cuts, p.1)))
            .or_default()
            .push(p);
    }
    for (&(bc, br), pts) in &cells {
        if monotone_class(pts) == MonotoneClass::Neither {
            return Err(Error::NotADiagonal {
                col_block: bc,
                row_block: br,
            });
        }
    }
    if layout.pages().iter().all(|p| p.kind == PageKind::Queue) {
        return Ok(CheckerboardGrid {
            stack_parity: 1,
            ..Default::default()
        });
    }
    let halve = |cuts: &[usize], len: usize| -> Vec<usize> {
        let mut bounds = vec![0];
        bounds.extend_from_slice(cuts);
        bounds.push(len);
        let mut out = Vec::new();
        for w in bounds.windows(2) {
            if w[0] > 0 {
                out.push(w[0]);
            }
            let mid = w[0] + (w[1] - w[0]).div_ceil(2);
            if mid > w[0] && mid < w[1] {
                out.push(mid);
            }
        }
        out
    };
    let grid = CheckerboardGrid {
        col_cuts: halve(&blocks.col_cuts, gi.cols.len()),
        row_cuts: halve(&blocks.row_cuts, gi.rows.len()),
        stack_parity: 1,
    };
    let pieces = pieces(layout, &gi, &grid.col_cuts, &grid.row_cuts);
    check_parity(layout, &pieces, &grid)?;
    Ok(grid)
}
