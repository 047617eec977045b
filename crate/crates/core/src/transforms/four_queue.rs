//! Separated 1-stack 1-queue layouts to separated 4-queue layouts.
//!
//! In the grid the stack is weakly decreasing and the queue weakly
//! increasing. Both are extended to full staircases across the grid; the
//! staircases meet in a lattice point `(i, j)`. Reversing the first `i + 1`
//! columns and the first `j + 1` rows turns each of the four pieces below
//! into a weakly increasing set.

use crate::error::{Error, Result};
use crate::grid::{GridIndex, Point};
use crate::layout::{LinearLayout, Page, PageKind};

/// Lattice points of a staircase through `chain` (already sorted along the
/// staircase) from `start` to `end`, moving vertically before horizontally
/// between consecutive points.
fn staircase(start: Point, chain: &[Point], end: Point) -> Vec<Point> {
    let mut out = vec![start];
    let mut cur = start;
    for &next in chain.iter().chain(std::iter::once(&end)) {
        while cur.1 != next.1 {
            cur.1 = if next.1 > cur.1 { cur.1 + 1 } else { cur.1 - 1 };
            out.push(cur);
        }
        while cur.0 != next.0 {
            cur.0 += 1;
            out.push(cur);
        }
    }
    out
}

/// The meeting point of a maximal decreasing staircase through `stack` and a
/// maximal increasing one through `queue`; smallest column, then row.
pub(crate) fn meeting_point(cols: usize, rows: usize, stack: &[Point], queue: &[Point]) -> Point {
    let mut s = stack.to_vec();
    s.sort_unstable_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1)));
    let mut q = queue.to_vec();
    q.sort_unstable();
    let down = staircase((0, rows - 1), &s, (cols - 1, 0));
    let up: std::collections::BTreeSet<Point> =
        staircase((0, 0), &q, (cols - 1, rows - 1)).into_iter().collect();
    down.into_iter()
        .filter(|p| up.contains(p))
        .min()
        .expect("a decreasing and an increasing staircase always meet")
}

pub fn theorem5_transform(layout: &LinearLayout) -> Result<LinearLayout> {
    let gi = GridIndex::of(layout)?;
    let (s, q) = layout.signature();
    if s > 1 || q > 1 {
        return Err(Error::WrongSignature {
            expected: "(1, 1)".into(),
            stacks: s,
            queues: q,
        });
    }
    layout.require_valid()?;
    let mut stack = Vec::new();
    let mut queue = Vec::new();
    for page in layout.pages() {
        for &e in &page.edges {
            let target = match page.kind {
                PageKind::Stack => &mut stack,
                PageKind::Queue => &mut queue,
            };
            target.push((gi.point(e), e));
        }
    }
    if gi.cols.is_empty() || gi.rows.is_empty() {
        return Ok(layout.clone());
    }
    let sp: Vec<Point> = stack.iter().map(|x| x.0).collect();
    let qp: Vec<Point> = queue.iter().map(|x| x.0).collect();
    let (i, j) = meeting_point(gi.cols.len(), gi.rows.len(), &sp, &qp);

    let mut cols = gi.cols.clone();
    cols[..=i].reverse();
    let mut rows = gi.rows.clone();
    rows[..=j].reverse();
    let order = gi.order_from(&cols, &rows);

    let mut pieces: [Vec<_>; 4] = Default::default();
    for &((c, r), e) in &queue {
        pieces[if c <= i && r <= j { 0 } else { 1 }].push(e);
    }
    for &((c, r), e) in &stack {
        pieces[if c >= i && r <= j { 2 } else { 3 }].push(e);
    }
    let pages = pieces
        .into_iter()
        .filter(|p| !p.is_empty())
        .map(|mut edges| {
            edges.sort_unstable();
            Page::queue(edges)
        })
        .collect();
    let out = LinearLayout::new(layout.graph().clone(), order, pages)?;
    debug_assert!(crate::layout::validate_layout(&out).is_valid());
    Ok(out)
}
