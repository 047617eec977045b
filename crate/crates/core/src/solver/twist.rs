//! Largest twist (pairwise crossing) and rainbow (pairwise nesting) under a
//! fixed order.
//!
//! Both structures have a common cut: a k-twist `l1 < .. < lk < r1 < .. < rk`
//! and a k-rainbow `l1 < .. < lk < rk < .. < r1` are all spanned by the gap
//! right after `lk`. For each cut the answer is a longest monotone
//! subsequence of the spanning edges, so no clique search is needed.

use crate::error::Result;
use crate::graph::Graph;
use crate::order::VertexOrder;

fn spans(graph: &Graph, order: &VertexOrder) -> Result<Vec<(usize, usize)>> {
    graph
        .edges()
        .iter()
        .map(|e| {
            let a = order.try_position(e.u())?;
            let b = order.try_position(e.v())?;
            Ok((a.min(b), a.max(b)))
        })
        .collect()
}

/// Length of the longest strictly increasing subsequence.
fn lis(values: impl Iterator<Item = usize>) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for x in values {
        let i = tails.partition_point(|&t| t < x);
        if i == tails.len() {
            tails.push(x);
        } else {
            tails[i] = x;
        }
    }
    tails.len()
}

pub(crate) fn twist_of_spans(spans: &[(usize, usize)], n: usize) -> usize {
    let mut best = 0;
    let mut cut: Vec<(usize, usize)> = Vec::with_capacity(spans.len());
    for c in 0..n.saturating_sub(1) {
        cut.clear();
        cut.extend(spans.iter().filter(|&&(l, r)| l <= c && c < r));
        if cut.len() <= best {
            continue;
        }
        cut.sort_unstable_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        best = best.max(lis(cut.iter().map(|s| s.1)));
    }
    best
}

pub(crate) fn rainbow_of_spans(spans: &[(usize, usize)], n: usize) -> usize {
    let mut best = 0;
    let mut cut: Vec<(usize, usize)> = Vec::with_capacity(spans.len());
    for c in 0..n.saturating_sub(1) {
        cut.clear();
        cut.extend(spans.iter().filter(|&&(l, r)| l <= c && c < r));
        if cut.len() <= best {
            continue;
        }
        cut.sort_unstable();
        // strictly decreasing on r == strictly increasing on n - r
        best = best.max(lis(cut.iter().map(|s| n - s.1)));
    }
    best
}

/// Size of a largest set of pairwise crossing edges under `order`.
pub fn max_twist(graph: &Graph, order: &VertexOrder) -> Result<usize> {
    Ok(twist_of_spans(&spans(graph, order)?, order.len()))
}

/// Size of a largest set of pairwise nesting edges under `order`.
pub fn max_rainbow(graph: &Graph, order: &VertexOrder) -> Result<usize> {
    Ok(rainbow_of_spans(&spans(graph, order)?, order.len()))
}
