//! The backtracking core: vertices are placed left to right and the edges
//! to already placed neighbours are assigned to pages at once.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::graph::{Edge, Graph, Side};
use crate::layout::{Page, PageKind};

use super::twist::{rainbow_of_spans, twist_of_spans};

/// Constraint "vertex at `last` has a larger id than vertex at `anchor`",
/// picking one representative of a reversal-symmetric pair.
#[derive(Debug, Clone, Copy)]
struct Mirror {
    anchor: usize,
    last: usize,
}

pub(crate) struct Problem<'g> {
    pub graph: &'g Graph,
    pub kinds: Vec<PageKind>,
    /// Some(side) for every vertex when searching separated orders (A first).
    pub sides: Option<&'g [Side]>,
}

pub(crate) struct Outcome {
    pub order: Vec<usize>,
    pub pages: Vec<Page>,
}

struct Search<'p> {
    n: usize,
    adj: Vec<Vec<usize>>,
    kinds: &'p [PageKind],
    sides: Option<&'p [Side]>,
    a_count: usize,
    pure: Option<(PageKind, usize)>,
    rotate: bool,
    mirror: Option<Mirror>,
    forced: &'p [usize],
    order: Vec<usize>,
    pos: Vec<usize>,
    pages: Vec<Vec<(usize, usize)>>,
    spans: Vec<(usize, usize)>,
    nodes: u64,
    abort: &'p (dyn Fn() -> bool + Sync),
    aborted: bool,
}

const UNPLACED: usize = usize::MAX;

impl<'p> Search<'p> {
    fn new(
        problem: &'p Problem<'_>,
        forced: &'p [usize],
        abort: &'p (dyn Fn() -> bool + Sync),
    ) -> Self {
        let n = problem.graph.n();
        let kinds = &problem.kinds[..];
        let pure = if kinds.iter().all(|&k| k == PageKind::Stack) {
            Some((PageKind::Stack, kinds.len()))
        } else if kinds.iter().all(|&k| k == PageKind::Queue) {
            Some((PageKind::Queue, kinds.len()))
        } else {
            None
        };
        let a_count = problem
            .sides
            .map(|s| s.iter().filter(|&&x| x == Side::A).count())
            .unwrap_or(n);
        // Stack layouts are invariant under rotating the order, so vertex 0
        // may go first. This is not true once a queue is involved.
        let rotate = problem.sides.is_none() && pure.map(|p| p.0) == Some(PageKind::Stack);
        let mirror = match problem.sides {
            Some(_) if a_count >= 2 => Some(Mirror {
                anchor: 0,
                last: a_count - 1,
            }),
            Some(_) => None,
            None if rotate && n >= 3 => Some(Mirror {
                anchor: 1,
                last: n - 1,
            }),
            None if !rotate && n >= 2 => Some(Mirror {
                anchor: 0,
                last: n - 1,
            }),
            None => None,
        };
        Search {
            n,
            adj: problem.graph.adjacency(),
            kinds,
            sides: problem.sides,
            a_count,
            pure,
            rotate,
            mirror,
            forced,
            order: Vec::with_capacity(n),
            pos: vec![UNPLACED; n],
            pages: vec![Vec::new(); kinds.len()],
            spans: Vec::new(),
            nodes: 0,
            abort,
            aborted: false,
        }
    }

    fn pool_side(&self, p: usize) -> Option<Side> {
        self.sides.map(|_| if p < self.a_count { Side::A } else { Side::B })
    }

    fn in_pool(&self, v: usize, side: Option<Side>) -> bool {
        match (side, self.sides) {
            (Some(s), Some(sides)) => sides[v] == s,
            _ => true,
        }
    }

    fn place(&mut self, p: usize) -> bool {
        if p == self.n {
            return true;
        }
        self.nodes += 1;
        if self.nodes & 0x3ff == 0 && (self.abort)() {
            self.aborted = true;
        }
        if self.aborted {
            return false;
        }
        if let Some(m) = self.mirror {
            if p > m.anchor && p <= m.last {
                let pivot = self.order[m.anchor];
                let side = self.pool_side(m.last);
                let open = (pivot + 1..self.n)
                    .any(|v| self.pos[v] == UNPLACED && self.in_pool(v, side));
                if !open {
                    return false;
                }
            }
        }
        let side = self.pool_side(p);
        let candidates: Vec<usize> = if p < self.forced.len() {
            vec![self.forced[p]]
        } else if p == 0 && self.rotate {
            vec![0]
        } else {
            (0..self.n).collect()
        };
        for v in candidates {
            if self.pos[v] != UNPLACED || !self.in_pool(v, side) {
                continue;
            }
            if p == 0 && self.rotate && v != 0 {
                continue;
            }
            if let Some(m) = self.mirror {
                if p == m.last && v < self.order[m.anchor] {
                    continue;
                }
            }
            self.pos[v] = p;
            self.order.push(v);
            let mut left: Vec<usize> = self.adj[v]
                .iter()
                .filter(|&&u| self.pos[u] != UNPLACED && u != v)
                .map(|&u| self.pos[u])
                .collect();
            left.sort_unstable();
            if self.bound_ok(&left, p) {
                if self.assign(p, &left, 0) {
                    return true;
                }
                self.unbound(left.len());
            }
            self.order.pop();
            self.pos[v] = UNPLACED;
            if self.aborted {
                return false;
            }
        }
        false
    }

    /// Twist/rainbow lower bound for pure budgets over all edges so far.
    fn bound_ok(&mut self, left: &[usize], p: usize) -> bool {
        let Some((kind, budget)) = self.pure else {
            return true;
        };
        let before = self.spans.len();
        self.spans.extend(left.iter().map(|&l| (l, p)));
        if left.is_empty() {
            return true;
        }
        let need = match kind {
            PageKind::Stack => twist_of_spans(&self.spans, p + 1),
            PageKind::Queue => rainbow_of_spans(&self.spans, p + 1),
        };
        if need > budget {
            self.spans.truncate(before);
            return false;
        }
        true
    }

    fn unbound(&mut self, count: usize) {
        if self.pure.is_some() {
            let len = self.spans.len() - count;
            self.spans.truncate(len);
        }
    }

    fn conflicts(&self, page: usize, l: usize, p: usize) -> bool {
        match self.kinds[page] {
            PageKind::Stack => self.pages[page]
                .iter()
                .any(|&(a, b)| a < l && l < b && b < p),
            PageKind::Queue => self.pages[page].iter().any(|&(a, b)| l < a && b < p),
        }
    }

    fn assign(&mut self, p: usize, left: &[usize], i: usize) -> bool {
        if i == left.len() {
            return self.place(p + 1);
        }
        let l = left[i];
        let mut tried_empty = [false; 2];
        for page in 0..self.pages.len() {
            let kind = self.kinds[page];
            let slot = kind as usize;
            if self.pages[page].is_empty() {
                if tried_empty[slot] {
                    continue;
                }
                tried_empty[slot] = true;
            }
            if self.conflicts(page, l, p) {
                continue;
            }
            self.pages[page].push((l, p));
            if self.assign(p, left, i + 1) {
                return true;
            }
            self.pages[page].pop();
            if self.aborted {
                break;
            }
        }
        false
    }

    fn outcome(&self) -> Outcome {
        let pages = self
            .pages
            .iter()
            .zip(self.kinds)
            .filter(|(edges, _)| !edges.is_empty())
            .map(|(edges, &kind)| {
                let mut es: Vec<Edge> = edges
                    .iter()
                    .map(|&(a, b)| Edge::new(self.order[a], self.order[b]))
                    .collect();
                es.sort_unstable();
                Page::new(kind, es)
            })
            .collect();
        Outcome {
            order: self.order.clone(),
            pages,
        }
    }
}

/// Runs the search restricted to orders starting with `forced`.
/// Returns the outcome (if any), the node count and whether it was aborted.
pub(crate) fn run_branch(
    problem: &Problem<'_>,
    forced: &[usize],
    abort: &(dyn Fn() -> bool + Sync),
) -> (Option<Outcome>, u64, bool) {
    let mut s = Search::new(problem, forced, abort);
    let found = s.place(0);
    let out = found.then(|| s.outcome());
    (out, s.nodes, s.aborted)
}

/// Prefixes used to fan the search out. Their order matches the order in
/// which a sequential search would visit them.
pub(crate) fn branches(problem: &Problem<'_>) -> Vec<Vec<usize>> {
    let n = problem.graph.n();
    if n < 2 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y {
                out.push(vec![x, y]);
            }
        }
    }
    out
}

/// Runs all branches and returns the lowest-index success, with the node
/// count summed over every branch up to and including it.
pub(crate) fn solve(problem: &Problem<'_>, parallel: bool) -> (Option<Outcome>, u64) {
    let prefixes = branches(problem);
    let best = AtomicUsize::new(usize::MAX);
    let indexed: Vec<(usize, &Vec<usize>)> = prefixes.iter().enumerate().collect();
    let results = crate::par::map(&indexed, parallel, |&(i, prefix)| {
        if best.load(Ordering::Relaxed) < i {
            return None;
        }
        let abort = || best.load(Ordering::Relaxed) < i;
        let (out, nodes, aborted) = run_branch(problem, prefix, &abort);
        if out.is_some() {
            best.fetch_min(i, Ordering::Relaxed);
        }
        (!aborted).then_some((out, nodes))
    });
    let mut nodes = 0;
    for r in results {
        let Some((out, n)) = r else { continue };
        nodes += n;
        if out.is_some() {
            return (out, nodes);
        }
    }
    (None, nodes)
}
