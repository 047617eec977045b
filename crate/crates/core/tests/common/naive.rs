//! Deliberately simple reference implementations, sharing no code with the
//! library's solver.

use linlay::{Graph, Side};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Stack,
    Queue,
}

/// Calls `f` on every permutation of `0..n`; stops early when `f` returns false.
/// Returns false if stopped.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn go(k: usize, p: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == p.len() {
            return f(p);
        }
        for v in 0..p.len() {
            if !used[v] {
                used[v] = true;
                p[k] = v;
                let go_on = go(k + 1, p, used, f);
                used[v] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    go(0, &mut vec![0; n], &mut vec![false; n], &mut f)
}

fn spans(graph: &Graph, order: &[usize]) -> Vec<(usize, usize)> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    graph
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (pos[e.u()], pos[e.v()]);
            (a.min(b), a.max(b))
        })
        .collect()
}

pub fn cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

pub fn nest((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && d < b) || (c < a && b < d)
}

fn clash(kind: Kind, e: (usize, usize), f: (usize, usize)) -> bool {
    match kind {
        Kind::Stack => cross(e, f),
        Kind::Queue => nest(e, f),
    }
}

/// Tries every page for every edge in turn.
pub fn assignable(spans: &[(usize, usize)], kinds: &[Kind]) -> bool {
    fn go(i: usize, spans: &[(usize, usize)], kinds: &[Kind], page: &mut Vec<usize>) -> bool {
        if i == spans.len() {
            return true;
        }
        for p in 0..kinds.len() {
            if (0..i).all(|j| page[j] != p || !clash(kinds[p], spans[i], spans[j])) {
                page[i] = p;
                if go(i + 1, spans, kinds, page) {
                    return true;
                }
            }
        }
        false
    }
    go(0, spans, kinds, &mut vec![0; spans.len()])
}

fn is_separated(order: &[usize], sides: &[Side]) -> bool {
    order.windows(2).filter(|w| sides[w[0]] != sides[w[1]]).count() <= 1
}

/// Whether some vertex order admits the budget; `separated` restricts to
/// orders with one side entirely before the other.
pub fn feasible(graph: &Graph, stacks: usize, queues: usize, separated: bool) -> bool {
    let kinds: Vec<Kind> = std::iter::repeat(Kind::Stack)
        .take(stacks)
        .chain(std::iter::repeat(Kind::Queue).take(queues))
        .collect();
    let sides = graph.sides();
    let mut found = false;
    for_each_permutation(graph.n(), |order| {
        if separated && !is_separated(order, sides.expect("bipartition")) {
            return true;
        }
        found = assignable(&spans(graph, order), &kinds);
        !found
    });
    found
}

/// Smallest total budget of the given shape: pure stacks, pure queues, or
/// mixed (any split).
pub fn minimum(graph: &Graph, kind: Option<Kind>, separated: bool) -> usize {
    (1..).find(|&t| match kind {
        Some(Kind::Stack) => feasible(graph, t, 0, separated),
        Some(Kind::Queue) => feasible(graph, 0, t, separated),
        None => (0..=t).any(|s| feasible(graph, s, t - s, separated)),
    })
    .unwrap()
}

/// Largest set of pairwise related edges under `order`, by exhaustive
/// clique search.
fn max_clique(spans: &[(usize, usize)], related: fn((usize, usize), (usize, usize)) -> bool) -> usize {
    fn go(cand: Vec<usize>, size: usize, spans: &[(usize, usize)], rel: fn((usize, usize), (usize, usize)) -> bool) -> usize {
        let mut best = size;
        for (i, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| rel(spans[v], spans[w])).collect();
            best = best.max(go(next, size + 1, spans, rel));
        }
        best
    }
    go((0..spans.len()).collect(), 0, spans, related)
}

pub fn twist(graph: &Graph, order: &[usize]) -> usize {
    max_clique(&spans(graph, order), cross)
}

pub fn rainbow(graph: &Graph, order: &[usize]) -> usize {
    max_clique(&spans(graph, order), nest)
}
