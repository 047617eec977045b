//! Turning a coloured tree layout into a mixed linear layout of the host.

use super::{assign_fixed_order, budget_kinds, EdgeColor, TreeLayout};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::grid::increasing_chain_cover;
use crate::layout::{validate_layout, LinearLayout, Page};
use crate::order::VertexOrder;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidTreeLayout(msg.into())
}

/// Checks that `node_order` lists every tree node once with parents first,
/// and that under it the blue tree edges form a stack page and the red
/// ones a queue page. Returns node positions.
fn check_node_order(tl: &TreeLayout, node_order: &[usize]) -> Result<Vec<usize>> {
    let t = tl.tree.len();
    let order = VertexOrder::new(node_order.to_vec())
        .ok()
        .filter(|o| o.len() == t)
        .ok_or_else(|| Error::InvalidNodeOrder(format!("expected a permutation of 0..{t}")))?;
    for y in 0..t {
        if let Some(p) = tl.tree.parent(y) {
            if order.position(p) > order.position(y) {
                return Err(Error::InvalidNodeOrder(format!("node {y} precedes its parent {p}")));
            }
        }
    }
    let coloring = tl
        .coloring
        .as_ref()
        .ok_or_else(|| bad("tree edges are not coloured"))?;
    if coloring.len() != t {
        return Err(bad(format!("coloring must have {t} entries")));
    }
    let mut blue = Vec::new();
    let mut red = Vec::new();
    for y in 1..t {
        let e = Edge::new(tl.tree.parent(y).unwrap(), y);
        match coloring[y] {
            EdgeColor::Blue => blue.push(e),
            EdgeColor::Red => red.push(e),
        }
    }
    let tree_graph = Graph::build(t, blue.iter().chain(&red).map(|e| e.endpoints()))?;
    let lay = LinearLayout::new(tree_graph, order.clone(), vec![Page::stack(blue), Page::queue(red)])?;
    if !validate_layout(&lay).is_valid() {
        return Err(Error::InvalidNodeOrder(
            "blue tree edges must form a stack and red ones a queue".into(),
        ));
    }
    Ok(order.positions().to_vec())
}

/// Page counts `(stacks, queues)` that [`tree_layout_to_mixed`] stays within.
///
/// The stack bound is the largest `S(x)` plus the `K` values of the blue
/// tree edges at `x`. The queue bound is the largest `Q(x)` plus, over
/// nodes `y` not after `x`, the `K` values of red edges from `y` to children
/// not before `x`.
pub fn lambda_values(tl: &TreeLayout, node_order: &[usize]) -> Result<(usize, usize)> {
    let pos = check_node_order(tl, node_order)?;
    Ok(lambda_at(tl, &pos))
}

fn lambda_at(tl: &TreeLayout, pos: &[usize]) -> (usize, usize) {
    let t = tl.tree.len();
    let color = tl.coloring.as_deref().unwrap();
    let mut blue_k = vec![0; t];
    for y in 1..t {
        if color[y] == EdgeColor::Blue {
            blue_k[y] += tl.k_of[y];
            blue_k[tl.tree.parent(y).unwrap()] += tl.k_of[y];
        }
    }
    let ls = (0..t).map(|x| tl.s_of[x] + blue_k[x]).max().unwrap_or(0);
    let lq = (0..t)
        .map(|x| tl.q_of[x] + red_span(tl, pos, x))
        .max()
        .unwrap_or(0);
    (ls, lq)
}

/// `max_y c_y(x)`: red K-mass from a node not after `x` to children not before it.
fn red_span(tl: &TreeLayout, pos: &[usize], x: usize) -> usize {
    let color = tl.coloring.as_deref().unwrap();
    (0..tl.tree.len())
        .filter(|&y| pos[y] <= pos[x])
        .map(|y| {
            tl.tree
                .children(y)
                .iter()
                .filter(|&&z| color[z] == EdgeColor::Red && pos[z] >= pos[x])
                .map(|&z| tl.k_of[z])
                .sum::<usize>()
        })
        .max()
        .unwrap_or(0)
}

fn smallest_free(used: &[usize]) -> usize {
    (0..).find(|c| !used.contains(c)).unwrap()
}

/// Concatenates the bags in `node_order`, reversing a bag whenever the path
/// from the root to it has an odd number of blue edges, and colours all
/// edges into at most `lambda_values` stacks and queues.
///
/// Blue tree edges contribute one stack per increasing chain between the
/// bags; red ones one queue per chain.
pub fn tree_layout_to_mixed(host: &Graph, tl: &TreeLayout, node_order: &[usize]) -> Result<LinearLayout> {
    let report = super::validate_tree_layout(host, tl);
    if !report.is_valid() {
        return Err(bad(format!(
            "{} violation(s), first: {:?}",
            report.violations.len(),
            report.violations[0]
        )));
    }
    let pos = check_node_order(tl, node_order)?;
    let (lambda_s, lambda_q) = lambda_at(tl, &pos);
    let color = tl.coloring.as_deref().unwrap();
    let idx = tl.bag_index(host).map_err(|_| bad("bag index"))?;
    let split = tl.split_edges(host, &idx).map_err(|_| bad("edge split"))?;
    let t = tl.tree.len();

    let mut flipped = vec![false; t];
    for &y in node_order {
        if let Some(p) = tl.tree.parent(y) {
            flipped[y] = flipped[p] ^ (color[y] == EdgeColor::Blue);
        }
    }
    let order: Vec<usize> = node_order
        .iter()
        .flat_map(|&x| {
            let bag = tl.bags[x].iter().copied();
            let v: Vec<usize> = if flipped[x] { bag.rev().collect() } else { bag.collect() };
            v
        })
        .collect();

    // Intra edges under the bag's own order; reversal keeps the page types.
    let mut intra_pages: Vec<Vec<(Edge, usize)>> = vec![Vec::new(); t];
    for x in 0..t {
        if split.intra[x].is_empty() {
            continue;
        }
        let spans: Vec<(usize, usize)> = split.intra[x].iter().map(|&(_, l, r)| (l, r)).collect();
        let kinds = budget_kinds(tl.s_of[x], tl.q_of[x]);
        let pages = assign_fixed_order(&spans, &kinds).ok_or_else(|| bad(format!("bag {x} over budget")))?;
        intra_pages[x] = split.intra[x].iter().zip(pages).map(|(&(e, _, _), p)| (e, p)).collect();
    }
    // Chains between each node and its parent.
    let units: Vec<Vec<Vec<Edge>>> = (0..t)
        .map(|y| {
            let pts: Vec<(usize, usize)> = split.inter[y].iter().map(|&(_, a, b)| (a, b)).collect();
            increasing_chain_cover(&pts)
                .into_iter()
                .map(|c| c.into_iter().map(|i| split.inter[y][i].0).collect())
                .collect()
        })
        .collect();

    let mut stack_of: Vec<(Edge, usize)> = Vec::new();
    let mut queue_of: Vec<(Edge, usize)> = Vec::new();

    // Stacks: greedy per node, parents first, so each node only has to
    // avoid the colours already used on its parent edge.
    let mut unit_color: Vec<Vec<usize>> = vec![Vec::new(); t];
    for &x in node_order {
        let mut used: Vec<usize> = if color[x] == EdgeColor::Blue {
            unit_color[x].clone()
        } else {
            Vec::new()
        };
        let mut local = Vec::new();
        for _ in 0..tl.s_of[x] {
            let c = smallest_free(&used);
            used.push(c);
            local.push(c);
        }
        for &(e, p) in &intra_pages[x] {
            if p < tl.s_of[x] {
                stack_of.push((e, local[p]));
            }
        }
        for &z in tl.tree.children(x) {
            if color[z] != EdgeColor::Blue {
                continue;
            }
            for unit in &units[z] {
                let c = smallest_free(&used);
                used.push(c);
                unit_color[z].push(c);
                stack_of.extend(unit.iter().map(|&e| (e, c)));
            }
        }
    }

    // Queues: units of a node coloured by child position, latest first, so
    // the ones still open at a later bag hold the smallest colours.
    for y in 0..t {
        let mut kids: Vec<usize> = tl
            .tree
            .children(y)
            .iter()
            .copied()
            .filter(|&z| color[z] == EdgeColor::Red)
            .collect();
        kids.sort_by_key(|&z| std::cmp::Reverse(pos[z]));
        let mut c = 0;
        for z in kids {
            for unit in &units[z] {
                queue_of.extend(unit.iter().map(|&e| (e, c)));
                c += 1;
            }
        }
    }
    for x in 0..t {
        let base = red_span(tl, &pos, x);
        for &(e, p) in &intra_pages[x] {
            if p >= tl.s_of[x] {
                queue_of.push((e, base + p - tl.s_of[x]));
            }
        }
    }

    let ns = stack_of.iter().map(|&(_, c)| c + 1).max().unwrap_or(0);
    let nq = queue_of.iter().map(|&(_, c)| c + 1).max().unwrap_or(0);
    if ns > lambda_s || nq > lambda_q {
        return Err(bad(format!(
            "colouring used ({ns}, {nq}) pages, bound is ({lambda_s}, {lambda_q})"
        )));
    }
    let mut pages: Vec<Page> = (0..ns)
        .map(|_| Page::stack(Vec::new()))
        .chain((0..nq).map(|_| Page::queue(Vec::new())))
        .collect();
    for (e, c) in stack_of {
        pages[c].edges.push(e);
    }
    for (e, c) in queue_of {
        pages[ns + c].edges.push(e);
    }
    for p in &mut pages {
        p.edges.sort_unstable();
    }
    pages.retain(|p| !p.edges.is_empty());
    let layout = LinearLayout::new(host.clone(), VertexOrder::new(order)?, pages)?;
    debug_assert!(
        validate_layout(&layout).is_valid(),
        "assembled layout is invalid: {:?}",
        validate_layout(&layout).violations.first()
    );
    Ok(layout)
}

