//! Helpers shared by the integration tests: independent brute-force
//! oracles and a fixed graph corpus.

#![allow(dead_code)]

pub mod naive;

use linlay::generators::rng;
use linlay::{Graph, Side};
use rand::RngExt;

/// Every labelled graph on `n` vertices, as edge lists over all pairs.
fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Canonical form: the lexicographically smallest sorted edge list over all
/// relabellings.
fn canonical(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut best: Option<Vec<(usize, usize)>> = None;
    naive::for_each_permutation(n, |p| {
        let mut e: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        true
    });
    best.unwrap()
}

/// All connected graphs on 2..=`max_n` vertices up to isomorphism.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let pairs = all_pairs(n);
        let mut seen = std::collections::BTreeSet::new();
        for mask in 1u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = (0..pairs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            if is_connected(n, &edges) && seen.insert(canonical(n, &edges)) {
                out.push(Graph::new(n, edges).unwrap());
            }
        }
    }
    out
}

/// A connected random graph: a random spanning tree plus extra edges.
pub fn random_connected(n: usize, density: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((r.random_range(0..v), v));
    }
    for (a, b) in all_pairs(n) {
        if !edges.contains(&(a, b)) && r.random_bool(density) {
            edges.push((a, b));
        }
    }
    Graph::new(n, edges).unwrap()
}

/// The fixed corpus: connected graphs on at most 5 vertices, topped up to
/// `size` with seeded 6- and 7-vertex samples.
pub fn corpus(size: usize) -> Vec<Graph> {
    let mut out = connected_graphs_up_to(5);
    let mut seed = 0;
    while out.len() < size {
        let n = 6 + (seed as usize % 2);
        let density = [0.15, 0.3, 0.5, 0.7][(seed as usize / 2) % 4];
        out.push(random_connected(n, density, 1000 + seed));
        seed += 1;
    }
    out
}

/// Attaches a 2-colouring as bipartition, if the graph has one.
pub fn with_two_coloring(g: &Graph) -> Option<Graph> {
    let sides = g.two_coloring()?;
    let a: Vec<usize> = (0..g.n()).filter(|&v| sides[v] == Side::A).collect();
    let b: Vec<usize> = (0..g.n()).filter(|&v| sides[v] == Side::B).collect();
    g.clone().with_bipartition(&a, &b).ok()
}
