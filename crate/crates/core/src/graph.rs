//! Simple undirected graphs over dense vertex ids, with an optional
//! bipartition.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(self) -> usize {
        self.0
    }

    pub fn v(self) -> usize {
        self.1
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.0 == other.0 || self.0 == other.1 || self.1 == other.0 || self.1 == other.1
    }

    pub fn other(self, x: usize) -> usize {
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }
}

impl From<[usize; 2]> for Edge {
    fn from(e: [usize; 2]) -> Self {
        Edge::new(e[0], e[1])
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are kept sorted and unique. Isolated vertices are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    sides: Option<Vec<Side>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates, out-of-range ids and
    /// edgeless inputs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let g = Self::build(n, edges)?;
        if g.edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Ok(g)
    }

    /// Like [`Graph::new`] but permits an empty edge set. Used for the
    /// intermediate subgraphs the constructions split off.
    pub fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if !seen.insert(Edge::new(a, b)) {
                return Err(Error::DuplicateEdge(Edge::new(a, b)));
            }
        }
        Ok(Graph {
            n,
            edges: seen.into_iter().collect(),
            sides: None,
        })
    }

    /// Builds from edges that may repeat; duplicates are merged.
    pub(crate) fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let set: BTreeSet<Edge> = edges.into_iter().collect();
        debug_assert!(set.iter().all(|e| e.u() != e.v() && e.v() < n));
        Graph {
            n,
            edges: set.into_iter().collect(),
            sides: None,
        }
    }

    /// Attaches a bipartition `(a, b)`. Both sets together must cover every
    /// vertex exactly once and every edge must go between them.
    pub fn with_bipartition(mut self, a: &[usize], b: &[usize]) -> Result<Self> {
        let mut sides = vec![None; self.n];
        for (set, side) in [(a, Side::A), (b, Side::B)] {
            for &v in set {
                if v >= self.n {
                    return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
                }
                if sides[v].is_some() {
                    return Err(Error::InvalidBipartition(format!(
                        "vertex {v} listed more than once"
                    )));
                }
                sides[v] = Some(side);
            }
        }
        let sides: Vec<Side> = sides
            .into_iter()
            .enumerate()
            .map(|(v, s)| {
                s.ok_or_else(|| Error::InvalidBipartition(format!("vertex {v} is in neither side")))
            })
            .collect::<Result<_>>()?;
        self.set_sides(sides)?;
        Ok(self)
    }

    pub(crate) fn set_sides(&mut self, sides: Vec<Side>) -> Result<()> {
        if sides.len() != self.n {
            return Err(Error::InvalidBipartition("side vector has wrong length".into()));
        }
        if let Some(e) = self.edges.iter().find(|e| sides[e.u()] == sides[e.v()]) {
            return Err(Error::InvalidBipartition(format!(
                "edge {e} has both endpoints on one side"
            )));
        }
        self.sides = Some(sides);
        Ok(())
    }

    pub fn without_bipartition(mut self) -> Self {
        self.sides = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&Edge::new(a, b)).is_ok()
    }

    pub fn is_bipartitioned(&self) -> bool {
        self.sides.is_some()
    }

    pub fn sides(&self) -> Option<&[Side]> {
        self.sides.as_deref()
    }

    pub fn side(&self, v: usize) -> Option<Side> {
        self.sides.as_ref().map(|s| s[v])
    }

    /// Vertices of side A and side B, each in increasing id order.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let sides = self.sides.as_ref()?;
        let a = (0..self.n).filter(|&v| sides[v] == Side::A).collect();
        let b = (0..self.n).filter(|&v| sides[v] == Side::B).collect();
        Some((a, b))
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u()].push(e.v());
            adj[e.v()].push(e.u());
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u()] += 1;
            deg[e.v()] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Subgraph on the same vertex set keeping only `edges`. The bipartition
    /// carries over.
    pub fn edge_subgraph(&self, edges: impl IntoIterator<Item = Edge>) -> Graph {
        let mut g = Graph::from_edges_dedup(self.n, edges);
        g.sides = self.sides.clone();
        g
    }

    /// Tries to 2-color the graph; connected components are colored starting
    /// with side A at their smallest vertex.
    pub fn two_coloring(&self) -> Option<Vec<Side>> {
        let adj = self.adjacency();
        let mut sides: Vec<Option<Side>> = vec![None; self.n];
        for start in 0..self.n {
            if sides[start].is_some() {
                continue;
            }
            sides[start] = Some(Side::A);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let sx = sides[x].unwrap();
                for &y in &adj[x] {
                    match sides[y] {
                        None => {
                            sides[y] = Some(sx.flip());
                            stack.push(y);
                        }
                        Some(sy) if sy == sx => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(sides.into_iter().map(Option::unwrap).collect())
    }
}
