//! Named instance families with their known layouts, plus seeded random
//! builders for the test corpus.

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Side};
use crate::layout::{LinearLayout, Page, PageKind};
use crate::order::VertexOrder;
use crate::transforms::{BlockStructure, RiffleSpec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("K_n needs n >= 2, got {n}")));
    }
    Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
}

/// `K_{m,n}` with side A = `0..m` and side B = `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameters(format!(
            "K_{{m,n}} needs m, n >= 1, got {m}, {n}"
        )));
    }
    let a: Vec<usize> = (0..m).collect();
    let b: Vec<usize> = (m..m + n).collect();
    Graph::new(m + n, a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))))?
        .with_bipartition(&a, &b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Red,
    Brown,
    Blue,
}

/// The subcubic bipartite family `G_n`, `n = 2^k`.
///
/// Vertex `v_i` has id `i` (side A) and `u_i` has id `n + i` (side B).
#[derive(Debug, Clone)]
pub struct ChallengeInstance {
    pub k: u32,
    pub graph: Graph,
    /// Separated layout: blue stack, red queue, brown queue.
    pub mixed_layout: LinearLayout,
    /// Class of every edge after merging coincident edges.
    pub classes: Vec<(Edge, EdgeClass)>,
    /// Edge count before merging.
    pub raw_edge_count: usize,
    /// The final-level rule of [`challenge_permutation`] is a reading of
    /// the construction, not a given; consumers may want to know.
    pub permutation_rule_provisional: bool,
}

pub fn challenge_graph(k: u32) -> Result<ChallengeInstance> {
    if k == 0 || k > 20 {
        return Err(Error::InvalidParameters(format!(
            "challenge family needs 1 <= k <= 20, got {k}"
        )));
    }
    let n = 1usize << k;
    let u = |i: usize| n + i;
    let mut raw: Vec<(Edge, EdgeClass)> = Vec::with_capacity(3 * n);
    raw.extend((0..n).map(|i| (Edge::new(i, u(i)), EdgeClass::Red)));
    for i in 0..n / 2 {
        raw.push((Edge::new(i, u(2 * i)), EdgeClass::Brown));
        raw.push((Edge::new(i, u(2 * i + 1)), EdgeClass::Brown));
    }
    for i in n / 2..n {
        raw.push((Edge::new(i, u(2 * n - 2 * i - 2)), EdgeClass::Blue));
        raw.push((Edge::new(i, u(2 * n - 2 * i - 1)), EdgeClass::Blue));
    }
    let raw_edge_count = raw.len();
    // Red wins over brown over blue when edges coincide.
    raw.sort();
    raw.dedup_by_key(|(e, _)| *e);
    let classes = raw;

    let a: Vec<usize> = (0..n).collect();
    let b: Vec<usize> = (n..2 * n).collect();
    let graph = Graph::new(2 * n, classes.iter().map(|(e, _)| e.endpoints()))?
        .with_bipartition(&a, &b)?;
    let of = |c: EdgeClass| -> Vec<Edge> {
        classes.iter().filter(|x| x.1 == c).map(|x| x.0).collect()
    };
    let pages = vec![
        Page::stack(of(EdgeClass::Blue)),
        Page::queue(of(EdgeClass::Red)),
        Page::queue(of(EdgeClass::Brown)),
    ];
    let mixed_layout = LinearLayout::new(graph.clone(), VertexOrder::identity(2 * n), pages)?;
    Ok(ChallengeInstance {
        k,
        graph,
        mixed_layout,
        classes,
        raw_edge_count,
        permutation_rule_provisional: true,
    })
}

fn apply_f(j: usize, block: &mut [Vec<usize>]) {
    match j {
        1 => {}
        2 => {
            block.swap(0, 1);
            block.swap(2, 3);
        }
        3 => {
            block.swap(0, 2);
            block.swap(1, 3);
        }
        _ => block.reverse(),
    }
}

/// The recursive block permutation of the challenge family.
///
/// Units start as single indices. At every level the units are grouped in
/// fours; group `i` (1-based) is permuted by `f_{i mod 4}` with `f_0 = f_4`,
/// and each group becomes one unit of the next level. A trailing group with
/// fewer than four units is left as is. Levels repeat until one unit covers
/// everything. Returns `perm` with `perm[p]` the index placed at `p`.
pub fn challenge_permutation(k: u32) -> Result<Vec<usize>> {
    if k == 0 || k > 20 {
        return Err(Error::InvalidParameters(format!(
            "challenge permutation needs 1 <= k <= 20, got {k}"
        )));
    }
    let n = 1usize << k;
    let mut units: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while units.len() > 1 {
        let mut next = Vec::with_capacity(units.len().div_ceil(4));
        for (i, chunk) in units.chunks_mut(4).enumerate() {
            if chunk.len() == 4 {
                apply_f((i + 1) % 4, chunk);
            }
            next.push(chunk.concat());
        }
        units = next;
    }
    Ok(units.pop().unwrap_or_default())
}

/// The challenge layout with `perm` applied to both the columns (`v`) and
/// the rows (`u`), all edges in queue pages that are split greedily into
/// weakly increasing chains.
pub fn permuted_challenge_layout(inst: &ChallengeInstance, perm: &[usize]) -> Result<LinearLayout> {
    let n = 1usize << inst.k;
    if perm.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let order: Vec<usize> = perm.iter().copied().chain(perm.iter().map(|&i| n + i)).collect();
    let order = VertexOrder::new(order)?;
    let points: Vec<(usize, usize)> = inst
        .graph
        .edges()
        .iter()
        .map(|e| (order.position(e.u()), order.position(e.v()) - n))
        .collect();
    let pages = crate::grid::increasing_chain_cover(&points)
        .into_iter()
        .map(|chain| Page::queue(chain.into_iter().map(|i| inst.graph.edges()[i]).collect()))
        .collect();
    LinearLayout::new(inst.graph.clone(), order, pages)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Diagonal {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellPattern {
    /// Every cell increasing.
    Increasing,
    /// Increasing and decreasing alternate like a chessboard.
    Alternating,
    /// Each cell picked by the seed.
    Random,
    /// `cells[block_row][block_col]`.
    Explicit(Vec<Vec<Diagonal>>),
}

/// A separated layout whose grid is a `block_rows × block_cols` array of
/// square cells of even side, each holding one full diagonal. Decreasing
/// diagonals are stack pages and increasing ones queue pages, one page per
/// cell. Cell sides are drawn from {2, 4} by the seed.
pub fn diagonal_grid_instance(
    block_rows: usize,
    block_cols: usize,
    pattern: &CellPattern,
    seed: u64,
) -> Result<(LinearLayout, BlockStructure)> {
    if block_rows == 0 || block_cols == 0 {
        return Err(Error::InvalidParameters("block counts must be positive".into()));
    }
    let mut rng = rng(seed);
    let widths: Vec<usize> = (0..block_cols).map(|_| 2 * rng.random_range(1..=2usize)).collect();
    let heights: Vec<usize> = (0..block_rows).map(|_| 2 * rng.random_range(1..=2usize)).collect();
    let cell = |br: usize, bc: usize, rng: &mut ChaCha8Rng| -> Result<Diagonal> {
        Ok(match pattern {
            CellPattern::Increasing => Diagonal::Increasing,
            CellPattern::Alternating if (br + bc) % 2 == 0 => Diagonal::Increasing,
            CellPattern::Alternating => Diagonal::Decreasing,
            CellPattern::Random if rng.random_bool(0.5) => Diagonal::Increasing,
            CellPattern::Random => Diagonal::Decreasing,
            CellPattern::Explicit(rows) => *rows
                .get(br)
                .and_then(|r| r.get(bc))
                .ok_or_else(|| Error::InvalidParameters("explicit pattern too small".into()))?,
        })
    };
    let starts = |sizes: &[usize]| -> Vec<usize> {
        sizes
            .iter()
            .scan(0, |acc, &s| {
                let at = *acc;
                *acc += s;
                Some(at)
            })
            .collect()
    };
    let col_start = starts(&widths);
    let row_start = starts(&heights);
    let n_cols: usize = widths.iter().sum();
    let n_rows: usize = heights.iter().sum();

    let mut pages = Vec::new();
    for br in 0..block_rows {
        for bc in 0..block_cols {
            let dir = cell(br, bc, &mut rng)?;
            let len = widths[bc].min(heights[br]);
            let edges: Vec<Edge> = (0..len)
                .map(|i| {
                    let c = col_start[bc] + i * widths[bc] / len;
                    let r = match dir {
                        Diagonal::Increasing => row_start[br] + i * heights[br] / len,
                        Diagonal::Decreasing => row_start[br] + heights[br] - 1 - i * heights[br] / len,
                    };
                    Edge::new(c, n_cols + r)
                })
                .collect();
            pages.push(match dir {
                Diagonal::Increasing => Page::queue(edges),
                Diagonal::Decreasing => Page::stack(edges),
            });
        }
    }
    pages.sort_by_key(|p| p.kind);
    let n = n_cols + n_rows;
    let a: Vec<usize> = (0..n_cols).collect();
    let b: Vec<usize> = (n_cols..n).collect();
    let graph = Graph::new(n, pages.iter().flat_map(|p| p.edges.iter().map(|e| e.endpoints())))?
        .with_bipartition(&a, &b)?;
    let layout = LinearLayout::new(graph, VertexOrder::identity(n), pages)?;
    let blocks = BlockStructure {
        col_cuts: col_start[1..].to_vec(),
        row_cuts: row_start[1..].to_vec(),
    };
    Ok((layout, blocks))
}

/// Parameters of [`random_layout_instance`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomLayoutParams {
    pub stacks: usize,
    pub queues: usize,
    pub n_a: usize,
    /// Zero means a graph without bipartition on `n_a` vertices.
    pub n_b: usize,
    /// Chain length as a fraction of the vertex count, in `(0, 1]`.
    pub density: f64,
    pub separated: bool,
    pub seed: u64,
}

impl RandomLayoutParams {
    pub fn new(stacks: usize, queues: usize, n_a: usize, n_b: usize) -> Self {
        RandomLayoutParams {
            stacks,
            queues,
            n_a,
            n_b,
            density: 0.5,
            separated: n_b > 0,
            seed: 0,
        }
    }

    pub fn density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }

    pub fn separated(mut self, separated: bool) -> Self {
        self.separated = separated;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Builds pages first and reads the graph off them, so the result is valid
/// by construction.
///
/// Every page is a chain of spans `(l_i, r_i)` with the left ends sorted
/// ascending and the right ends ascending (queue) or descending (stack).
/// Spans that are degenerate, join two vertices of one side, or repeat an
/// earlier edge are dropped. A page left empty is resampled a few times and
/// then omitted, so the signature is at most `(stacks, queues)`.
pub fn random_layout_instance(p: RandomLayoutParams) -> Result<LinearLayout> {
    if p.stacks + p.queues == 0 {
        return Err(Error::InvalidParameters("need at least one page".into()));
    }
    if !(p.density > 0.0 && p.density <= 1.0) {
        return Err(Error::InvalidParameters(format!(
            "density must be in (0, 1], got {}",
            p.density
        )));
    }
    let bipartite = p.n_b > 0;
    if p.separated && !bipartite {
        return Err(Error::InvalidParameters("separated layouts need n_b > 0".into()));
    }
    let n = p.n_a + p.n_b;
    if p.n_a == 0 || n < 2 {
        return Err(Error::InvalidParameters("need at least two vertices".into()));
    }
    let mut rng = rng(p.seed);

    // side of each position, and the vertex placed there
    let mut pos_side: Vec<Side> = (0..n).map(|i| if i < p.n_a { Side::A } else { Side::B }).collect();
    if bipartite && !p.separated {
        pos_side.shuffle(&mut rng);
    }
    let order: Vec<usize> = if bipartite {
        let (mut na, mut nb) = (0, p.n_a);
        pos_side
            .iter()
            .map(|s| match s {
                Side::A => {
                    na += 1;
                    na - 1
                }
                Side::B => {
                    nb += 1;
                    nb - 1
                }
            })
            .collect()
    } else {
        let mut o: Vec<usize> = (0..n).collect();
        o.shuffle(&mut rng);
        o
    };

    let len = ((p.density * n as f64).round() as usize).max(1);
    let (l_range, r_range) = if p.separated {
        (0..p.n_a, p.n_a..n)
    } else {
        (0..n, 0..n)
    };
    let mut used = std::collections::BTreeSet::new();
    let mut pages = Vec::new();
    let kinds = std::iter::repeat(PageKind::Stack)
        .take(p.stacks)
        .chain(std::iter::repeat(PageKind::Queue).take(p.queues));
    for kind in kinds {
        for _attempt in 0..16 {
            let mut ls: Vec<usize> = (0..len).map(|_| rng.random_range(l_range.clone())).collect();
            let mut rs: Vec<usize> = (0..len).map(|_| rng.random_range(r_range.clone())).collect();
            ls.sort_unstable();
            rs.sort_unstable();
            if kind == PageKind::Stack {
                rs.reverse();
            }
            let mut edges = Vec::new();
            for (l, r) in ls.into_iter().zip(rs) {
                if l >= r || (bipartite && pos_side[l] == pos_side[r]) {
                    continue;
                }
                let e = Edge::new(order[l], order[r]);
                if used.insert(e) {
                    edges.push(e);
                }
            }
            if !edges.is_empty() {
                edges.sort_unstable();
                pages.push(Page::new(kind, edges));
                break;
            }
        }
    }
    let mut graph = Graph::new(n, used.iter().map(|e| e.endpoints()))?;
    if bipartite {
        let a: Vec<usize> = (0..p.n_a).collect();
        let b: Vec<usize> = (p.n_a..n).collect();
        graph = graph.with_bipartition(&a, &b)?;
    }
    LinearLayout::new(graph, VertexOrder::new(order)?, pages)
}

/// A random riffle of `order` into `k` parts: each vertex joins a random
/// part, and the target order interleaves the parts at random while keeping
/// every part's internal order.
pub fn random_riffle_spec(order: &VertexOrder, k: usize, seed: u64) -> Result<RiffleSpec> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    let mut rng = rng(seed);
    let mut parts = vec![Vec::new(); k];
    for &v in order.as_slice() {
        parts[rng.random_range(0..k)].push(v);
    }
    parts.retain(|p| !p.is_empty());
    let target = interleave(&parts, &mut rng);
    RiffleSpec::new(parts, target)
}

/// Like [`random_riffle_spec`] for a bipartite graph: `l` parts split side
/// A and `k - l` split side B. Returns the spec; parts `0..l'` are A-parts
/// where `l'` is reported alongside (empty parts are dropped).
pub fn random_bipartite_riffle_spec(
    graph: &Graph,
    order: &VertexOrder,
    l: usize,
    k: usize,
    separated_target: bool,
    seed: u64,
) -> Result<(RiffleSpec, usize)> {
    if l == 0 || l >= k {
        return Err(Error::InvalidParameters("need 0 < l < k".into()));
    }
    let sides = graph.sides().ok_or(Error::NoBipartition)?;
    let mut rng = rng(seed);
    let mut a_parts = vec![Vec::new(); l];
    let mut b_parts = vec![Vec::new(); k - l];
    for &v in order.as_slice() {
        match sides[v] {
            Side::A => a_parts[rng.random_range(0..l)].push(v),
            Side::B => b_parts[rng.random_range(0..k - l)].push(v),
        }
    }
    a_parts.retain(|p| !p.is_empty());
    b_parts.retain(|p| !p.is_empty());
    let l_eff = a_parts.len();
    let target = if separated_target {
        let a = interleave(&a_parts, &mut rng);
        let b = interleave(&b_parts, &mut rng);
        a.into_iter().chain(b).collect()
    } else {
        let all: Vec<Vec<usize>> = a_parts.iter().chain(&b_parts).cloned().collect();
        interleave(&all, &mut rng)
    };
    let parts = a_parts.into_iter().chain(b_parts).collect();
    Ok((RiffleSpec::new(parts, target)?, l_eff))
}

fn interleave(parts: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut tags: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| std::iter::repeat(i).take(p.len()))
        .collect();
    tags.shuffle(rng);
    let mut next = vec![0; parts.len()];
    tags.into_iter()
        .map(|i| {
            next[i] += 1;
            parts[i][next[i] - 1]
        })
        .collect()
}
