//! Riffle splits: re-ordering a queue layout by interleaving parts whose
//! internal orders are kept, and splitting each queue by the parts of its
//! endpoints.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Side};
use crate::layout::{LinearLayout, Page, PageKind};
use crate::order::VertexOrder;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiffleSpec {
    pub parts: Vec<Vec<usize>>,
    pub target_order: VertexOrder,
}

impl RiffleSpec {
    /// Checks that the parts partition `0..n` for the target's `n`.
    pub fn new(parts: Vec<Vec<usize>>, target: Vec<usize>) -> Result<Self> {
        let target_order = VertexOrder::new(target)?;
        let n = target_order.len();
        let mut seen = vec![false; n];
        for &v in parts.iter().flatten() {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidRiffle(format!(
                    "vertex {v} is out of range or in two parts"
                )));
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidRiffle(format!("vertex {v} is in no part")));
        }
        Ok(RiffleSpec {
            parts,
            target_order,
        })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    fn part_of(&self) -> Vec<usize> {
        let mut part = vec![0; self.target_order.len()];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in p {
                part[v] = i;
            }
        }
        part
    }

    /// Every pair inside one part keeps its relative order from `order`.
    fn check_consistent(&self, order: &VertexOrder) -> Result<()> {
        if order.len() != self.target_order.len() {
            return Err(Error::InvalidRiffle("target order has the wrong length".into()));
        }
        let part = self.part_of();
        let mut last: Vec<Option<usize>> = vec![None; self.parts.len()];
        for &v in order.as_slice() {
            let p = self.target_order.position(v);
            if let Some(prev) = last[part[v]] {
                if p < prev {
                    return Err(Error::InvalidRiffle(format!(
                        "vertex {v} changes its order inside part {}",
                        part[v]
                    )));
                }
            }
            last[part[v]] = Some(p);
        }
        Ok(())
    }
}

fn require_pure_queue(layout: &LinearLayout) -> Result<()> {
    if !layout.is_pure_queue() {
        return Err(Error::WrongSignature {
            expected: "(0, q)".into(),
            stacks: layout.signature().0,
            queues: layout.signature().1,
        });
    }
    layout.require_valid()
}

/// Splits every queue `Q` into the sets `E_{i,j}` of edges whose left end
/// (in the input order) lies in part `i` and right end in part `j`. Each
/// set stays a queue under the target order.
fn split(layout: &LinearLayout, spec: &RiffleSpec) -> Result<LinearLayout> {
    let part = spec.part_of();
    let order = layout.order();
    let mut buckets: BTreeMap<(usize, usize, usize), Vec<Edge>> = BTreeMap::new();
    for (qi, page) in layout.pages().iter().enumerate() {
        for &e in &page.edges {
            let (l, r) = if order.precedes(e.u(), e.v()) {
                (e.u(), e.v())
            } else {
                (e.v(), e.u())
            };
            buckets.entry((qi, part[l], part[r])).or_default().push(e);
        }
    }
    let pages = buckets.into_values().map(Page::queue).collect();
    let out = LinearLayout::new(layout.graph().clone(), spec.target_order.clone(), pages)?;
    debug_assert!(crate::layout::validate_layout(&out).is_valid());
    Ok(out)
}

/// A pure `q`-queue layout re-ordered by a `k`-part riffle; at most `k²q`
/// queues.
pub fn riffle_split(layout: &LinearLayout, spec: &RiffleSpec) -> Result<LinearLayout> {
    require_pure_queue(layout)?;
    spec.check_consistent(layout.order())?;
    split(layout, spec)
}

/// Bipartite riffle: parts `0..l` lie in side A and `l..k` in side B; at
/// most `2l(k-l)q` queues.
pub fn riffle_split_bipartite(
    layout: &LinearLayout,
    spec: &RiffleSpec,
    l: usize,
) -> Result<LinearLayout> {
    require_pure_queue(layout)?;
    let sides = layout.graph().sides().ok_or(Error::NoBipartition)?;
    if l > spec.k() {
        return Err(Error::InvalidRiffle(format!("l = {l} exceeds k = {}", spec.k())));
    }
    for (i, p) in spec.parts.iter().enumerate() {
        let want = if i < l { Side::A } else { Side::B };
        if let Some(&v) = p.iter().find(|&&v| sides[v] != want) {
            return Err(Error::InvalidRiffle(format!(
                "vertex {v} of part {i} is not on side {want:?}"
            )));
        }
    }
    spec.check_consistent(layout.order())?;
    split(layout, spec)
}

/// Separates a bipartite pure `q`-queue layout into at most `2q` queues,
/// keeping the internal orders of both sides. The side of the first vertex
/// goes first.
pub fn separate(layout: &LinearLayout) -> Result<LinearLayout> {
    let sides = layout.graph().sides().ok_or(Error::NoBipartition)?;
    require_pure_queue(layout)?;
    let of = |s: Side| -> Vec<usize> {
        layout
            .order()
            .as_slice()
            .iter()
            .copied()
            .filter(|&v| sides[v] == s)
            .collect()
    };
    let (a, b) = (of(Side::A), of(Side::B));
    let first = layout
        .order()
        .as_slice()
        .first()
        .map(|&v| sides[v])
        .unwrap_or(Side::A);
    let target = match first {
        Side::A => a.iter().chain(&b).copied().collect(),
        Side::B => b.iter().chain(&a).copied().collect(),
    };
    let spec = RiffleSpec::new(vec![a, b], target)?;
    let out = riffle_split_bipartite(layout, &spec, 1)?;
    debug_assert!(out.pages().iter().all(|p| p.kind == PageKind::Queue));
    Ok(out)
}
