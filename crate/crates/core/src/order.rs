use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total order on `0..n`: `order[p]` is the vertex at position `p` and
/// `positions[v]` the position of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexOrder {
    order: Vec<usize>,
    positions: Vec<usize>,
}

impl VertexOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut positions = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n || positions[v] != usize::MAX {
                return Err(Error::NotAPermutation(n));
            }
            positions[v] = p;
        }
        Ok(VertexOrder { order, positions })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrder {
            order: (0..n).collect(),
            positions: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, v: usize) -> usize {
        self.positions[v]
    }

    /// Position of `v`, or an error if `v` is not covered by this order.
    pub fn try_position(&self, v: usize) -> Result<usize> {
        self.positions
            .get(v)
            .copied()
            .ok_or(Error::VertexOutOfRange {
                vertex: v,
                n: self.len(),
            })
    }

    pub fn vertex_at(&self, p: usize) -> usize {
        self.order[p]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.order
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.positions[a] < self.positions[b]
    }

    /// Reverses the vertices at positions `from..=to`.
    pub fn reverse_segment(&self, from: usize, to: usize) -> Result<Self> {
        let n = self.len();
        if from > to || to >= n {
            return Err(Error::PositionRange { from, to, n });
        }
        let mut order = self.order.clone();
        order[from..=to].reverse();
        VertexOrder::new(order)
    }

    pub fn reversed(&self) -> Self {
        let order: Vec<usize> = self.order.iter().rev().copied().collect();
        VertexOrder::new(order).expect("reversal of a permutation")
    }
}

impl TryFrom<Vec<usize>> for VertexOrder {
    type Error = Error;

    fn try_from(order: Vec<usize>) -> Result<Self> {
        VertexOrder::new(order)
    }
}

impl From<VertexOrder> for Vec<usize> {
    fn from(o: VertexOrder) -> Self {
        o.order
    }
}
