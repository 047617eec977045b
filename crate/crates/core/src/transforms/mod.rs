//! Layout-to-layout transformations.

mod checkerboard;
mod minor;
mod riffle;
mod same_perm;
mod four_queue;

pub use checkerboard::{checkerboard_transform, halve_diagonal_grid, BlockStructure, CheckerboardGrid};
pub use minor::{
    build_shallow_graph_H, check_contraction_bound, contract, queue_number_lower_bound,
    ContractionBound, HVertex, MinorMap, ShallowGraph,
};
pub use riffle::{riffle_split, riffle_split_bipartite, separate, RiffleSpec};
pub use same_perm::{same_permutation_transform, ExactOracle, QueueOracle, SamePermutation};
pub use four_queue::theorem5_transform;
