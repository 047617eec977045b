//! Stack, queue and mixed linear layouts.
//!
//! A [`LinearLayout`] is a vertex order plus a partition of the edges into
//! stack pages (no two edges cross) and queue pages (no two edges nest).
//! The crate validates layouts, computes layout numbers of small graphs
//! exactly, transforms layouts into one another, and builds the
//! subdivisions that trade page types for division vertices.

pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod grid;
pub mod layout;
pub mod order;
pub mod par;
pub mod render;
pub mod solver;
pub mod transforms;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Side};
pub use grid::{from_grid, monotone_class, to_grid, GridRepresentation, MonotoneClass};
pub use layout::{
    edges_cross, edges_nest, is_separated, reverse_segment, separated_flip, validate_layout,
    LinearLayout, Page, PageKind, ValidationReport, Violation,
};
pub use order::VertexOrder;
pub use solver::{feasible, PageBudget, SolveResult, Solver, SolverConfig};
