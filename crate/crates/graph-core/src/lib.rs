//! Graph substrate for friends-and-strangers computations: simple graphs,
//! multiplicity graphs and their lifts, and the structural predicates the
//! connectivity theorems are phrased in.

mod bridge;
mod contingency;
pub mod family;
mod graph;
mod multi;
mod spec;

pub use bridge::{bridge_sides, find_k_bridges};
pub use contingency::contingency_count;
pub use graph::{Articulation, SimpleGraph};
pub use multi::{CliquePartition, MultiplicityGraph};
pub use spec::GraphSpec;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("multiplicity list has length {got}, expected {expected}")]
    MultLength { expected: usize, got: usize },
    #[error("vertex {0} has multiplicity 0")]
    ZeroMultiplicity(usize),
    #[error("row sums total {rows} but column sums total {cols}")]
    MarginMismatch { rows: usize, cols: usize },
}
