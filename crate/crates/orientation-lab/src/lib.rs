//! Acyclic orientations of a host graph, the flip relations between them and
//! the periods used to count components of friends-and-strangers graphs on
//! paths and cycles.

mod predict;
mod relations;
mod space;

pub use predict::{
    coprime_forest_connected, lift_order, predict_cycle_components, predict_path_components, unit_cycle_components,
};
pub use relations::{ClassPartition, ClassSummary, Relation};
pub use space::{block_sequence_period, AcycSpace, Orientation, OrientationArcs, PeriodProfile, MAX_HOST_EDGES};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum OrientError {
    #[error("host has {0} edges; at most 128 supported")]
    HostTooLarge(usize),
    #[error("invalid block structure: {0}")]
    BadBlocks(String),
    #[error("{0}-{1} is not a host edge")]
    NotAnEdge(usize, usize),
    #[error("orientation contains a directed cycle")]
    Cyclic,
    #[error("invalid arrangement: {0}")]
    BadArrangement(String),
    #[error("no legal flip at vertex {0}")]
    IllegalFlip(usize),
}
