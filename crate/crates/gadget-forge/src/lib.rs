//! Gadget pairs `(G, H)` on `[m] ∪ {u, v}` in which `u` and `v` are
//! exchangeable from the identity, with structural validators, a search for
//! respecting embeddings into a host pair, and a BFS exchangeability check
//! for miniature pairs.

mod build;
mod embed;
mod exchange;
mod params;
mod validate;

pub use build::{build_gadget, GadgetDump, GadgetPair, Layout, SpecialSets, VertexDump};
pub use embed::{find_respecting_embeddings, push_swaps, Embeddings};
pub use exchange::{check_gadget_exchangeability, swap_script, ExchangeOutcome};
pub use params::{derive_params, desk_search, GadgetParams, Overrides};
pub use validate::{is_parity_wilsonian, short_cycles, validate_gadget, validate_gadget_with, CheckOutcome, ValidationReport};

use fsg_core::FsError;
use graph_core::GraphError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("placement conflict: {0}")]
    PlacementConflict(String),
    #[error("embedding search exceeded {0} nodes")]
    Budget(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fs(#[from] FsError),
}
