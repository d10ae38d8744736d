//! Friends-and-strangers graphs materialized over their arrangement spaces.
//!
//! `FsInstance` covers the bijective and single-multiplicity constructions,
//! `FsmmInstance` the double-multiplicity one. Components come from a
//! union-find pass over every arrangement in canonical order.

mod audit;
mod components;
mod space;

pub use audit::{
    kbridge_component_invariant, labels_exchangeable, parity_audit, permutation_parity, positions_exchangeable,
    quotient_audit, QuotientAudit,
};
pub use components::{build_components, component_of, ComponentsReport, ComponentsSummary, UnionFind, DEFAULT_BUDGET};
pub use space::{multinomial, FsGraph, FsInstance, FsmmInstance, Variant};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FsError {
    #[error("{positions} positions but {labels} labels in total")]
    SizeMismatch { positions: usize, labels: usize },
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("state space has {states} arrangements, budget is {budget}")]
    BudgetExceeded { states: u128, budget: u64 },
    #[error("graph {0} is not bipartite")]
    NotBipartite(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
