//! Executable connectivity predictors and a harness comparing them with the
//! brute-force component oracle over enumerated graph families.

mod family;
mod predict;

pub use family::{verify_family, FamilySpec, Instance, Theorem, Verdict};
pub use predict::{
    conjecture62_probe, cut_vertex_bound, cyclic_order_count, predict_multgraph_vs_star, predict_star_vs_multgraph,
    small_support_lemma,
};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Fs(#[from] fsg_core::FsError),
    #[error(transparent)]
    Orient(#[from] orientation_lab::OrientError),
    #[error(transparent)]
    Graph(#[from] graph_core::GraphError),
    #[error("unknown bundled family {0:?}")]
    UnknownFamily(String),
}

impl OracleError {
    /// Whether the failure came from the state budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, OracleError::Fs(fsg_core::FsError::BudgetExceeded { .. }))
    }
}
