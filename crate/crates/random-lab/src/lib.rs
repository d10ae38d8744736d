//! Seeded random graph samplers, packing search, the matching-based
//! balancing procedure and Monte Carlo sweeps over edge probabilities.

mod balance;
mod packing;
mod sample;
mod sweep;

pub use balance::{a_side_count, balance_arrangement, is_balanced, SwapSequence};
pub use packing::{find_packing, DEFAULT_NODE_BUDGET};
pub use sample::{edge_uniforms, sample_bipartite, sample_gnp, threshold_bipartite, threshold_gnp, trial_rng};
pub use sweep::{crossover, run_sweep, run_trials, wilson_interval, write_csv, ExperimentConfig, Model, Statistic, SweepRow, TrialOutcome};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum RandomError {
    #[error("search exceeded {0} nodes")]
    NodeBudget(u64),
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("graphs have different orders ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("graph is not bipartite with sides 0..n and n..2n")]
    NotBipartite,
    #[error("invalid arrangement: {0}")]
    BadArrangement(String),
    #[error("matching of size {nu} cannot supply the {needed} swaps required")]
    InsufficientMatching { nu: usize, needed: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}
