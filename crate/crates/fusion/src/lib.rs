//! Preparing large photon-number Fock states by repeatedly fusing smaller
//! ones on a beamsplitter and heralding on the number of photons detected
//! in one output port.

mod chain;
mod prob;
mod reduce;

pub use chain::{run_ensemble, run_strategy, wilson, BucketState, FusionStrategy, RateEstimate, StrategyKind, TraceRecord};
pub use prob::{
    fusion_distribution, fusion_prob, fusion_prob_closed_form, grow_prob, limited_recycling_prob, objective, optimize_eta,
    EtaObjective, ETA_MAX, ETA_MIN,
};
pub use reduce::{reduce_state, Reduction};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FusionError {
    #[error("beamsplitter reflectivity {0} must lie strictly between 0 and 1")]
    DegenerateBeamsplitter(f64),
    #[error("cannot detect {s} photons out of {total}")]
    Outcome { s: usize, total: usize },
    #[error("invalid strategy: {0}")]
    Strategy(String),
}

pub type Result<T> = std::result::Result<T, FusionError>;
