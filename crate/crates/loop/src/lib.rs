//! Fiber-loop (time-bin) implementation of a linear-optical network.
//!
//! A pulse train of `m` time bins passes a dynamically switched beamsplitter
//! that couples it into and out of an inner delay loop of length `τ`. Each
//! pass of the train through the inner loop implements an upper-Hessenberg
//! map `V`; `L` passes (via an outer loop) compose to `U = V(1)·…·V(L)`.

mod map;
mod metrics;
mod mismatch;
mod switch;

pub use map::{ideal_loop_map, loop_pass_map, loss_matrix, lossy_loop_map, lossy_pass_map, LossParams, LossyLoopMap};
pub use metrics::{postselect_prob, similarity, similarity_lossless, similarity_search, SearchResult};
pub use mismatch::{mismatch_fidelity, mismatch_fidelity_fixed, TemporalPhoton, MISMATCH_GUARD};
pub use switch::{beamsplitter, SwitchSequence};

use loqc_fock::FockError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LoopError {
    #[error("invalid switch sequence: {0}")]
    Sequence(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("outside the small-mismatch regime: {0}")]
    MismatchRegime(String),
    #[error(transparent)]
    Fock(#[from] FockError),
}

pub type Result<T> = std::result::Result<T, LoopError>;
