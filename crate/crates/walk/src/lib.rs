//! Discrete-time coined quantum walks on a square lattice with static
//! bit-flip defects and sign-flip dephasing.
//!
//! Basis states are `|x, y, c_x, c_y⟩` with `c ∈ {+1, −1}`; the walker starts
//! in `|0, 0, +1, +1⟩`.

mod dephase;
mod ensemble;
mod lattice;

pub use dephase::{average_dephased_density, dephase, dephase_map_check, measurement_equivalent};
pub use ensemble::{ensemble_run, metrics, EnsemblePoint, Metrics, WalkConfig};
pub use lattice::{step, Coin, CoinField, WalkState};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WalkError {
    #[error("step {time} would leave a lattice of half-extent {extent}")]
    Extent { time: usize, extent: usize },
    #[error("coin field has half-extent {field}, state has {state}")]
    FieldMismatch { field: usize, state: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, WalkError>;
