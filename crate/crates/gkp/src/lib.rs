//! Conditional preparation of GKP-type grid states: a spin-`J` ensemble
//! polarized along `x` drives a controlled position shift on squeezed
//! vacuum, and measuring `J_x` leaves a comb of displaced squeezed states.

mod encoding;
mod spin;
mod state;

pub use encoding::{
    db_from_xi, hurwitz_zeta2, peak_variances, success_prob_asymptotic, success_prob_limit, symmetric_encoding,
    xi_from_db, PeakVariances, SymmetricEncoding,
};
pub use spin::{wigner_d, SpinLightParams, WignerD};
pub use state::{
    conditional_state, displaced_squeezed_overlap, outcome_prob, outcome_probs, success_prob, ConditionalState,
    GaussianComb, Representation,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GkpError {
    #[error("invalid spin label: {0}")]
    Spin(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, GkpError>;
