//! Characteristic and Wigner functions of single photons after a linear
//! network, and numerical evaluation of the phase-space integral whose value
//! is `|Per(U^{n×n})|²`.

mod integral;
mod quadrature;
mod wigner;

pub use integral::{
    block_diagonal_check, full_form_integral, integral_prob, IntegralEstimate, Method, MONTE_CARLO_MAX_PHOTONS,
    QUADRATURE_MAX_PHOTONS,
};
pub use quadrature::{gauss_hermite, integrate_plane};
pub use wigner::{char_w, displacement_overlap_fock1, wigner, PhaseSpacePoint};

use loqc_fock::FockError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PhaseError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{photons} photons do not fit in {modes} modes")]
    TooManyPhotons { photons: usize, modes: usize },
    #[error(transparent)]
    Fock(#[from] FockError),
}

pub type Result<T> = std::result::Result<T, PhaseError>;
