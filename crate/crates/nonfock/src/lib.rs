//! Output amplitudes of linear-optical networks fed with non-Fock inputs:
//! superpositions of coherent states, photon-added and displaced
//! single-photon states, and photon-added squeezed vacuum read out by parity
//! detection.

mod cat;
mod passv;
mod spacs;

pub use cat::{
    cat_amplitude, cat_probability, coherent, coherent_coefficient, displacement_element, even_cat, odd_cat,
    odd_cat_hardness_bound, photon_cutoff, propagate_coherent, vacuum, CoherentSuperposition, HardnessBound, ModeTerms,
    CAT_TERM_LIMIT,
};
pub use passv::{passv_sample, Parity, PassvInput};
pub use spacs::{dspfs_output, spacs_stats, DisplacedFockOutput, Regime, SpacsStats};

use loqc_fock::FockError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NonFockError {
    #[error("superposition expands into {terms} terms, limit is {limit}")]
    TooManyTerms { terms: u128, limit: u128 },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parity pattern has {odd} odd modes but {photons} photons were added")]
    Parity { odd: usize, photons: usize },
    #[error(transparent)]
    Fock(#[from] FockError),
}

pub type Result<T> = std::result::Result<T, NonFockError>;
