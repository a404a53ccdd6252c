//! Fock-state amplitudes through passive linear-optical networks.
//!
//! Throughout the workspace a network is described by an `m×m` transfer
//! matrix `U` acting on creation operators as `a_i† → Σ_j U[i][j] a_j†`,
//! i.e. rows index input modes and columns index output modes.

mod amplitude;
mod config;
mod haar;
mod matrix;
mod permanent;
pub mod rng;

pub use amplitude::{full_distribution, full_distribution_with, output_amplitude, AmplitudeMap, Cutoff};
pub use config::{configurations, FockConfiguration};
pub use haar::{random_matrix, HaarKind};
pub use matrix::{MatrixKind, ModeUnitary};
pub use permanent::{permanent_naive, permanent_ryser, NAIVE_LIMIT};

pub use nalgebra::DMatrix;
pub use num_complex::Complex64 as C64;

/// Tolerance used for unitarity and orthogonality checks.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FockError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("{what} = {value} exceeds the limit {limit}")]
    SizeGuard { what: &'static str, value: usize, limit: usize },
    #[error("photon number not conserved: input has {input}, output has {output}")]
    PhotonMismatch { input: usize, output: usize },
    #[error("configuration spans {got} modes, network has {expected}")]
    ModeMismatch { expected: usize, got: usize },
    #[error("matrix is not {kind}: deviation {deviation:.3e}")]
    Invariant { kind: &'static str, deviation: f64 },
}

pub type Result<T> = std::result::Result<T, FockError>;
