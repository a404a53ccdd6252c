use loqc_fock::{DMatrix, C64, UNITARY_TOL};
use rand::Rng;
use std::f64::consts::{PI, TAU};

use crate::{LoopError, Result};

/// General two-mode beamsplitter with phases, `0 ≤ α ≤ 2π`, `0 ≤ β,γ,δ ≤ π`.
///
/// Row 0 is the source port, row 1 the loop port; column 0 exits towards the
/// detector, column 1 enters the loop.
pub fn beamsplitter(alpha: f64, beta: f64, gamma: f64, delta: f64) -> [[C64; 2]; 2] {
    let e = |phase: f64| C64::from_polar(1.0, phase);
    let (s, c) = (delta / 2.0).sin_cos();
    [
        [e(alpha - beta / 2.0 - gamma / 2.0) * c, -e(alpha - beta / 2.0 + gamma / 2.0) * s],
        [e(alpha + beta / 2.0 - gamma / 2.0) * s, e(alpha + beta / 2.0 + gamma / 2.0) * c],
    ]
}

const SWAP: [[C64; 2]; 2] = [[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]];

/// Beamsplitter settings `u(1), …, u(m+1)` for one pass of an `m`-bin train.
/// The first bin is coupled fully into the loop and the last one fully out.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchSequence {
    steps: Vec<[[C64; 2]; 2]>,
}

impl SwitchSequence {
    pub fn new(steps: Vec<[[C64; 2]; 2]>) -> Result<Self> {
        if steps.len() < 2 {
            return Err(LoopError::Sequence(format!("need at least 2 steps, got {}", steps.len())));
        }
        let is_swap = |u: &[[C64; 2]; 2]| {
            (0..2).all(|i| (0..2).all(|j| (u[i][j] - SWAP[i][j]).norm() <= UNITARY_TOL))
        };
        if !is_swap(&steps[0]) || !is_swap(&steps[steps.len() - 1]) {
            return Err(LoopError::Sequence("first and last steps must be the swap".into()));
        }
        for (t, u) in steps.iter().enumerate() {
            let m = DMatrix::from_fn(2, 2, |i, j| u[i][j]);
            let dev = (m.adjoint() * &m - DMatrix::identity(2, 2)).iter().fold(0.0f64, |a, z| a.max(z.norm()));
            if dev > UNITARY_TOL {
                return Err(LoopError::Sequence(format!("step {} is not unitary (deviation {dev:.2e})", t + 1)));
            }
        }
        Ok(SwitchSequence { steps })
    }

    /// Swap boundaries around the given interior settings.
    pub fn with_interior(interior: Vec<[[C64; 2]; 2]>) -> Result<Self> {
        let mut steps = Vec::with_capacity(interior.len() + 2);
        steps.push(SWAP);
        steps.extend(interior);
        steps.push(SWAP);
        SwitchSequence::new(steps)
    }

    /// Interior angles drawn uniformly on their ranges.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let interior = (0..m.saturating_sub(1))
            .map(|_| beamsplitter(rng.random_range(0.0..TAU), rng.random_range(0.0..PI), rng.random_range(0.0..PI), rng.random_range(0.0..PI)))
            .collect();
        SwitchSequence::with_interior(interior).expect("sampled settings are unitary")
    }

    /// Number of time bins `m`.
    pub fn modes(&self) -> usize {
        self.steps.len() - 1
    }

    /// `u_{a,b}(t)` with 1-based `a, b, t`.
    pub fn u(&self, a: usize, b: usize, t: usize) -> C64 {
        self.steps[t - 1][a - 1][b - 1]
    }
}
