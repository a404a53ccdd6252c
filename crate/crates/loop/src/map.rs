use loqc_fock::{DMatrix, MatrixKind, ModeUnitary, C64};

use crate::switch::SwitchSequence;
use crate::{LoopError, Result};

/// Fiber efficiency per `τ` of fiber and switch efficiency per pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossParams {
    pub eta_f: f64,
    pub eta_s: f64,
}

impl LossParams {
    pub fn new(eta_f: f64, eta_s: f64) -> Result<Self> {
        for (name, v) in [("eta_f", eta_f), ("eta_s", eta_s)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(LoopError::Parameter(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        Ok(LossParams { eta_f, eta_s })
    }

    pub fn lossless() -> Self {
        LossParams { eta_f: 1.0, eta_s: 1.0 }
    }

    /// Combined efficiency of one inner-loop round trip.
    pub fn eta(&self) -> f64 {
        self.eta_f * self.eta_s
    }
}

/// `V[i][j]` for one pass, with every path weighted by `η_s η^{traversals}`.
fn pass_entries(seq: &SwitchSequence, loss: LossParams) -> DMatrix<C64> {
    let m = seq.modes();
    let eta = loss.eta();
    DMatrix::from_fn(m, m, |r, c| {
        let (i, j) = (r + 1, c + 1);
        if i > j + 1 {
            C64::new(0.0, 0.0)
        } else if i == j + 1 {
            seq.u(1, 1, i) * loss.eta_s
        } else {
            let stay: C64 = (i + 1..=j).map(|k| seq.u(2, 2, k)).product();
            seq.u(1, 2, i) * seq.u(2, 1, j + 1) * stay * loss.eta_s * eta.powi((j - i + 1) as i32)
        }
    })
}

/// Lossless map implemented by one pass of the pulse train.
pub fn loop_pass_map(seq: &SwitchSequence, m: usize) -> Result<ModeUnitary> {
    if seq.modes() != m {
        return Err(LoopError::Sequence(format!("sequence has {} steps, {m} modes need {}", seq.modes() + 1, m + 1)));
    }
    Ok(ModeUnitary::new(pass_entries(seq, LossParams::lossless()), MatrixKind::Unitary)?)
}

/// One lossy pass `V′`.
pub fn lossy_pass_map(seq: &SwitchSequence, loss: LossParams) -> DMatrix<C64> {
    pass_entries(seq, loss)
}

fn check_passes(seqs: &[SwitchSequence]) -> Result<usize> {
    let m = seqs.first().ok_or_else(|| LoopError::Parameter("need at least one loop".into()))?.modes();
    if seqs.iter().any(|s| s.modes() != m) {
        return Err(LoopError::Sequence("all passes must have the same number of bins".into()));
    }
    Ok(m)
}

/// `U = V(1)·…·V(L)` (rows are inputs, so the first pass is leftmost).
pub fn ideal_loop_map(seqs: &[SwitchSequence]) -> Result<ModeUnitary> {
    let m = check_passes(seqs)?;
    let u = seqs.iter().fold(DMatrix::identity(m, m), |acc, s| acc * pass_entries(s, LossParams::lossless()));
    Ok(ModeUnitary::new(u, MatrixKind::Unitary)?)
}

/// Lossy map of `L` inner-loop passes, with the path-independent outer-loop
/// loss kept apart from the biased inner part.
#[derive(Debug, Clone, PartialEq)]
pub struct LossyLoopMap {
    /// `Π_l V′(l) = U ∘ 𝓛(L)`.
    pub inner: DMatrix<C64>,
    /// `η_f^{m(L−1)} η_s^{2(L−1)}`.
    pub outer_factor: f64,
}

impl LossyLoopMap {
    /// Complete amplitude map `U′`.
    pub fn full(&self) -> Result<ModeUnitary> {
        Ok(ModeUnitary::new(self.inner.map(|z| z * self.outer_factor), MatrixKind::LossyMap)?)
    }
}

pub fn lossy_loop_map(seqs: &[SwitchSequence], loss: LossParams) -> Result<LossyLoopMap> {
    let m = check_passes(seqs)?;
    let l = seqs.len() as i32;
    let inner = seqs.iter().fold(DMatrix::identity(m, m), |acc, s| acc * pass_entries(s, loss));
    let outer_factor = loss.eta_f.powi(m as i32 * (l - 1)) * loss.eta_s.powi(2 * (l - 1));
    Ok(LossyLoopMap { inner, outer_factor })
}

/// `𝓛_{i,j}(L) = η_s^L η^{L+j−i}`.
pub fn loss_matrix(m: usize, loops: usize, loss: LossParams) -> DMatrix<f64> {
    let eta = loss.eta();
    DMatrix::from_fn(m, m, |i, j| {
        let k = loops as i32 + j as i32 - i as i32;
        // Unreachable pairs (k < 0) carry no amplitude at all.
        if k < 0 {
            0.0
        } else {
            loss.eta_s.powi(loops as i32) * eta.powi(k)
        }
    })
}
