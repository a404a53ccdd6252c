use loqc_fock::{permanent_ryser, DMatrix, FockError, MatrixKind, ModeUnitary, C64};

use crate::{NonFockError, Result};

/// `n` photons added to squeezed vacuum of squeezing `xi` in the first `n`
/// modes, squeezed vacuum in the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassvInput {
    pub photons: usize,
    pub xi: f64,
}

impl PassvInput {
    pub fn new(photons: usize, xi: f64) -> Result<Self> {
        if !xi.is_finite() {
            return Err(NonFockError::Input(format!("squeezing must be finite, got {xi}")));
        }
        Ok(PassvInput { photons, xi })
    }

    /// `[1 + sinh² ξ]^{−n/2}`, normalizing `Π a_i† |ξ⟩`.
    pub fn normalization(&self) -> f64 {
        (1.0 + self.xi.sinh().powi(2)).sqrt().powi(-(self.photons as i32))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Probability of a parity pattern at the output of a real orthogonal
/// network fed with photon-added squeezed vacuum.
///
/// Squeezed vacuum holds only even photon numbers and a real network maps the
/// product of equally squeezed modes to itself, so a mode reads odd exactly
/// when it received one of the added photons. Patterns with `n` odd modes
/// therefore identify a collision-free configuration `S`, whose probability
/// `|Per(O_S)|²` does not involve the squeezing. Patterns with fewer odd
/// modes come from photon collisions and are rejected.
pub fn passv_sample(o: &ModeUnitary, input: &PassvInput, parity: &[Parity]) -> Result<f64> {
    let m = o.modes();
    let n = input.photons;
    if o.kind() != MatrixKind::Orthogonal {
        return Err(NonFockError::Input("parity sampling needs a real orthogonal network".into()));
    }
    if parity.len() != m {
        return Err(FockError::ModeMismatch { expected: m, got: parity.len() }.into());
    }
    if n > m {
        return Err(NonFockError::Input(format!("{n} photon-added modes exceed {m} modes")));
    }
    let odd: Vec<usize> = (0..m).filter(|&j| parity[j] == Parity::Odd).collect();
    if odd.len() != n {
        return Err(NonFockError::Parity { odd: odd.len(), photons: n });
    }
    let e = o.entries();
    let sub = DMatrix::from_fn(n, n, |a, b| e[(a, odd[b])]);
    let per: C64 = permanent_ryser(&sub)?;
    Ok(per.norm_sqr())
}
