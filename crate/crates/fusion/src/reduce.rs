use rand::Rng;

use crate::prob::fusion_distribution;
use crate::{FusionError, Result};

/// Outcome of one reduction attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reduction {
    pub operations: u64,
    pub final_size: usize,
    /// False when a detection overshot below the target.
    pub success: bool,
}

/// Removes photons from an `n`-photon state by mixing it with vacuum on a
/// weakly reflecting splitter until exactly `d` remain.
pub fn reduce_state<R: Rng + ?Sized>(n: usize, d: usize, eta_small: f64, rng: &mut R) -> Result<Reduction> {
    if n < d {
        return Err(FusionError::Strategy(format!("cannot reduce {n} photons to {d}")));
    }
    let mut size = n;
    let mut ops = 0u64;
    while size > d {
        let dist = fusion_distribution(size, 0, eta_small)?;
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut s = dist.len() - 1;
        for (k, p) in dist.iter().enumerate() {
            acc += p;
            if u < acc {
                s = k;
                break;
            }
        }
        ops += 1;
        if s > size - d {
            return Ok(Reduction { operations: ops, final_size: size - s, success: false });
        }
        size -= s;
    }
    Ok(Reduction { operations: ops, final_size: size, success: true })
}
