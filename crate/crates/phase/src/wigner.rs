use std::f64::consts::PI;

use loqc_fock::{FockError, ModeUnitary, C64};

use crate::{PhaseError, Result};

/// Point `α⃗` in the `m`-mode phase space.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpacePoint {
    alphas: Vec<C64>,
}

impl PhaseSpacePoint {
    pub fn new(alphas: Vec<C64>) -> Result<Self> {
        if alphas.iter().any(|a| !a.is_finite()) {
            return Err(PhaseError::Input("phase-space coordinates must be finite".into()));
        }
        Ok(PhaseSpacePoint { alphas })
    }

    pub fn alphas(&self) -> &[C64] {
        &self.alphas
    }

    pub fn modes(&self) -> usize {
        self.alphas.len()
    }
}

/// `⟨1|D(λ)|1⟩ = e^{−|λ|²/2}(1 − |λ|²)`.
pub fn displacement_overlap_fock1(lambda: C64) -> C64 {
    let x = lambda.norm_sqr();
    C64::new((-0.5 * x).exp() * (1.0 - x), 0.0)
}

fn check(u: &ModeUnitary, n: usize, p: &PhaseSpacePoint) -> Result<()> {
    let m = u.modes();
    if p.modes() != m {
        return Err(FockError::ModeMismatch { expected: m, got: p.modes() }.into());
    }
    if n > m {
        return Err(PhaseError::TooManyPhotons { photons: n, modes: m });
    }
    Ok(())
}

/// `U* v`: with `a_i† → Σ_j U_ij a_j†`, pulling a displacement or a
/// phase-space point back through the network conjugates the matrix.
fn pull_back(u: &ModeUnitary, v: &[C64]) -> Vec<C64> {
    let e = u.entries();
    (0..v.len()).map(|i| v.iter().enumerate().map(|(j, x)| e[(i, j)].conj() * x).sum()).collect()
}

/// Characteristic function of single photons in the first `n` modes after
/// `u`: `e^{−|λ⃗|²/2} Π_{j<n} (1 − |μ_j|²)` with `μ = U* λ`.
pub fn char_w(u: &ModeUnitary, n: usize, lambdas: &PhaseSpacePoint) -> Result<C64> {
    check(u, n, lambdas)?;
    let mu = pull_back(u, lambdas.alphas());
    let energy: f64 = mu.iter().map(|z| z.norm_sqr()).sum();
    let prod: f64 = mu[..n].iter().map(|z| 1.0 - z.norm_sqr()).product();
    Ok(C64::new((-0.5 * energy).exp() * prod, 0.0))
}

/// Wigner function `(2/π)^m e^{−2|α⃗|²} Π_{j<n} (4|β_j|² − 1)`, `β = U* α`.
pub fn wigner(u: &ModeUnitary, n: usize, alphas: &PhaseSpacePoint) -> Result<f64> {
    check(u, n, alphas)?;
    let m = u.modes();
    let beta = pull_back(u, alphas.alphas());
    let energy: f64 = alphas.alphas().iter().map(|z| z.norm_sqr()).sum();
    let prod: f64 = beta[..n].iter().map(|z| 4.0 * z.norm_sqr() - 1.0).product();
    Ok((2.0 / PI).powi(m as i32) * (-2.0 * energy).exp() * prod)
}
