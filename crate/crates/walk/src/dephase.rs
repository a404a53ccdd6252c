use loqc_fock::{DMatrix, C64};
use rand::Rng;

use crate::lattice::WalkState;
use crate::{Result, WalkError};

fn check(p_d: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p_d) {
        return Err(WalkError::Parameter(format!("dephasing probability {p_d} outside [0, 1]")));
    }
    Ok(())
}

fn flip_signs<R: Rng + ?Sized>(amps: &mut [C64], p_d: f64, rng: &mut R) {
    for a in amps {
        if rng.random::<f64>() < p_d {
            *a = -*a;
        }
    }
}

/// Flips the sign of every basis amplitude independently with probability
/// `p_d`. Only the reachable sublattice is touched; elsewhere the amplitudes
/// are zero.
pub fn dephase<R: Rng + ?Sized>(state: &mut WalkState, p_d: f64, rng: &mut R) -> Result<()> {
    check(p_d)?;
    if p_d == 0.0 {
        return Ok(());
    }
    let sites: Vec<(i64, i64)> = state.live_sites().collect();
    for (x, y) in sites {
        flip_signs(state.site_amps_mut(x, y), p_d, rng);
    }
    Ok(())
}

/// Factor applied to every off-diagonal element of `ρ` by one round of
/// sign flips: `(1 − 2p_d)²`.
pub fn dephase_map_check(p_d: f64) -> f64 {
    (1.0 - 2.0 * p_d).powi(2)
}

/// Probability `4(1 − p_d)p_d` of a projective measurement with the same
/// off-diagonal decay.
pub fn measurement_equivalent(p_d: f64) -> f64 {
    4.0 * (1.0 - p_d) * p_d
}

/// Average of `|ψ′⟩⟨ψ′|` over `trials` independent sign-flip patterns.
pub fn average_dephased_density<R: Rng + ?Sized>(psi: &[C64], p_d: f64, trials: usize, rng: &mut R) -> Result<DMatrix<C64>> {
    check(p_d)?;
    if trials == 0 {
        return Err(WalkError::Parameter("need at least one trial".into()));
    }
    let n = psi.len();
    let mut rho = DMatrix::zeros(n, n);
    let mut v = psi.to_vec();
    for _ in 0..trials {
        v.copy_from_slice(psi);
        flip_signs(&mut v, p_d, rng);
        for i in 0..n {
            for j in 0..n {
                rho[(i, j)] += v[i] * v[j].conj();
            }
        }
    }
    Ok(rho / C64::new(trials as f64, 0.0))
}
