use loqc_fock::{DMatrix, FockConfiguration, ModeUnitary, C64};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use std::f64::consts::{PI, TAU};

use crate::map::{lossy_loop_map, LossParams};
use crate::switch::{beamsplitter, SwitchSequence};
use crate::{LoopError, Result};

/// Closeness of `|U|` to the uniform map, `(Σ|U_ij|)² / (m² Σ|U_ij|²)`.
/// Invariant under rescaling, so global loss does not enter.
pub fn similarity(u: &DMatrix<C64>) -> Result<f64> {
    let m = u.nrows() as f64;
    let l1: f64 = u.iter().map(|z| z.norm()).sum();
    let l2: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    if l2 == 0.0 {
        return Err(LoopError::Parameter("similarity of the zero map".into()));
    }
    Ok(l1 * l1 / (m * m * l2))
}

/// `(Σ|U_ij|)² / m³` for a unitary, where `Σ|U_ij|² = m`.
pub fn similarity_lossless(u: &ModeUnitary) -> f64 {
    let m = u.modes() as f64;
    let l1: f64 = u.entries().iter().map(|z| z.norm()).sum();
    l1 * l1 / (m * m * m)
}

/// `Π_i (Σ_j |U_ij|²)^{k_i}`: probability that no photon of input `k` is lost.
pub fn postselect_prob(u: &DMatrix<C64>, input: &FockConfiguration) -> Result<f64> {
    if input.modes() != u.nrows() {
        return Err(loqc_fock::FockError::ModeMismatch { expected: u.nrows(), got: input.modes() }.into());
    }
    Ok(input
        .occupations()
        .iter()
        .enumerate()
        .map(|(i, &k)| u.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>().powi(k as i32))
        .product())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub similarity: f64,
    pub sequences: Vec<SwitchSequence>,
}

type Angles = Vec<[f64; 4]>;

fn build(angles: &[Angles]) -> Vec<SwitchSequence> {
    angles
        .iter()
        .map(|pass| {
            SwitchSequence::with_interior(pass.iter().map(|a| beamsplitter(a[0], a[1], a[2], a[3])).collect())
                .expect("beamsplitters are unitary")
        })
        .collect()
}

fn score(angles: &[Angles], loss: LossParams) -> f64 {
    let map = lossy_loop_map(&build(angles), loss).expect("consistent passes");
    similarity(&map.inner).unwrap_or(0.0)
}

/// Maximizes the similarity of the lossy `L`-pass map over switch settings.
///
/// `trials` settings are drawn uniformly on the angle ranges; the best one is
/// then refined by `trials` Gaussian perturbation steps with a shrinking
/// scale, keeping only improvements.
pub fn similarity_search<R: Rng + ?Sized>(m: usize, loops: usize, loss: LossParams, trials: usize, rng: &mut R) -> Result<SearchResult> {
    if m < 2 || loops < 1 || trials < 1 {
        return Err(LoopError::Parameter(format!("need m ≥ 2, L ≥ 1, trials ≥ 1 (m={m}, L={loops}, trials={trials})")));
    }
    let draw = |rng: &mut R| -> Vec<Angles> {
        (0..loops)
            .map(|_| {
                (0..m - 1)
                    .map(|_| [rng.random_range(0.0..TAU), rng.random_range(0.0..PI), rng.random_range(0.0..PI), rng.random_range(0.0..PI)])
                    .collect()
            })
            .collect()
    };
    let mut best = draw(rng);
    let mut best_s = score(&best, loss);
    for _ in 1..trials {
        let cand = draw(rng);
        let s = score(&cand, loss);
        if s > best_s {
            best = cand;
            best_s = s;
        }
    }
    let mut scale = 0.3;
    for _ in 0..trials {
        let noise = Normal::new(0.0, scale).expect("positive scale");
        let cand: Vec<Angles> = best
            .iter()
            .map(|pass| {
                pass.iter()
                    .map(|a| [a[0] + noise.sample(rng), a[1] + noise.sample(rng), a[2] + noise.sample(rng), a[3] + noise.sample(rng)])
                    .collect()
            })
            .collect();
        let s = score(&cand, loss);
        if s > best_s {
            best = cand;
            best_s = s;
        } else {
            scale = (scale * 0.995).max(1e-4);
        }
    }
    Ok(SearchResult { similarity: best_s, sequences: build(&best) })
}
