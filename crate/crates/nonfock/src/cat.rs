use loqc_fock::{FockConfiguration, FockError, ModeUnitary, C64};

use crate::{NonFockError, Result};

/// Largest number of multi-mode coherent terms `Π_j t_j` summed explicitly.
pub const CAT_TERM_LIMIT: u128 = 1_000_000;

/// `(λ, α)` pairs of one mode's superposition `Σ λ |α⟩`.
pub type ModeTerms = Vec<(C64, C64)>;

pub fn coherent(alpha: C64) -> ModeTerms {
    vec![(C64::new(1.0, 0.0), alpha)]
}

pub fn vacuum() -> ModeTerms {
    coherent(C64::new(0.0, 0.0))
}

/// `|α⟩ + |−α⟩`, unnormalized.
pub fn even_cat(alpha: C64) -> ModeTerms {
    vec![(C64::new(1.0, 0.0), alpha), (C64::new(1.0, 0.0), -alpha)]
}

/// `|α⟩ − |−α⟩`, unnormalized.
pub fn odd_cat(alpha: C64) -> ModeTerms {
    vec![(C64::new(1.0, 0.0), alpha), (C64::new(-1.0, 0.0), -alpha)]
}

/// `f_n(α) = e^{−|α|²/2} αⁿ/√n!`, the `n`-photon amplitude of `|α⟩`.
pub fn coherent_coefficient(n: usize, alpha: C64) -> C64 {
    let mut v = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for k in 1..=n {
        v *= alpha / (k as f64).sqrt();
    }
    v
}

/// `⟨a|D(β)|b⟩` via the associated Laguerre form.
pub fn displacement_element(a: usize, b: usize, beta: C64) -> C64 {
    let x = beta.norm_sqr();
    let (lo, hi) = (a.min(b), a.max(b));
    let order = (hi - lo) as f64;
    // L_lo^{(hi−lo)}(x) by the three-term recurrence
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..lo {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + order - x) * cur - (k + order) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    let ratio: f64 = (lo + 1..=hi).map(|k| 1.0 / (k as f64).sqrt()).product();
    let shift = if a >= b { beta } else { -beta.conj() };
    shift.powu((hi - lo) as u32) * (ratio * (-0.5 * x).exp() * cur)
}

/// Per-mode photon-number cutoff `⌈|α|² + 8|α| + 10⌉` keeping the discarded
/// tail of a coherent component below about 1e-6.
pub fn photon_cutoff(alpha_max: f64) -> usize {
    (alpha_max * alpha_max + 8.0 * alpha_max + 10.0).ceil() as usize
}

/// Product input `⊗_i Σ_j λ_j^{(i)} |α_j^{(i)}⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentSuperposition {
    modes: Vec<ModeTerms>,
}

impl CoherentSuperposition {
    pub fn new(modes: Vec<ModeTerms>) -> Result<Self> {
        for (i, terms) in modes.iter().enumerate() {
            if terms.is_empty() {
                return Err(NonFockError::Input(format!("mode {i} has no terms")));
            }
            if terms.iter().any(|(l, a)| !(l.is_finite() && a.is_finite())) {
                return Err(NonFockError::Input(format!("mode {i} has a non-finite term")));
            }
        }
        let s = CoherentSuperposition { modes };
        if s.norm_sqr() <= 0.0 {
            return Err(NonFockError::Input("superposition has zero norm".into()));
        }
        Ok(s)
    }

    pub fn modes(&self) -> usize {
        self.modes.len()
    }

    pub fn mode_terms(&self, i: usize) -> &[(C64, C64)] {
        &self.modes[i]
    }

    /// `Π_j t_j`, the number of multi-mode coherent terms in the expansion.
    pub fn expansion_size(&self) -> u128 {
        self.modes.iter().map(|t| t.len() as u128).product()
    }

    /// Squared norm, including overlaps `⟨α|β⟩ = e^{−|α|²/2 − |β|²/2 + α*β}`
    /// between non-orthogonal components.
    pub fn norm_sqr(&self) -> f64 {
        self.modes
            .iter()
            .map(|terms| {
                let mut s = C64::new(0.0, 0.0);
                for &(la, a) in terms {
                    for &(lb, b) in terms {
                        let overlap = (-0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + a.conj() * b).exp();
                        s += la.conj() * lb * overlap;
                    }
                }
                s.re
            })
            .product()
    }

    pub fn max_amplitude(&self) -> f64 {
        self.modes.iter().flatten().fold(0.0, |m, (_, a)| m.max(a.norm()))
    }
}

fn check_modes(u: &ModeUnitary, m: usize) -> Result<()> {
    if u.modes() != m {
        return Err(FockError::ModeMismatch { expected: u.modes(), got: m }.into());
    }
    Ok(())
}

/// Output amplitudes of a multi-mode coherent state: `β_j = Σ_i U_{i,j} α_i`.
pub fn propagate_coherent(u: &ModeUnitary, alphas: &[C64]) -> Result<Vec<C64>> {
    check_modes(u, alphas.len())?;
    let e = u.entries();
    Ok((0..alphas.len()).map(|j| alphas.iter().enumerate().map(|(i, a)| e[(i, j)] * a).sum()).collect())
}

/// Normalized amplitude `⟨S|Û|ψ⟩` for a product of coherent superpositions.
///
/// Every assignment of one term per mode is propagated as a multi-mode
/// coherent state, so the cost is `Π_j t_j` propagations; a pure coherent
/// input is a single product of `f_{S_j}(β_j)`.
pub fn cat_amplitude(state: &CoherentSuperposition, u: &ModeUnitary, s: &FockConfiguration) -> Result<C64> {
    let m = state.modes();
    check_modes(u, m)?;
    if s.modes() != m {
        return Err(FockError::ModeMismatch { expected: m, got: s.modes() }.into());
    }
    let terms = state.expansion_size();
    if terms > CAT_TERM_LIMIT {
        return Err(NonFockError::TooManyTerms { terms, limit: CAT_TERM_LIMIT });
    }
    let occ = s.occupations();
    let mut pick = vec![0usize; m];
    let mut alphas = vec![C64::new(0.0, 0.0); m];
    let mut total = C64::new(0.0, 0.0);
    loop {
        let mut weight = C64::new(1.0, 0.0);
        for (k, &t) in pick.iter().enumerate() {
            let (l, a) = state.modes[k][t];
            weight *= l;
            alphas[k] = a;
        }
        let beta = propagate_coherent(u, &alphas)?;
        total += weight * beta.iter().zip(occ).map(|(&b, &n)| coherent_coefficient(n, b)).product::<C64>();
        // odometer over term indices
        let mut k = 0;
        while k < m {
            pick[k] += 1;
            if pick[k] < state.modes[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    Ok(total / state.norm_sqr().sqrt())
}

pub fn cat_probability(state: &CoherentSuperposition, u: &ModeUnitary, s: &FockConfiguration) -> Result<f64> {
    Ok(cat_amplitude(state, u, s)?.norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardnessBound {
    /// `α^{2n} csch^n(α²)`: every odd cat contributes its single-photon term.
    pub prob: f64,
    /// `n^{−k}`.
    pub threshold: f64,
    pub satisfied: bool,
}

/// Probability that `n` odd cats of amplitude `alpha` all project onto one
/// photon, compared with the polynomial threshold `n^{−k}`.
pub fn odd_cat_hardness_bound(alpha: f64, n: u32, k: f64) -> Result<HardnessBound> {
    if !(alpha > 0.0 && alpha.is_finite()) || n == 0 {
        return Err(NonFockError::Input(format!("need alpha > 0 and n ≥ 1, got alpha = {alpha}, n = {n}")));
    }
    let x = alpha * alpha;
    let per_mode = x / x.sinh();
    let prob = per_mode.powi(n as i32);
    let threshold = (n as f64).powf(-k);
    Ok(HardnessBound { prob, threshold, satisfied: prob > threshold })
}
