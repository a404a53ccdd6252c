use std::fmt;

use loqc_fock::{full_distribution, AmplitudeMap, FockConfiguration, ModeUnitary, C64};

use crate::cat::{displacement_element, propagate_coherent};
use crate::{NonFockError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `|α|² ≤ 1/n`: the all-photon term is post-selected with inverse
    /// polynomial probability.
    Hard,
    Intermediate,
    /// `|α|² ≥ n²`: detection almost always returns vacuum.
    Easy,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Hard => "hard",
            Regime::Intermediate => "intermediate",
            Regime::Easy => "easy",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpacsStats {
    /// `probs[i]`: probability of counting `i` photons after counter-displacement.
    pub probs: Vec<f64>,
    pub regime: Regime,
}

/// Total photon count of `n` photon-added coherent states with equal
/// `|α|² = alpha2`: `P_i = C(n,i) (|α|²)^{n−i} / (1+|α|²)^n`.
pub fn spacs_stats(n: usize, alpha2: f64) -> Result<SpacsStats> {
    if !(alpha2 >= 0.0 && alpha2.is_finite()) || n == 0 {
        return Err(NonFockError::Input(format!("need n ≥ 1 and |α|² ≥ 0, got n = {n}, |α|² = {alpha2}")));
    }
    let mut probs = vec![0.0; n + 1];
    if alpha2 == 0.0 {
        probs[n] = 1.0;
    } else {
        let nf = n as f64;
        let (la, l1) = (alpha2.ln(), alpha2.ln_1p());
        // ln C(n, i) built up from i = 0
        let mut ln_c = 0.0;
        for (i, p) in probs.iter_mut().enumerate() {
            if i > 0 {
                ln_c += ((n - i + 1) as f64).ln() - (i as f64).ln();
            }
            *p = (ln_c + (nf - i as f64) * la - nf * l1).exp();
        }
    }
    let regime = if alpha2 <= 1.0 / n as f64 {
        Regime::Hard
    } else if alpha2 >= (n * n) as f64 {
        Regime::Easy
    } else {
        Regime::Intermediate
    };
    Ok(SpacsStats { probs, regime })
}

/// Output of displaced Fock inputs `Π_i D_i(α_i) (a_i†)^{n_i} |0⟩`: the Fock
/// amplitudes of `Û|n⟩` displaced by `β = Uᵀα`.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacedFockOutput {
    pub displacement: Vec<C64>,
    fock: AmplitudeMap,
}

impl DisplacedFockOutput {
    /// Amplitudes left after undoing the output displacement.
    pub fn counter_displaced(&self) -> &AmplitudeMap {
        &self.fock
    }

    /// Amplitude of counting `k` photons without counter-displacement,
    /// `Σ_S γ_S Π_j ⟨k_j|D(β_j)|S_j⟩`.
    pub fn amplitude(&self, k: &FockConfiguration) -> C64 {
        self.fock
            .entries
            .iter()
            .map(|(s, g)| {
                let d: C64 = s
                    .occupations()
                    .iter()
                    .zip(k.occupations())
                    .zip(&self.displacement)
                    .map(|((&sj, &kj), &b)| displacement_element(kj, sj, b))
                    .product();
                g * d
            })
            .sum()
    }
}

/// Displaced Fock inputs through `u`; the displacement commutes through the
/// network, so the output is the ordinary Fock output displaced by `Uᵀα`.
pub fn dspfs_output(u: &ModeUnitary, alphas: &[C64], input: &FockConfiguration) -> Result<DisplacedFockOutput> {
    let displacement = propagate_coherent(u, alphas)?;
    let fock = full_distribution(u, input)?;
    Ok(DisplacedFockOutput { displacement, fock })
}
