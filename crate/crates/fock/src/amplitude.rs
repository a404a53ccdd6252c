use std::collections::BTreeMap;

use crate::{configurations, permanent_ryser, FockConfiguration, FockError, ModeUnitary, Result, C64};
use nalgebra::DMatrix;

/// Submatrix of `u` with row `i` repeated `input[i]` times and column `j`
/// repeated `output[j]` times.
pub(crate) fn transition_submatrix(u: &DMatrix<C64>, input: &FockConfiguration, output: &FockConfiguration) -> DMatrix<C64> {
    let rows = input.mode_list();
    let cols = output.mode_list();
    DMatrix::from_fn(rows.len(), cols.len(), |a, b| u[(rows[a], cols[b])])
}

/// Amplitude `γ_S = Per(U_S) / √(Π input! Π output!)` for one output configuration.
pub fn output_amplitude(u: &ModeUnitary, input: &FockConfiguration, output: &FockConfiguration) -> Result<C64> {
    let m = u.modes();
    for c in [input, output] {
        if c.modes() != m {
            return Err(FockError::ModeMismatch { expected: m, got: c.modes() });
        }
    }
    if input.photons() != output.photons() {
        return Err(FockError::PhotonMismatch { input: input.photons(), output: output.photons() });
    }
    let sub = transition_submatrix(u.entries(), input, output);
    let per = permanent_ryser(&sub)?;
    Ok(per / (input.factorial_product() * output.factorial_product()).sqrt())
}

/// Size limits for exhaustive enumeration of output configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cutoff {
    pub max_photons: usize,
    pub max_modes: usize,
}

impl Default for Cutoff {
    fn default() -> Self {
        Cutoff { max_photons: 8, max_modes: 12 }
    }
}

/// Output amplitudes keyed by configuration, iterated in colex order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AmplitudeMap {
    pub entries: BTreeMap<FockConfiguration, C64>,
}

impl AmplitudeMap {
    pub fn get(&self, s: &FockConfiguration) -> C64 {
        self.entries.get(s).copied().unwrap_or_default()
    }

    pub fn probability(&self, s: &FockConfiguration) -> f64 {
        self.get(s).norm_sqr()
    }

    pub fn probabilities(&self) -> impl Iterator<Item = (&FockConfiguration, f64)> {
        self.entries.iter().map(|(k, v)| (k, v.norm_sqr()))
    }

    pub fn total_probability(&self) -> f64 {
        self.entries.values().map(|v| v.norm_sqr()).sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Every output amplitude for `input` under the default [`Cutoff`].
pub fn full_distribution(u: &ModeUnitary, input: &FockConfiguration) -> Result<AmplitudeMap> {
    full_distribution_with(u, input, Cutoff::default())
}

pub fn full_distribution_with(u: &ModeUnitary, input: &FockConfiguration, cutoff: Cutoff) -> Result<AmplitudeMap> {
    let n = input.photons();
    let m = u.modes();
    if n > cutoff.max_photons {
        return Err(FockError::SizeGuard { what: "photon number", value: n, limit: cutoff.max_photons });
    }
    if m > cutoff.max_modes {
        return Err(FockError::SizeGuard { what: "mode count", value: m, limit: cutoff.max_modes });
    }
    let mut entries = BTreeMap::new();
    for s in configurations(n, m) {
        let amp = output_amplitude(u, input, &s)?;
        entries.insert(s, amp);
    }
    Ok(AmplitudeMap { entries })
}
