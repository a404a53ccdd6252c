use std::f64::consts::PI;

use loqc_fock::C64;

use crate::spin::{edge_column, index_of, SpinLightParams, WignerD};
use crate::{GkpError, Result};

/// `⟨α,ξ|β,ξ⟩ = exp(−½ e^{2ξ}(α−β)²)` for real displacements.
pub fn displaced_squeezed_overlap(a: f64, b: f64, xi: f64) -> f64 {
    (-0.5 * (2.0 * xi).exp() * (a - b).powi(2)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Position,
    Momentum,
}

/// Superposition of equal-width Gaussians.
///
/// Position: `f(q) = scale Σ w e^{−(q−c)²/2v}`, peaks at `c` of width `v`.
/// Momentum: `f(p) = scale e^{−p²/2v} Σ w e^{−icp}`, so each position peak
/// becomes a plane wave under a common envelope of width `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianComb {
    pub peaks: Vec<(f64, C64)>,
    pub variance: f64,
    pub scale: f64,
    pub representation: Representation,
}

impl GaussianComb {
    pub fn evaluate(&self, v: f64) -> C64 {
        match self.representation {
            Representation::Position => {
                let s: C64 = self.peaks.iter().map(|(c, w)| w * (-(v - c).powi(2) / (2.0 * self.variance)).exp()).sum();
                s * self.scale
            }
            Representation::Momentum => {
                let s: C64 = self.peaks.iter().map(|(c, w)| w * C64::from_polar(1.0, -c * v)).sum();
                s * self.scale * (-v * v / (2.0 * self.variance)).exp()
            }
        }
    }

    /// `∫|f|²` from pairwise Gaussian overlaps.
    pub fn norm_sqr(&self) -> f64 {
        let v = self.variance;
        let kernel = |dc: f64| match self.representation {
            Representation::Position => (-dc * dc / (4.0 * v)).exp(),
            Representation::Momentum => (-dc * dc * v / 4.0).exp(),
        };
        let mut sum = C64::new(0.0, 0.0);
        for (ca, wa) in &self.peaks {
            for (cb, wb) in &self.peaks {
                sum += wa.conj() * wb * kernel(ca - cb);
            }
        }
        self.scale * self.scale * (PI * v).sqrt() * sum.re
    }
}

/// Optical state left by spin outcome `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalState {
    pub x: f64,
    pub params: SpinLightParams,
    /// `d_{m,J} d_{m,x}` for `m = −J..=J`.
    pub weights: Vec<f64>,
    pub probability: f64,
}

impl ConditionalState {
    /// `ψ(q|x)`: peaks at `gm` with variance `e^{−2ξ}`.
    pub fn position(&self) -> GaussianComb {
        let p = &self.params;
        GaussianComb {
            peaks: p.labels().zip(&self.weights).map(|(m, &w)| (p.g() * m, C64::new(w, 0.0))).collect(),
            variance: (-2.0 * p.xi()).exp(),
            scale: (0.5 * p.xi()).exp() / (self.probability.sqrt() * PI.powf(0.25)),
            representation: Representation::Position,
        }
    }

    /// `ψ(p|x)`: envelope variance `e^{2ξ}`.
    pub fn momentum(&self) -> GaussianComb {
        let p = &self.params;
        GaussianComb {
            peaks: p.labels().zip(&self.weights).map(|(m, &w)| (p.g() * m, C64::new(w, 0.0))).collect(),
            variance: (2.0 * p.xi()).exp(),
            scale: (-0.5 * p.xi()).exp() / (self.probability.sqrt() * PI.powf(0.25)),
            representation: Representation::Momentum,
        }
    }
}

fn weights(params: &SpinLightParams, x: f64, table: Option<&WignerD>) -> Result<Vec<f64>> {
    let two_j = params.two_j();
    let k = index_of(x, two_j)?;
    let top = edge_column(two_j, true);
    let col = if k == two_j as usize {
        top.clone()
    } else if k == 0 {
        edge_column(two_j, false)
    } else {
        match table {
            Some(t) => t.column(x)?,
            None => WignerD::new(params.j())?.column(x)?,
        }
    };
    Ok(top.iter().zip(&col).map(|(a, b)| a * b).collect())
}

fn kernel_sum(params: &SpinLightParams, w: &[f64]) -> f64 {
    let c = 0.25 * params.g().powi(2) * (2.0 * params.xi()).exp();
    let n = w.len();
    // group by m − m′ so each Gaussian factor is evaluated once
    let mut total: f64 = w.iter().map(|a| a * a).sum();
    for delta in 1..n {
        let f = (-c * (delta * delta) as f64).exp();
        if f == 0.0 {
            break;
        }
        let cross: f64 = (0..n - delta).map(|i| w[i] * w[i + delta]).sum();
        total += 2.0 * f * cross;
    }
    total
}

/// `𝒫(x) = Σ_{m,m′} d_{m,J}d_{m,x}d_{m′,J}d_{m′,x} e^{−g²e^{2ξ}(m−m′)²/4}`.
pub fn outcome_prob(x: f64, params: &SpinLightParams) -> Result<f64> {
    Ok(kernel_sum(params, &weights(params, x, None)?))
}

/// `𝒫(x)` for `x = −J..=J`.
pub fn outcome_probs(params: &SpinLightParams) -> Result<Vec<f64>> {
    let table = WignerD::new(params.j())?;
    params.labels().map(|x| Ok(kernel_sum(params, &weights(params, x, Some(&table))?))).collect()
}

/// `𝒫(+J) + 𝒫(−J)`.
pub fn success_prob(params: &SpinLightParams) -> Result<f64> {
    let j = params.j();
    Ok(outcome_prob(j, params)? + outcome_prob(-j, params)?)
}

pub fn conditional_state(x: f64, params: &SpinLightParams) -> Result<ConditionalState> {
    let w = weights(params, x, None)?;
    let probability = kernel_sum(params, &w);
    if probability <= 0.0 {
        return Err(GkpError::Parameter(format!("outcome {x} has probability {probability}")));
    }
    Ok(ConditionalState { x, params: *params, weights: w, probability })
}
