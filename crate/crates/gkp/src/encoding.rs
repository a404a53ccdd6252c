use std::f64::consts::PI;

use crate::spin::{ln_binomial, two_j_of, SpinLightParams};
use crate::Result;

/// `ξ` for squeezing `s` in dB, with `s = −10 log₁₀(e^{−2ξ}/(1/2))`.
pub fn xi_from_db(s: f64) -> f64 {
    0.5 * (2.0 * 10f64.powf(s / 10.0)).ln()
}

pub fn db_from_xi(xi: f64) -> f64 {
    -10.0 * (2.0 * (-2.0 * xi).exp()).log10()
}

/// Parameters equating the `q` and `p` peak widths: `g = √π`,
/// `J = (2/π)e^{2ξ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEncoding {
    pub g: f64,
    pub j_exact: f64,
    /// Nearest integer (how the squeezing table is tabulated).
    pub j: f64,
    /// Nearest multiple of ½.
    pub j_half: f64,
}

pub fn symmetric_encoding(xi: f64) -> SymmetricEncoding {
    let j_exact = 2.0 / PI * (2.0 * xi).exp();
    SymmetricEncoding {
        g: PI.sqrt(),
        j_exact,
        j: j_exact.round().max(1.0),
        j_half: ((2.0 * j_exact).round() / 2.0).max(0.5),
    }
}

/// `ζ(2, a) = Σ_{k≥0} (k + a)^{−2}` for `a > 0`: upward recurrence to
/// `a ≥ 10`, then the asymptotic series.
pub fn hurwitz_zeta2(a: f64) -> f64 {
    assert!(a > 0.0, "ζ(2, a) needs a > 0");
    let mut x = a;
    let mut head = 0.0;
    while x < 10.0 {
        head += 1.0 / (x * x);
        x += 1.0;
    }
    // 1/x + 1/2x² + Σ B_{2k}/x^{2k+1}
    let x2 = x * x;
    let bernoulli = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];
    let mut tail = 1.0 / x + 0.5 / x2;
    let mut pow = x2 * x;
    for b in bernoulli {
        tail += b / pow;
        pow *= x2;
    }
    head + tail
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakVariances {
    /// `e^{−2ξ}`.
    pub q: f64,
    /// `2(J²ζ(2,J) − 1)/(g²J²)`.
    pub p_exact: f64,
    /// `2/(g²J)`.
    pub p_approx: f64,
    /// `g²J/2`.
    pub q_envelope: f64,
    /// `e^{2ξ}`.
    pub p_envelope: f64,
}

pub fn peak_variances(params: &SpinLightParams) -> PeakVariances {
    let (j, g2) = (params.j(), params.g().powi(2));
    PeakVariances {
        q: (-2.0 * params.xi()).exp(),
        p_exact: 2.0 * (j * j * hurwitz_zeta2(j) - 1.0) / (g2 * j * j),
        p_approx: 2.0 / (g2 * j),
        q_envelope: g2 * j / 2.0,
        p_envelope: (2.0 * params.xi()).exp(),
    }
}

/// `2·C(4J, 2J)/16^J`, the success probability once the peaks no longer
/// overlap.
pub fn success_prob_limit(j: f64) -> Result<f64> {
    let two_j = two_j_of(j)?;
    Ok(2.0 * (ln_binomial(2 * two_j, two_j) - 2.0 * two_j as f64 * 2f64.ln()).exp())
}

/// `√(2/πJ)`.
pub fn success_prob_asymptotic(j: f64) -> f64 {
    (2.0 / (PI * j)).sqrt()
}
