//! Phase estimation with `n` single photons through `U = V·Φ(φ)·V†`, where
//! `V` is the `n`-mode discrete Fourier transform and `Φ` applies the phase
//! gradient `diag(1, e^{iφ}, …, e^{i(n−1)φ})`. The signal is the probability
//! of one photon in every output mode, `P = |Per U|²`.

use loqc_fock::{permanent_ryser, DMatrix, FockError, MatrixKind, ModeUnitary, C64};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuftiError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Fock(#[from] FockError),
}

pub type Result<T> = std::result::Result<T, QuftiError>;

/// Below this the closed-form denominator is treated as singular.
const SINGULAR_TOL: f64 = 1e-8;

/// Default largest `n` for which the signal comes from an explicit permanent.
pub const RYSER_CROSSOVER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuftiParams {
    pub n: usize,
    pub phi: f64,
    /// Variance `Δχ²` of the per-mode random phase (radians²).
    pub dephasing_var: f64,
}

impl QuftiParams {
    pub fn new(n: usize, phi: f64, dephasing_var: f64) -> Result<Self> {
        if n < 1 {
            return Err(QuftiError::Parameter("need at least one photon".into()));
        }
        if !(dephasing_var >= 0.0) {
            return Err(QuftiError::Parameter(format!("dephasing variance must be non-negative, got {dephasing_var}")));
        }
        Ok(QuftiParams { n, phi, dephasing_var })
    }
}

fn explicit_unitary(n: usize, phi: f64) -> DMatrix<C64> {
    let v = DMatrix::from_fn(n, n, |j, l| C64::from_polar(1.0 / (n as f64).sqrt(), -2.0 * PI * ((j + 1) * (l + 1)) as f64 / n as f64));
    let phase = DMatrix::from_fn(n, n, |j, l| if j == l { C64::from_polar(1.0, j as f64 * phi) } else { C64::new(0.0, 0.0) });
    &v * phase * v.adjoint()
}

/// `U_{jk} = (1 − e^{inφ}) / (n (e^{2πi(j−k)/n} − e^{iφ}))`, falling back to
/// the explicit product `V·Φ·V†` near the removable singularities.
pub fn qufti_unitary(n: usize, phi: f64) -> Result<ModeUnitary> {
    if n < 1 {
        return Err(QuftiError::Parameter("need at least one mode".into()));
    }
    let nf = n as f64;
    let num = C64::new(1.0, 0.0) - C64::from_polar(1.0, nf * phi);
    let eiphi = C64::from_polar(1.0, phi);
    let den = |j: usize, k: usize| C64::from_polar(1.0, 2.0 * PI * (j as f64 - k as f64) / nf) - eiphi;
    let singular = (0..n).any(|d| den(d, 0).norm() < SINGULAR_TOL);
    let u = if singular {
        explicit_unitary(n, phi)
    } else {
        DMatrix::from_fn(n, n, |j, k| num / (nf * den(j, k)))
    };
    Ok(ModeUnitary::new(u, MatrixKind::Unitary)?)
}

/// `n^{−(n−1)} Π_{j=1}^{n−1} (j e^{inφ} + n − j)`.
pub fn conjectured_permanent(n: usize, phi: f64) -> C64 {
    let nf = n as f64;
    let e = C64::from_polar(1.0, nf * phi);
    (1..n).map(|j| (e * j as f64 + (nf - j as f64)) / nf).product()
}

fn a_n(n: usize, j: usize) -> f64 {
    2.0 * (j * (n - j)) as f64
}

fn b_n(n: usize, j: usize) -> f64 {
    let (n, j) = (n as f64, j as f64);
    n * n - 2.0 * j * n + 2.0 * j * j
}

/// `e^{−n²Δχ²/2}`: contraction of `cos(nφ)` under per-mode dephasing.
pub fn dephasing_factor(n: usize, dephasing_var: f64) -> f64 {
    (-0.5 * (n * n) as f64 * dephasing_var).exp()
}

/// Phase uncertainty from error propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaPhi {
    Finite(f64),
    /// The signal is stationary (`∂P/∂φ = 0`), e.g. at `φ = 0`.
    Stationary,
}

impl DeltaPhi {
    pub fn value(&self) -> f64 {
        match self {
            DeltaPhi::Finite(v) => *v,
            DeltaPhi::Stationary => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Signal {
    pub p: f64,
    /// `|∂P/∂φ|`.
    pub slope: f64,
    pub delta_phi: DeltaPhi,
}

/// Coincidence signal from the product formula (with dephasing if set).
pub fn signal_closed_form(params: &QuftiParams) -> f64 {
    let n = params.n;
    let c = (n as f64 * params.phi).cos() * dephasing_factor(n, params.dephasing_var);
    let nn = (n * n) as f64;
    (1..n).map(|j| (a_n(n, j) * c + b_n(n, j)) / nn).product()
}

/// `P`, `|∂P/∂φ|` and `Δφ = √(P − P²)/|∂P/∂φ|`.
///
/// Without dephasing and for `n ≤ crossover`, `P` is the explicit permanent;
/// otherwise the product formula. The slope always uses the logarithmic
/// derivative of the product formula.
pub fn signal_and_sensitivity_with(params: &QuftiParams, crossover: usize) -> Result<Signal> {
    let n = params.n;
    let p = if params.dephasing_var == 0.0 && n <= crossover {
        permanent_ryser(qufti_unitary(n, params.phi)?.entries())?.norm_sqr()
    } else {
        signal_closed_form(params)
    };
    let nf = n as f64;
    let damp = dephasing_factor(n, params.dephasing_var);
    let c = (nf * params.phi).cos();
    let sum: f64 = (1..n).map(|j| (a_n(n, j) * damp / (a_n(n, j) * damp * c + b_n(n, j))).abs()).sum();
    let slope = nf * p * (nf * params.phi).sin().abs() * sum;
    let delta_phi = if slope > 0.0 { DeltaPhi::Finite((p * (1.0 - p)).max(0.0).sqrt() / slope) } else { DeltaPhi::Stationary };
    Ok(Signal { p, slope, delta_phi })
}

pub fn signal_and_sensitivity(params: &QuftiParams) -> Result<Signal> {
    signal_and_sensitivity_with(params, RYSER_CROSSOVER)
}

/// Small-angle sensitivity `√(3 / (2n(n+1)(n−1)))`.
pub fn small_angle_sensitivity(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(QuftiError::Parameter("sensitivity needs n ≥ 2".into()));
    }
    let n = n as f64;
    Ok((3.0 / (2.0 * n * (n + 1.0) * (n - 1.0))).sqrt())
}

/// Ordinal resource count and its shot-noise and Heisenberg limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Baselines {
    pub resources: f64,
    pub snl: f64,
    pub hl: f64,
}

pub fn orc_baselines(n: usize) -> Result<Baselines> {
    if n < 2 {
        return Err(QuftiError::Parameter("baselines need n ≥ 2".into()));
    }
    let resources = 1.0 + (n * (n - 1)) as f64 / 2.0;
    Ok(Baselines { resources, snl: resources.sqrt().recip(), hl: resources.recip() })
}
