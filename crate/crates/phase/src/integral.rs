use std::f64::consts::PI;

use loqc_fock::{permanent_ryser, DMatrix, FockError, ModeUnitary, C64};
use rand_distr::{Distribution, Normal};

use crate::quadrature::gauss_hermite;
use crate::wigner::{wigner, PhaseSpacePoint};
use crate::{PhaseError, Result};

/// Largest photon number for tensor-product quadrature (`2n` real dimensions).
pub const QUADRATURE_MAX_PHOTONS: usize = 3;
/// Largest photon number for the Monte-Carlo estimator.
pub const MONTE_CARLO_MAX_PHOTONS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Tensor-product Gauss–Hermite rule; `None` picks `n + 2` points per
    /// real dimension, which integrates the polynomial part exactly.
    Quadrature { order: Option<usize> },
    /// Samples drawn from the Gaussian weight.
    MonteCarlo { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    /// Standard error (Monte Carlo) or the change from the next lower
    /// quadrature order; zero when the rule is exact.
    pub error: f64,
    pub evaluations: u64,
    /// False when the budget ran out before `error ≤ tolerance`.
    pub converged: bool,
}

/// `Π_j |Σ_k α_k U_{k,j}|² Π_j (|α_j|² − ½)` over the leading `n×n` block.
fn reduced_integrand(u: &DMatrix<C64>, alpha: &[C64]) -> f64 {
    let n = alpha.len();
    let mut prod = 1.0;
    for j in 0..n {
        let s: C64 = (0..n).map(|k| alpha[k] * u[(k, j)]).sum();
        prod *= s.norm_sqr() * (alpha[j].norm_sqr() - 0.5);
    }
    prod
}

/// Tensor-product rule over `dims` complex variables with weight
/// `e^{−2Σ|α|²}`; returns `Σ w f` in the scaled variables.
fn tensor_rule<F: FnMut(&[C64]) -> f64>(dims: usize, order: usize, mut f: F) -> f64 {
    let (x, w) = gauss_hermite(order);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut idx = vec![0usize; 2 * dims];
    let mut alpha = vec![C64::new(0.0, 0.0); dims];
    let mut total = 0.0;
    loop {
        let mut weight = 1.0;
        for d in 0..dims {
            let (i, j) = (idx[2 * d], idx[2 * d + 1]);
            alpha[d] = C64::new(x[i] * s, x[j] * s);
            weight *= w[i] * w[j];
        }
        total += weight * f(&alpha);
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < order {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    total
}

fn quadrature_value(u: &DMatrix<C64>, n: usize, order: usize) -> f64 {
    // (8/π)^n ∫ … d²α with d²α = dx dy / 2 per mode
    (4.0 / PI).powi(n as i32) * tensor_rule(n, order, |a| reduced_integrand(u, a))
}

/// Probability of one photon in each of the first `n` outputs, given one
/// photon in each of the first `n` inputs, from the reduced phase-space
/// integral `(8/π)^n ∫ e^{−2Σ|α_j|²} Π|Σ_k α_k U_{k,j}|² Π(|α_j|² − ½) d²α⃗`.
///
/// `max_evaluations` bounds the integrand calls. When it is too small the
/// estimate is returned with `converged = false` and its error bar.
pub fn integral_prob(u: &ModeUnitary, n: usize, method: Method, max_evaluations: u64, tolerance: f64) -> Result<IntegralEstimate> {
    let m = u.modes();
    if n > m {
        return Err(PhaseError::TooManyPhotons { photons: n, modes: m });
    }
    if max_evaluations == 0 {
        return Err(PhaseError::Input("evaluation budget must be positive".into()));
    }
    let e = u.entries();
    match method {
        Method::Quadrature { order } => {
            if n > QUADRATURE_MAX_PHOTONS {
                return Err(PhaseError::Input(format!("quadrature supports n ≤ {QUADRATURE_MAX_PHOTONS}, got {n}")));
            }
            let exact = n + 2;
            let wanted = order.unwrap_or(exact).max(1);
            let cost = |o: usize| (o as u64).saturating_pow(2 * n as u32);
            let mut used = wanted;
            while used > 1 && cost(used) > max_evaluations {
                used -= 1;
            }
            let value = quadrature_value(e, n, used);
            let mut evaluations = cost(used);
            let error = if used >= exact || n == 0 {
                0.0
            } else if used > 1 {
                evaluations += cost(used - 1);
                (value - quadrature_value(e, n, used - 1)).abs()
            } else {
                f64::INFINITY
            };
            Ok(IntegralEstimate { value, error, evaluations, converged: error <= tolerance })
        }
        Method::MonteCarlo { seed } => {
            if n > MONTE_CARLO_MAX_PHOTONS {
                return Err(PhaseError::Input(format!("Monte Carlo supports n ≤ {MONTE_CARLO_MAX_PHOTONS}, got {n}")));
            }
            // density (2/π) e^{−2|α|²}: each quadrature has variance 1/4
            let normal = Normal::new(0.0, 0.5).expect("valid spread");
            let mut rng = loqc_fock::rng::stream(seed, 0);
            let scale = 4f64.powi(n as i32);
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            let mut alpha = vec![C64::new(0.0, 0.0); n];
            for _ in 0..max_evaluations {
                for a in alpha.iter_mut() {
                    *a = C64::new(normal.sample(&mut rng), normal.sample(&mut rng));
                }
                let h = scale * reduced_integrand(e, &alpha);
                sum += h;
                sum_sq += h * h;
            }
            let k = max_evaluations as f64;
            let mean = sum / k;
            let var = if max_evaluations > 1 { (sum_sq - k * mean * mean).max(0.0) / (k - 1.0) } else { f64::INFINITY };
            let error = (var / k).sqrt();
            Ok(IntegralEstimate { value: mean, error, evaluations: max_evaluations, converged: error <= tolerance })
        }
    }
}

/// The unreduced form `∫ W(α⃗) Π_{j<n}(|α_j|² − ½) d²α⃗` over all `m` modes.
/// Exact for `order ≥ n + 2`; cost `order^{2m}`.
pub fn full_form_integral(u: &ModeUnitary, n: usize, order: usize) -> Result<f64> {
    let m = u.modes();
    if n > m {
        return Err(PhaseError::TooManyPhotons { photons: n, modes: m });
    }
    let cost = (order as u64).saturating_pow(2 * m as u32);
    if cost > 50_000_000 {
        return Err(PhaseError::Input(format!("{cost} quadrature nodes is too many")));
    }
    let mut failure = None;
    let sum = tensor_rule(m, order, |a| {
        let energy: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        let p = PhaseSpacePoint::new(a.to_vec()).expect("finite nodes");
        match wigner(u, n, &p) {
            Ok(w) => w * (2.0 * energy).exp() * a[..n].iter().map(|z| z.norm_sqr() - 0.5).product::<f64>(),
            Err(e) => {
                failure = Some(e);
                0.0
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(sum / 2f64.powi(m as i32))
}

/// Both sides of `Per[σ(⊕A_j)σ†] = Π_j Per(A_j)`: the permanent of the
/// permuted block-diagonal assembly and the product of block permanents.
pub fn block_diagonal_check(blocks: &[DMatrix<C64>], sigma: &[usize]) -> Result<(C64, C64)> {
    let mut size = 0;
    for b in blocks {
        if b.nrows() != b.ncols() {
            return Err(FockError::NotSquare { rows: b.nrows(), cols: b.ncols() }.into());
        }
        size += b.nrows();
    }
    let mut seen = vec![false; size];
    if sigma.len() != size || sigma.iter().any(|&s| s >= size || std::mem::replace(&mut seen[s], true)) {
        return Err(PhaseError::Input(format!("sigma is not a permutation of 0..{size}")));
    }
    let mut assembled = DMatrix::zeros(size, size);
    let mut off = 0;
    for b in blocks {
        let k = b.nrows();
        assembled.view_mut((off, off), (k, k)).copy_from(b);
        off += k;
    }
    let permuted = DMatrix::from_fn(size, size, |i, j| assembled[(sigma[i], sigma[j])]);
    let lhs = permanent_ryser(&permuted)?;
    let mut rhs = C64::new(1.0, 0.0);
    for b in blocks {
        rhs *= permanent_ryser(b)?;
    }
    Ok((lhs, rhs))
}
