use crate::{FusionError, Result};

/// Lowest and highest amplitude reflectivity the optimizer will consider.
pub const ETA_MIN: f64 = 1e-4;
pub const ETA_MAX: f64 = 1.0 - 1e-4;

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(FusionError::DegenerateBeamsplitter(eta));
    }
    Ok(())
}

/// Full detection distribution `[P_sub(0|m,n), …, P_sub(m+n|m,n)]`.
///
/// `m` photons enter the port that reaches the detector with probability
/// `η²`; the `n`-photon port reaches it with probability `1 − η²`. The state
/// is built one creation operator at a time in the output Fock basis, which
/// avoids the alternating binomial sum of the closed form (it loses all
/// precision beyond a few dozen photons).
pub fn fusion_distribution(m: usize, n: usize, eta: f64) -> Result<Vec<f64>> {
    check_eta(eta)?;
    let t = (1.0 - eta * eta).sqrt();
    // amp[k]: amplitude of k photons in the detected mode.
    let mut amp = vec![1.0f64];
    let add = |amp: &mut Vec<f64>, to_det: f64, to_out: f64, count: usize| {
        for p in 1..=count {
            let total = amp.len() - 1;
            let mut next = vec![0.0; total + 2];
            for (k, &a) in amp.iter().enumerate() {
                next[k + 1] += to_det * ((k + 1) as f64).sqrt() * a;
                next[k] += to_out * ((total - k + 1) as f64).sqrt() * a;
            }
            let norm = (p as f64).sqrt();
            next.iter_mut().for_each(|x| *x /= norm);
            *amp = next;
        }
    };
    add(&mut amp, eta, t, m);
    add(&mut amp, -t, eta, n);
    Ok(amp.into_iter().map(|a| a * a).collect())
}

/// `P_sub(s|m,n,η)`: probability of detecting `s` photons when fusing an
/// `m`- and an `n`-photon Fock state, leaving `m+n−s` photons.
pub fn fusion_prob(s: usize, m: usize, n: usize, eta: f64) -> Result<f64> {
    if s > m + n {
        return Err(FusionError::Outcome { s, total: m + n });
    }
    Ok(fusion_distribution(m, n, eta)?[s])
}

fn ln_factorial(k: usize) -> f64 {
    (1..=k).map(|v| (v as f64).ln()).sum()
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)).exp().round()
}

/// The printed closed form, kept for cross-checking small cases.
pub fn fusion_prob_closed_form(s: usize, m: usize, n: usize, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    if s > m + n {
        return Err(FusionError::Outcome { s, total: m + n });
    }
    let e2 = eta * eta;
    let ratio = e2 / (e2 - 1.0);
    let sum: f64 = (0..=s.min(m)).filter(|&j| s - j <= n).map(|j| binom(m, j) * binom(n, s - j) * ratio.powi(j as i32)).sum();
    let log_pref = 2.0 * (n as f64 - s as f64) * eta.ln() + (m + s) as f64 * (1.0 - e2).ln() + ln_factorial(s)
        + ln_factorial(m + n - s)
        - ln_factorial(m)
        - ln_factorial(n);
    Ok(log_pref.exp() * sum * sum)
}

/// Probability that fusion yields a state strictly larger than both inputs.
pub fn grow_prob(m: usize, n: usize, eta: f64) -> Result<f64> {
    let dist = fusion_distribution(m, n, eta)?;
    let lose = m + n - m.max(n);
    Ok(dist[..lose].iter().sum())
}

/// `Σ_{s ≤ ⌊n/2⌋} P_sub(s|n,n)` at a 50:50 splitter.
pub fn limited_recycling_prob(n: usize) -> f64 {
    let dist = fusion_distribution(n, n, std::f64::consts::FRAC_1_SQRT_2).expect("valid splitter");
    dist[..=n / 2].iter().sum()
}

/// What the reflectivity is tuned for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EtaObjective {
    /// Maximize `P_grow`.
    Recycled,
    /// Maximize `P_sub(0|m,n)`.
    S0Only,
    /// Reach at least `d` photons when possible, otherwise favour larger growth.
    FrugalTarget { d: usize },
}

/// Objective value of a detection distribution.
pub fn objective(dist: &[f64], m: usize, n: usize, goal: EtaObjective) -> f64 {
    let total = m + n;
    let top = m.max(n);
    match goal {
        EtaObjective::Recycled => dist[..total - top].iter().sum(),
        EtaObjective::S0Only => dist[0],
        EtaObjective::FrugalTarget { d } if total >= d => dist[..=total - d].iter().sum(),
        EtaObjective::FrugalTarget { .. } => {
            (0..total - top).map(|s| (total - s - top) as f64 * dist[s]).sum()
        }
    }
}

/// Best reflectivity for fusing `m` with `n`: a 200-point grid followed by
/// golden-section refinement around the best grid point.
pub fn optimize_eta(m: usize, n: usize, goal: EtaObjective) -> (f64, f64) {
    let f = |eta: f64| objective(&fusion_distribution(m, n, eta).expect("eta in range"), m, n, goal);
    const GRID: usize = 200;
    let step = (ETA_MAX - ETA_MIN) / (GRID - 1) as f64;
    let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
    for i in 0..GRID {
        let v = f(ETA_MIN + i as f64 * step);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let mut lo = (ETA_MIN + (best_i as f64 - 1.0) * step).max(ETA_MIN);
    let mut hi = (ETA_MIN + (best_i as f64 + 1.0) * step).min(ETA_MAX);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-9 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    let eta = 0.5 * (lo + hi);
    let v = f(eta);
    if v >= best {
        (eta, v)
    } else {
        (ETA_MIN + best_i as f64 * step, best)
    }
}
