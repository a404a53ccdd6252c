use rayon::prelude::*;

use crate::dephase::dephase;
use crate::lattice::{CoinField, WalkState};
use crate::{Result, WalkError};

/// Spread and escape probability of one walker distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// Variance of the marginal x distribution.
    pub variance: f64,
    /// `Σ_{|x| > t_b} Σ_y P(x, y)`.
    pub escape: f64,
}

/// `(mean x, mean x², escape)` of the marginal.
fn moments(state: &WalkState, t_b: usize) -> (f64, f64, f64) {
    let e = state.extent() as i64;
    let (mut m1, mut m2, mut esc) = (0.0, 0.0, 0.0);
    for (i, p) in state.marginal_x().into_iter().enumerate() {
        let x = i as i64 - e;
        m1 += p * x as f64;
        m2 += p * (x * x) as f64;
        if x.unsigned_abs() as usize > t_b {
            esc += p;
        }
    }
    (m1, m2, esc)
}

pub fn metrics(state: &WalkState, t_b: usize) -> Result<Metrics> {
    if t_b > state.extent() {
        return Err(WalkError::Parameter(format!("boundary {t_b} beyond half-extent {}", state.extent())));
    }
    let (m1, m2, escape) = moments(state, t_b);
    Ok(Metrics { variance: m2 - m1 * m1, escape })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConfig {
    /// Steps taken; also the lattice half-extent.
    pub t_max: usize,
    /// Probability a site is live.
    pub p: f64,
    /// Sign-flip probability per basis state per step.
    pub p_d: f64,
    /// Escape boundary.
    pub t_b: usize,
    pub trials: usize,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig { t_max: 20, p: 1.0, p_d: 0.0, t_b: 10, trials: 100 }
    }
}

/// Ensemble metrics at one time step, with standard errors over trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsemblePoint {
    pub t: usize,
    pub variance: f64,
    pub variance_err: f64,
    pub escape: f64,
    pub escape_err: f64,
}

fn trial(config: &WalkConfig, seed: u64, index: u64) -> Result<Vec<(f64, f64, f64)>> {
    let mut rng = loqc_fock::rng::stream(seed, index);
    let field = if config.p < 1.0 { CoinField::random(config.t_max, config.p, &mut rng)? } else { CoinField::clear(config.t_max) };
    let mut state = WalkState::origin(config.t_max);
    let mut series = Vec::with_capacity(config.t_max + 1);
    series.push(moments(&state, config.t_b));
    for _ in 0..config.t_max {
        state.advance(&field)?;
        dephase(&mut state, config.p_d, &mut rng)?;
        series.push(moments(&state, config.t_b));
    }
    Ok(series)
}

/// Metrics of the trial-averaged distribution at every `t = 0..=t_max`.
///
/// Each trial draws its own congestion field and dephasing pattern from
/// stream `index` of `seed`. The variance is that of the averaged
/// distribution (the ensemble state), not the mean of per-trial variances;
/// its error bar is propagated from the per-trial first and second moments.
/// Errors are zero for a single trial.
pub fn ensemble_run(config: &WalkConfig, seed: u64) -> Result<Vec<EnsemblePoint>> {
    if config.trials == 0 {
        return Err(WalkError::Parameter("need at least one trial".into()));
    }
    if config.t_b > config.t_max {
        return Err(WalkError::Parameter(format!("boundary {} beyond t_max {}", config.t_b, config.t_max)));
    }
    if !(0.0..=1.0).contains(&config.p) || !(0.0..=1.0).contains(&config.p_d) {
        return Err(WalkError::Parameter("probabilities must lie in [0, 1]".into()));
    }
    let runs: Vec<Vec<(f64, f64, f64)>> =
        (0..config.trials as u64).into_par_iter().map(|i| trial(config, seed, i)).collect::<Result<_>>()?;
    let n = config.trials as f64;
    let out = (0..=config.t_max)
        .map(|t| {
            let mean = |f: &dyn Fn(&(f64, f64, f64)) -> f64| runs.iter().map(|r| f(&r[t])).sum::<f64>() / n;
            let (m1, m2, esc) = (mean(&|r| r.0), mean(&|r| r.1), mean(&|r| r.2));
            let (variance_err, escape_err) = if config.trials > 1 {
                // delta method on σ² = ⟨x²⟩ − ⟨x⟩²
                let g = |r: &(f64, f64, f64)| (r.1 - m2) - 2.0 * m1 * (r.0 - m1);
                let var_v = runs.iter().map(|r| g(&r[t]).powi(2)).sum::<f64>() / (n - 1.0);
                let var_e = runs.iter().map(|r| (r[t].2 - esc).powi(2)).sum::<f64>() / (n - 1.0);
                ((var_v / n).sqrt(), (var_e / n).sqrt())
            } else {
                (0.0, 0.0)
            };
            EnsemblePoint { t, variance: m2 - m1 * m1, variance_err, escape: esc, escape_err }
        })
        .collect();
    Ok(out)
}
