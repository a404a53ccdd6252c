//! Photon-number statistics of heralded down-conversion sources read out by
//! inefficient number-resolving detectors, and the success rates of
//! multiplexed and bunching-based state preparation.

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SourceError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("no detector efficiency in [0, 1] meets the target: required η = {0}")]
    Infeasible(f64),
}

pub type Result<T> = std::result::Result<T, SourceError>;

/// Infinite series stop once the remaining mass is below this fraction of
/// the partial sum (far inside the 1e-12 absolute target).
pub const TAIL_TOL: f64 = f64::EPSILON;

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(SourceError::Parameter(format!("{name} = {v} is outside [0, 1]")));
    }
    Ok(())
}

fn check_squeezing(r: f64) -> Result<()> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(SourceError::Parameter(format!("squeezing must be finite and non-negative, got {r}")));
    }
    Ok(())
}

fn ln_choose(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// `tanh^{2s} r / cosh² r`: pair-number distribution of a two-mode squeezer.
pub fn spdc_pn(s: u64, r: f64) -> f64 {
    let x = r.tanh().powi(2);
    x.powf(s as f64) / r.cosh().powi(2)
}

/// Binomial thinning: `t` clicks from `s` photons at efficiency `eta`.
pub fn detector_cond(t: u64, s: u64, eta: f64) -> f64 {
    if t > s {
        return 0.0;
    }
    let k = s - t;
    let pow = |b: f64, e: u64| if e == 0 { 1.0 } else { b.powf(e as f64) };
    if eta == 0.0 || eta == 1.0 {
        return pow(eta, t) * pow(1.0 - eta, k);
    }
    (ln_choose(s, t) + t as f64 * eta.ln() + k as f64 * (1.0 - eta).ln()).exp()
}

/// Probability that the heralding detector registers `t` photons,
/// `Σ_{s≥t} P_D(t|s) P(s)`, summed until the geometric tail bound drops
/// below [`TAIL_TOL`] relative to the partial sum.
pub fn herald_detect(t: u64, r: f64, eta: f64) -> Result<f64> {
    check_squeezing(r)?;
    check_unit("eta", eta)?;
    let x = r.tanh().powi(2);
    let mut total = 0.0;
    let mut s = t;
    loop {
        let term = detector_cond(t, s, eta) * spdc_pn(s, r);
        total += term;
        // Successive terms shrink by (s+1)/(s+1−t)·(1−η)x, so once that ratio
        // is below one the tail is bounded by a geometric series.
        let ratio = (s + 1) as f64 / (s + 1 - t) as f64 * (1.0 - eta) * x;
        if ratio < 1.0 && term * ratio / (1.0 - ratio) <= TAIL_TOL * total {
            break;
        }
        if term == 0.0 && s > t {
            break;
        }
        s += 1;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpdcParams {
    pub r: f64,
    pub eta: f64,
    /// Sources run in parallel.
    pub sources: u64,
    /// Heralded single photons needed.
    pub needed: u64,
}

impl SpdcParams {
    pub fn new(r: f64, eta: f64, sources: u64, needed: u64) -> Result<Self> {
        check_squeezing(r)?;
        check_unit("eta", eta)?;
        if needed > sources {
            return Err(SourceError::Parameter(format!("need {needed} photons from only {sources} sources")));
        }
        Ok(SpdcParams { r, eta, sources, needed })
    }
}

/// `P(X ≥ k)` for `X ~ Binomial(n, p)`.
fn binomial_tail(n: u64, k: u64, p: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let mut ln_c = ln_choose(n, k);
    let mut total = 0.0;
    for i in k..=n {
        total += (ln_c + i as f64 * lp + (n - i) as f64 * lq).exp();
        if i < n {
            ln_c += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
        }
    }
    total.min(1.0)
}

/// Probability that at least `needed` of the parallel sources herald exactly
/// one photon.
pub fn multiplex_prep_prob(p: &SpdcParams) -> Result<f64> {
    Ok(binomial_tail(p.sources, p.needed, herald_detect(1, p.r, p.eta)?))
}

/// Smallest source count whose preparation probability reaches `target`.
pub fn sources_for_target(r: f64, eta: f64, needed: u64, target: f64, max_sources: u64) -> Result<Option<u64>> {
    check_unit("target", target)?;
    let p1 = herald_detect(1, r, eta)?;
    Ok((needed..=max_sources).find(|&n| binomial_tail(n, needed, p1) >= target))
}

/// `P_corr(s|t)` from Bayes' rule.
pub fn p_corr(s: u64, t: u64, r: f64, eta: f64) -> Result<f64> {
    let evidence = herald_detect(t, r, eta)?;
    if evidence == 0.0 {
        return Err(SourceError::Parameter(format!("outcome t = {t} has zero probability")));
    }
    Ok(detector_cond(t, s, eta) * spdc_pn(s, r) / evidence)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeraldFidelity {
    /// `[1 − (1−η) tanh² r]²`.
    pub p_corr: f64,
    /// `P_corr^n`.
    pub p_par: f64,
    /// Large-`n` limit `ε^{2 tanh² r}` at fixed `ε = ηⁿ`.
    pub asymptote: f64,
}

pub fn herald_fidelity(r: f64, eta: f64, n: u64) -> Result<HeraldFidelity> {
    check_squeezing(r)?;
    check_unit("eta", eta)?;
    let x = r.tanh().powi(2);
    let p_corr = (1.0 - (1.0 - eta) * x).powi(2);
    let eps = post_prob(eta, n)?;
    Ok(HeraldFidelity { p_corr, p_par: p_corr.powf(n as f64), asymptote: eps.powf(2.0 * x) })
}

/// `ηⁿ`: all `n` photons reach the detectors.
pub fn post_prob(eta: f64, n: u64) -> Result<f64> {
    check_unit("eta", eta)?;
    Ok(eta.powf(n as f64))
}

/// Detector efficiency that keeps the post-selection probability at `eps`.
pub fn eta_for_post_selection(eps: f64, n: u64) -> Result<f64> {
    check_unit("epsilon", eps)?;
    if n == 0 {
        return Err(SourceError::Parameter("need n ≥ 1".into()));
    }
    Ok(eps.powf(1.0 / n as f64))
}

/// Detector efficiency at which `n` parallel heralds are all correct with
/// probability `eps_prime`: `1 + (ε′^{1/2n} − 1) coth² r`.
pub fn eta_for_herald_fidelity(eps_prime: f64, r: f64, n: u64) -> Result<f64> {
    check_unit("epsilon'", eps_prime)?;
    check_squeezing(r)?;
    if n == 0 || r == 0.0 {
        return Err(SourceError::Parameter("need n ≥ 1 and r > 0".into()));
    }
    let coth2 = r.tanh().powi(-2);
    let eta = 1.0 + (eps_prime.powf(1.0 / (2 * n) as f64) - 1.0) * coth2;
    if eta < 0.0 {
        return Err(SourceError::Infeasible(eta));
    }
    Ok(eta)
}

/// Post-selection probability at the efficiency fixed by `eps_prime`.
pub fn post_prob_for_herald_fidelity(eps_prime: f64, r: f64, n: u64) -> Result<f64> {
    post_prob(eta_for_herald_fidelity(eps_prime, r, n)?, n)
}

fn factorial_over_power(n: u64, extra: u64) -> f64 {
    // n!/n^{n+extra} as a running product to avoid overflow.
    let nf = n as f64;
    (1..=n).map(|k| k as f64 / nf).product::<f64>() / nf.powf(extra as f64)
}

/// `n!/nⁿ`: all `n` photons leave a balanced interferometer in one mode.
pub fn single_shot_bunch(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(SourceError::Parameter("need n ≥ 1".into()));
    }
    Ok(factorial_over_power(n, 0))
}

/// Bunching success per beamsplitter, `d!/d^{d+1}`, for a `d`-splitter array.
pub fn single_shot_rate(d: u64) -> Result<f64> {
    if d == 0 {
        return Err(SourceError::Parameter("need d ≥ 1".into()));
    }
    Ok(factorial_over_power(d, 1))
}

/// `(n̄/(n̄+1))^d`: at least `d` pairs from a thermal source of mean `n̄`.
pub fn spdc_atleast(d: u64, nbar: f64) -> Result<f64> {
    if !(nbar >= 0.0) {
        return Err(SourceError::Parameter(format!("mean photon number must be non-negative, got {nbar}")));
    }
    Ok((nbar / (nbar + 1.0)).powf(d as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spdc_vacuum_and_normalization() {
        let r = 0.8;
        assert!((spdc_pn(0, r) - 1.0 / r.cosh().powi(2)).abs() < 1e-15);
        let total: f64 = (0..400).map(|s| spdc_pn(s, r)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detector_endpoints() {
        assert_eq!(detector_cond(3, 3, 1.0), 1.0);
        assert_eq!(detector_cond(2, 3, 1.0), 0.0);
        assert_eq!(detector_cond(0, 3, 0.0), 1.0);
        assert_eq!(detector_cond(4, 3, 0.5), 0.0);
    }

    #[test]
    fn bunching_values() {
        assert_eq!(single_shot_bunch(2).unwrap(), 0.5);
        assert!((single_shot_bunch(3).unwrap() - 2.0 / 9.0).abs() < 1e-16);
        assert_eq!(spdc_atleast(1, 1.0).unwrap(), 0.5);
    }

    #[test]
    fn infeasible_efficiency() {
        assert!(matches!(eta_for_herald_fidelity(0.1, 0.05, 1), Err(SourceError::Infeasible(_))));
    }
}
