use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use crate::prob::{fusion_distribution, optimize_eta, EtaObjective};
use crate::{FusionError, Result};

/// Memory inventory: finite counts per photon number plus one size that is
/// available on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketState {
    pub counts: BTreeMap<usize, u64>,
    pub unlimited_at: usize,
}

impl BucketState {
    pub fn new(unlimited_at: usize) -> Self {
        BucketState { counts: BTreeMap::new(), unlimited_at }
    }

    pub fn available(&self, size: usize) -> u64 {
        if size == self.unlimited_at {
            u64::MAX
        } else {
            self.counts.get(&size).copied().unwrap_or(0)
        }
    }

    fn take(&mut self, size: usize) {
        if size == self.unlimited_at {
            return;
        }
        let c = self.counts.get_mut(&size).expect("strategy picked an empty bucket");
        *c -= 1;
        if *c == 0 {
            self.counts.remove(&size);
        }
    }

    fn put(&mut self, size: usize) {
        if size != self.unlimited_at && size > 0 {
            *self.counts.entry(size).or_insert(0) += 1;
        }
    }

    /// Sizes with at least one state, including the unlimited one.
    fn sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.counts.keys().copied().collect();
        if let Err(pos) = v.binary_search(&self.unlimited_at) {
            v.insert(pos, self.unlimited_at);
        }
        v
    }

    pub fn stored_photons(&self) -> u64 {
        self.counts.iter().map(|(k, c)| *k as u64 * c).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    Balanced,
    Modesty,
    Random,
    Frugal,
}

impl std::str::FromStr for StrategyKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "balanced" => Ok(StrategyKind::Balanced),
            "modesty" => Ok(StrategyKind::Modesty),
            "random" => Ok(StrategyKind::Random),
            "frugal" => Ok(StrategyKind::Frugal),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FusionStrategy {
    pub kind: StrategyKind,
    /// Target photon number.
    pub d: usize,
    /// Frugal slack, `d' ≥ d`.
    pub d_prime: usize,
    /// Keep every fusion outcome (`true`) or only the lossless one.
    pub recycle: bool,
    /// Photon number available on demand.
    pub unlimited_at: usize,
}

impl FusionStrategy {
    pub fn new(kind: StrategyKind, d: usize) -> Self {
        FusionStrategy { kind, d, d_prime: d, recycle: true, unlimited_at: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 1 || self.d_prime < self.d {
            return Err(FusionError::Strategy(format!("need 1 ≤ d ≤ d', got d={} d'={}", self.d, self.d_prime)));
        }
        if self.unlimited_at < 1 {
            return Err(FusionError::Strategy("on-demand size must be at least 1".into()));
        }
        Ok(())
    }

    fn objective(&self) -> EtaObjective {
        match (self.kind, self.recycle) {
            (_, false) => EtaObjective::S0Only,
            (StrategyKind::Frugal, true) => EtaObjective::FrugalTarget { d: self.d },
            _ => EtaObjective::Recycled,
        }
    }
}

/// One fusion attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub step: u64,
    pub m: usize,
    pub n: usize,
    pub s: usize,
    /// Photons left in memory after the update.
    pub stored_photons: u64,
    pub harvested: bool,
    /// Vacuum output dropped.
    pub discarded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateEstimate {
    /// States with at least `d` photons per counted fusion operation.
    pub rate: f64,
    pub lo: f64,
    pub hi: f64,
    pub harvested: u64,
    pub counted_steps: u64,
    /// On-demand states consumed per harvested state over the whole run.
    pub on_demand_per_state: f64,
    pub trace: Vec<TraceRecord>,
}

/// Wilson score interval at `z` standard deviations.
pub fn wilson(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Cached optimal splitter and cumulative outcome distribution per input pair.
#[derive(Default)]
struct PairTable {
    goal: Option<EtaObjective>,
    cdf: HashMap<(usize, usize), Vec<f64>>,
}

impl PairTable {
    fn sample<R: Rng + ?Sized>(&mut self, m: usize, n: usize, rng: &mut R) -> usize {
        let goal = self.goal.expect("objective set");
        let key = (m.max(n), m.min(n));
        let cdf = self.cdf.entry(key).or_insert_with(|| {
            let (eta, _) = optimize_eta(key.0, key.1, goal);
            let dist = fusion_distribution(key.0, key.1, eta).expect("optimized eta in range");
            let mut acc = 0.0;
            dist.iter()
                .map(|p| {
                    acc += p;
                    acc
                })
                .collect()
        });
        let u: f64 = rng.random::<f64>() * cdf[cdf.len() - 1];
        cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1)
    }
}

fn choose_pair<R: Rng + ?Sized>(st: &FusionStrategy, b: &BucketState, rng: &mut R) -> (usize, usize) {
    let x = b.unlimited_at;
    let largest_pair = |limit: usize| -> Option<usize> {
        b.sizes().into_iter().rev().find(|&k| k <= limit && b.available(k) >= 2)
    };
    match st.kind {
        StrategyKind::Balanced => {
            let k = largest_pair(usize::MAX).unwrap_or(x);
            (k, k)
        }
        StrategyKind::Modesty => {
            let top = b.sizes().into_iter().next_back().unwrap_or(x);
            (top, x)
        }
        StrategyKind::Random => {
            let sizes = b.sizes();
            let mut pairs = Vec::new();
            for (i, &a) in sizes.iter().enumerate() {
                for &c in &sizes[i..] {
                    if a != c || b.available(a) >= 2 {
                        pairs.push((c, a));
                    }
                }
            }
            pairs[rng.random_range(0..pairs.len())]
        }
        StrategyKind::Frugal => {
            let half = st.d_prime / 2;
            // Complete the largest oversized state with the smallest partner
            // that lands in [d, d'].
            for &big in b.sizes().iter().rev().filter(|&&k| k > half) {
                let lo = st.d.saturating_sub(big);
                let hi = st.d_prime - big;
                let partner = b.sizes().into_iter().find(|&k| {
                    k >= lo && k <= hi && (k != big || b.available(k) >= 2)
                });
                if let Some(p) = partner {
                    return (big, p);
                }
            }
            let k = largest_pair(half.max(x)).unwrap_or(x);
            (k, k)
        }
    }
}

/// Runs the bucket Markov chain for `steps` fusion operations and estimates
/// `r(d) = c_{≥d}(t)/t` after discarding the first 10% as burn-in.
///
/// Any state with at least `d` photons is harvested: counted and removed.
/// `keep_trace` retains one record per step.
pub fn run_strategy<R: Rng + ?Sized>(
    st: &FusionStrategy,
    steps: u64,
    rng: &mut R,
    keep_trace: bool,
) -> Result<RateEstimate> {
    st.validate()?;
    if steps == 0 {
        return Err(FusionError::Strategy("need at least one step".into()));
    }
    let burn_in = steps / 10;
    let mut buckets = BucketState::new(st.unlimited_at);
    let mut table = PairTable { goal: Some(st.objective()), ..Default::default() };
    let mut harvested_counted = 0u64;
    let mut harvested_total = 0u64;
    let mut on_demand = 0u64;
    let mut trace = Vec::new();

    for step in 0..steps {
        let (m, n) = choose_pair(st, &buckets, rng);
        on_demand += u64::from(m == st.unlimited_at) + u64::from(n == st.unlimited_at);
        buckets.take(m);
        buckets.take(n);
        let s = table.sample(m, n, rng);
        let out = m + n - s;
        let keep = st.recycle || s == 0;
        let mut harvested = false;
        let discarded = keep && out == 0;
        if keep && out >= st.d {
            harvested = true;
            harvested_total += 1;
            if step >= burn_in {
                harvested_counted += 1;
            }
        } else if keep {
            buckets.put(out);
        }
        if keep_trace {
            trace.push(TraceRecord { step, m, n, s, stored_photons: buckets.stored_photons(), harvested, discarded });
        }
    }
    let counted = steps - burn_in;
    let (lo, hi) = wilson(harvested_counted, counted, 1.96);
    Ok(RateEstimate {
        rate: harvested_counted as f64 / counted as f64,
        lo,
        hi,
        harvested: harvested_counted,
        counted_steps: counted,
        on_demand_per_state: if harvested_total > 0 { on_demand as f64 / harvested_total as f64 } else { f64::INFINITY },
        trace,
    })
}

/// Pools `chains` independent runs, chain `i` drawing from stream `i` of
/// `seed`. Results are combined in chain order so the output does not
/// depend on scheduling.
pub fn run_ensemble(st: &FusionStrategy, steps: u64, chains: u64, seed: u64) -> Result<RateEstimate> {
    use rayon::prelude::*;
    let runs: Vec<RateEstimate> = (0..chains)
        .into_par_iter()
        .map(|i| run_strategy(st, steps, &mut loqc_fock::rng::stream(seed, i), false))
        .collect::<Result<_>>()?;
    let harvested: u64 = runs.iter().map(|r| r.harvested).sum();
    let counted: u64 = runs.iter().map(|r| r.counted_steps).sum();
    let finite: Vec<f64> = runs.iter().map(|r| r.on_demand_per_state).filter(|v| v.is_finite()).collect();
    let (lo, hi) = wilson(harvested, counted, 1.96);
    Ok(RateEstimate {
        rate: harvested as f64 / counted.max(1) as f64,
        lo,
        hi,
        harvested,
        counted_steps: counted,
        on_demand_per_state: if finite.is_empty() { f64::INFINITY } else { finite.iter().sum::<f64>() / finite.len() as f64 },
        trace: Vec::new(),
    })
}
