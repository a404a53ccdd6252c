use std::collections::BTreeMap;

use loqc_fock::{permanent_ryser, DMatrix, FockConfiguration, C64};
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::switch::SwitchSequence;
use crate::{LoopError, Result};

/// Largest `|δ|/ω` or `σ/ω` accepted; beyond it the neglected overlap
/// between neighbouring bins is no longer negligible.
pub const MISMATCH_GUARD: f64 = 10.0;

/// Gaussian wave packet in time bin `bin`, displaced by `shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemporalPhoton {
    pub bin: usize,
    pub shift: f64,
    pub width: f64,
}

impl TemporalPhoton {
    /// `⟨0|A(t,Δ′)A†(t′,Δ)|0⟩`; distinct bins do not overlap.
    pub fn overlap(&self, other: &TemporalPhoton) -> f64 {
        if self.bin != other.bin {
            return 0.0;
        }
        let d = self.shift - other.shift;
        (-d * d / (4.0 * self.width * other.width)).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Region {
    Source,
    Loop,
    Out,
}

/// A creation operator: region, bin, originating input mode, loop traversals.
/// The displacement is `ε[src] + traversals·δ`, kept symbolic until the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Op {
    region: Region,
    bin: usize,
    src: usize,
    traversals: u32,
}

/// Sum of normally ordered products of creation operators.
type State = BTreeMap<Vec<Op>, C64>;

fn propagate(seq: &SwitchSequence, input: &FockConfiguration) -> State {
    let m = seq.modes();
    let mut ops = Vec::new();
    let mut norm = 1.0;
    for (i, &k) in input.occupations().iter().enumerate() {
        for _ in 0..k {
            ops.push(Op { region: Region::Source, bin: i + 1, src: i + 1, traversals: 0 });
        }
        norm *= (1..=k).map(|v| v as f64).product::<f64>();
    }
    ops.sort();
    let mut state = State::new();
    state.insert(ops, C64::new(1.0 / norm.sqrt(), 0.0));

    for t in 1..=m + 1 {
        let mut next = State::new();
        for (ops, coef) in state {
            let mut partial: Vec<(Vec<Op>, C64)> = vec![(Vec::with_capacity(ops.len()), coef)];
            for op in ops {
                let (to_out, to_loop) = match op.region {
                    Region::Source if op.bin == t => (seq.u(1, 1, t), seq.u(1, 2, t)),
                    Region::Loop if op.bin == t => (seq.u(2, 1, t), seq.u(2, 2, t)),
                    _ => {
                        partial.iter_mut().for_each(|(v, _)| v.push(op));
                        continue;
                    }
                };
                let mut grown = Vec::with_capacity(partial.len() * 2);
                for (v, c) in partial {
                    if to_out != C64::new(0.0, 0.0) {
                        let mut w = v.clone();
                        w.push(Op { region: Region::Out, bin: t - 1, ..op });
                        grown.push((w, c * to_out));
                    }
                    if to_loop != C64::new(0.0, 0.0) {
                        let mut w = v;
                        w.push(Op { region: Region::Loop, bin: t + 1, traversals: op.traversals + 1, ..op });
                        grown.push((w, c * to_loop));
                    }
                }
                partial = grown;
            }
            for (mut v, c) in partial {
                v.sort();
                *next.entry(v).or_insert(C64::new(0.0, 0.0)) += c;
            }
        }
        state = next;
    }
    state
}

fn photons(ops: &[Op], delta: f64, jitter: &[f64], omega: f64) -> Vec<TemporalPhoton> {
    ops.iter()
        .map(|op| TemporalPhoton { bin: op.bin, shift: jitter[op.src - 1] + op.traversals as f64 * delta, width: omega })
        .collect()
}

/// `⟨0|Π a_k Π b_l†|0⟩`: permanent of the pairwise overlap matrix.
fn product_overlap(a: &[TemporalPhoton], b: &[TemporalPhoton]) -> Result<f64> {
    let n = a.len();
    let k = DMatrix::from_fn(n, n, |i, j| C64::new(a[i].overlap(&b[j]), 0.0));
    Ok(permanent_ryser(&k)?.re)
}

fn check_regime(delta: f64, sigma: f64, omega: f64) -> Result<()> {
    if !(omega > 0.0) {
        return Err(LoopError::Parameter(format!("wave-packet width must be positive, got {omega}")));
    }
    if !(sigma >= 0.0) {
        return Err(LoopError::Parameter(format!("jitter must be non-negative, got {sigma}")));
    }
    if delta.abs() / omega > MISMATCH_GUARD || sigma / omega > MISMATCH_GUARD {
        return Err(LoopError::MismatchRegime(format!("|δ|/ω = {:.3}, σ/ω = {:.3}", delta.abs() / omega, sigma / omega)));
    }
    Ok(())
}

/// Fidelity of one pass with loop-length error `delta` and fixed source
/// displacements `jitter[i]` for input mode `i`, against the mismatch-free
/// output.
pub fn mismatch_fidelity_fixed(seq: &SwitchSequence, input: &FockConfiguration, delta: f64, jitter: &[f64], omega: f64) -> Result<f64> {
    let m = seq.modes();
    if input.modes() != m || jitter.len() != m {
        return Err(loqc_fock::FockError::ModeMismatch { expected: m, got: input.modes().max(jitter.len()) }.into());
    }
    let sigma = jitter.iter().fold(0.0f64, |a, &e| a.max(e.abs()));
    check_regime(delta, sigma.min(MISMATCH_GUARD * omega), omega)?;
    if delta == 0.0 && sigma == 0.0 {
        // every photon lands on its ideal wave packet
        return Ok(1.0);
    }
    let state = propagate(seq, input);
    let zero = vec![0.0; m];
    // Only products with the same bin occupation overlap.
    let mut by_bins: BTreeMap<Vec<usize>, Vec<(&Vec<Op>, C64)>> = BTreeMap::new();
    for (ops, &c) in &state {
        by_bins.entry(ops.iter().map(|o| o.bin).collect()).or_default().push((ops, c));
    }
    let mut amp = C64::new(0.0, 0.0);
    for terms in by_bins.values() {
        for (ia, ca) in terms {
            let ideal = photons(ia, 0.0, &zero, omega);
            for (ib, cb) in terms {
                amp += ca.conj() * cb * product_overlap(&ideal, &photons(ib, delta, jitter, omega))?;
            }
        }
    }
    Ok(amp.norm_sqr())
}

/// Mean fidelity over `trials` draws of Gaussian source jitter with standard
/// deviation `sigma` (a single evaluation when `sigma = 0`).
pub fn mismatch_fidelity<R: Rng + ?Sized>(
    seq: &SwitchSequence,
    input: &FockConfiguration,
    delta: f64,
    sigma: f64,
    omega: f64,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    check_regime(delta, sigma, omega)?;
    let m = seq.modes();
    if sigma == 0.0 {
        return mismatch_fidelity_fixed(seq, input, delta, &vec![0.0; m], omega);
    }
    if trials == 0 {
        return Err(LoopError::Parameter("need at least one jitter trial".into()));
    }
    let normal = Normal::new(0.0, sigma).expect("checked sigma");
    let mut total = 0.0;
    for _ in 0..trials {
        let eps: Vec<f64> = (0..m).map(|_| normal.sample(rng)).collect();
        total += mismatch_fidelity_fixed(seq, input, delta, &eps, omega)?;
    }
    Ok(total / trials as f64)
}
