//! Experiment definitions: a schema plus a planner that turns resolved
//! parameters into independent, costed tasks. Each task owns its random
//! stream, so results do not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt::Display;

use loqc_fock::rng::stream;
use loqc_fock::{configurations, full_distribution, permanent_ryser, random_matrix, DMatrix, FockConfiguration, HaarKind, MatrixKind, ModeUnitary, C64};
use rand::RngCore;

use crate::catalog::{boolean, choice, col, float, float_list, int, int_list, ExperimentSchema};
use crate::config::{ExperimentConfig, Value};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    Empty,
}

pub type Row = Vec<Cell>;

type Job = Box<dyn FnOnce() -> Result<Vec<Row>, String> + Send>;

pub struct Task {
    /// Work units charged against the budget.
    pub cost: u64,
    pub run: Job,
}

fn task(cost: u64, f: impl FnOnce() -> Result<Vec<Row>, String> + Send + 'static) -> Task {
    Task { cost: cost.max(1), run: Box::new(f) }
}

/// Parameter problem found while planning.
struct PlanError {
    field: &'static str,
    msg: String,
}

fn bad(field: &'static str, msg: impl Into<String>) -> PlanError {
    PlanError { field, msg: msg.into() }
}

type Plan = Result<Vec<Task>, PlanError>;

fn s<E: Display>(e: E) -> String {
    e.to_string()
}

fn f(x: f64) -> Cell {
    Cell::Float(x)
}

fn i<T: TryInto<i64>>(x: T) -> Cell {
    Cell::Int(x.try_into().unwrap_or(i64::MAX))
}

/// Typed view of resolved parameters. Values were checked against the
/// schema, so lookups cannot fail.
struct P<'a>(&'a BTreeMap<String, Value>);

impl P<'_> {
    fn get(&self, k: &str) -> &Value {
        &self.0[k]
    }
    fn float(&self, k: &str) -> f64 {
        match self.get(k) {
            Value::Float(x) => *x,
            v => unreachable!("{k} = {v}"),
        }
    }
    fn int(&self, k: &str) -> i64 {
        match self.get(k) {
            Value::Int(x) => *x,
            v => unreachable!("{k} = {v}"),
        }
    }
    fn usize(&self, k: &str) -> usize {
        self.int(k) as usize
    }
    fn boolean(&self, k: &str) -> bool {
        matches!(self.get(k), Value::Bool(true))
    }
    fn string(&self, k: &str) -> String {
        match self.get(k) {
            Value::Str(x) => x.clone(),
            v => unreachable!("{k} = {v}"),
        }
    }
    fn floats(&self, k: &str) -> Vec<f64> {
        match self.get(k) {
            Value::List(v) => v.iter().map(|x| if let Value::Float(x) = x { *x } else { unreachable!() }).collect(),
            v => unreachable!("{k} = {v}"),
        }
    }
    fn usizes(&self, k: &str) -> Vec<usize> {
        match self.get(k) {
            Value::List(v) => v.iter().map(|x| if let Value::Int(x) = x { *x as usize } else { unreachable!() }).collect(),
            v => unreachable!("{k} = {v}"),
        }
    }
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k.min(n - k)).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

fn amplitude_rows(u: &ModeUnitary, input: &FockConfiguration) -> Result<Vec<Row>, String> {
    let dist = full_distribution(u, input).map_err(s)?;
    Ok(dist.entries.iter().map(|(out, a)| vec![Cell::Str(out.to_string()), f(a.re), f(a.im), f(a.norm_sqr())]).collect())
}

const AMPLITUDE_COLUMNS: [(&str, &str); 4] =
    [("output", "photons"), ("amplitude_re", "1"), ("amplitude_im", "1"), ("probability", "1")];

// ---------------------------------------------------------------------------

fn hom(p: &P, _seed: u64) -> Plan {
    let eta = p.float("eta");
    let input = p.usizes("input");
    if input.len() != 2 {
        return Err(bad("input", format!("a beamsplitter has 2 input ports, got {} occupations", input.len())));
    }
    let (r, t) = (eta.sqrt(), (1.0 - eta).sqrt());
    let cost = input.iter().sum::<usize>() as u64 + 1;
    Ok(vec![task(cost, move || {
        let u = ModeUnitary::new(DMatrix::from_row_slice(2, 2, &[real(r), real(t), real(t), real(-r)]), MatrixKind::Orthogonal)
            .map_err(s)?;
        amplitude_rows(&u, &FockConfiguration::new(input))
    })])
}

const MAX_CONFIGURATIONS: f64 = 5e5;

fn distribution(p: &P, seed: u64) -> Plan {
    let input = p.usizes("input");
    let (m, n) = (input.len(), input.iter().sum::<usize>());
    if m > 16 {
        return Err(bad("input", format!("at most 16 modes, got {m}")));
    }
    let count = binomial(n + m - 1, n);
    if count > MAX_CONFIGURATIONS {
        return Err(bad("input", format!("{n} photons in {m} modes give {count} outputs, limit is {MAX_CONFIGURATIONS}")));
    }
    let (kind, phi) = (p.string("unitary"), p.float("phi"));
    Ok(vec![task(count as u64, move || {
        let u = match kind.as_str() {
            "haar" => random_matrix(m, HaarKind::Unitary, &mut stream(seed, 0)),
            "haar-orthogonal" => random_matrix(m, HaarKind::Orthogonal, &mut stream(seed, 0)),
            "identity" => ModeUnitary::identity(m),
            _ => loqc_qufti::qufti_unitary(m, phi).map_err(s)?,
        };
        amplitude_rows(&u, &FockConfiguration::new(input))
    })])
}

fn loop_loss(p: &P, _seed: u64) -> Plan {
    let (m, loops) = (p.usize("m"), p.usize("loops"));
    let loss = loqc_loop::LossParams::new(p.float("eta_f"), p.float("eta_s")).map_err(|e| bad("eta_f", s(e)))?;
    Ok(vec![task((m * m) as u64, move || {
        let l = loqc_loop::loss_matrix(m, loops, loss);
        Ok((0..m).flat_map(|r| (0..m).map(move |c| (r, c))).map(|(r, c)| vec![i(r + 1), i(c + 1), f(l[(r, c)])]).collect())
    })])
}

fn loop_similarity(p: &P, seed: u64) -> Plan {
    let loss = loqc_loop::LossParams::new(p.float("eta_f"), p.float("eta_s")).map_err(|e| bad("eta_f", s(e)))?;
    let trials = p.usize("trials");
    let mut tasks = Vec::new();
    for m in p.usizes("m") {
        for loops in p.usizes("loops") {
            let idx = tasks.len() as u64;
            tasks.push(task((2 * trials * loops * m * m) as u64, move || {
                let res = loqc_loop::similarity_search(m, loops, loss, trials, &mut stream(seed, idx)).map_err(s)?;
                let map = loqc_loop::lossy_loop_map(&res.sequences, loss).map_err(s)?;
                let full = map.inner.map(|z| z * map.outer_factor);
                let post = loqc_loop::postselect_prob(&full, &FockConfiguration::new(vec![1; m])).map_err(s)?;
                Ok(vec![vec![i(m), i(loops), f(res.similarity), f(post)]])
            }));
        }
    }
    Ok(tasks)
}

fn loop_mismatch(p: &P, seed: u64) -> Plan {
    use loqc_loop::SwitchSequence;
    let m = p.usize("m");
    let (sigma, trials) = (p.float("sigma"), p.usize("trials"));
    let seq = match p.string("switch").as_str() {
        "random" => SwitchSequence::random(m, &mut stream(seed, 0)),
        _ => {
            let h = real(std::f64::consts::FRAC_1_SQRT_2);
            SwitchSequence::with_interior(vec![[[h, h], [h, -h]]; m - 1]).map_err(|e| bad("switch", s(e)))?
        }
    };
    let cost = if sigma == 0.0 { 1 } else { trials as u64 };
    Ok(p.floats("delta")
        .into_iter()
        .enumerate()
        .map(|(k, delta)| {
            let seq = seq.clone();
            task(cost, move || {
                let input = FockConfiguration::new(vec![1; m]);
                let fid = loqc_loop::mismatch_fidelity(&seq, &input, delta, sigma, 1.0, trials, &mut stream(seed, 1 + k as u64))
                    .map_err(s)?;
                Ok(vec![vec![f(delta), f(sigma), f(fid)]])
            })
        })
        .collect())
}

fn qufti(p: &P, _seed: u64) -> Plan {
    let (phi, var) = (p.float("phi"), p.float("dephasing_var"));
    Ok(p.usizes("n")
        .into_iter()
        .map(|n| {
            task(1 << n.min(20), move || {
                let params = loqc_qufti::QuftiParams::new(n, phi, var).map_err(s)?;
                let sig = loqc_qufti::signal_and_sensitivity(&params).map_err(s)?;
                let small = loqc_qufti::small_angle_sensitivity(n).map_err(s)?;
                let b = loqc_qufti::orc_baselines(n).map_err(s)?;
                Ok(vec![vec![i(n), f(phi), f(sig.p), f(sig.slope), f(sig.delta_phi.value()), f(small), f(b.snl), f(b.hl)]])
            })
        })
        .collect())
}

fn qufti_conjecture(p: &P, _seed: u64) -> Plan {
    let (lo, hi, points) = (p.usize("n_min"), p.usize("n_max"), p.usize("phi_points"));
    if lo > hi {
        return Err(bad("n_min", format!("n_min = {lo} exceeds n_max = {hi}")));
    }
    Ok((lo..=hi)
        .map(|n| {
            task((points * n) as u64 * (1u64 << n), move || {
                let mut worst = 0.0f64;
                for k in 0..points {
                    let phi = std::f64::consts::TAU * (k as f64 + 0.5) / points as f64;
                    let u = loqc_qufti::qufti_unitary(n, phi).map_err(s)?;
                    let per = permanent_ryser(u.entries()).map_err(s)?;
                    worst = worst.max((per - loqc_qufti::conjectured_permanent(n, phi)).norm());
                }
                Ok(vec![vec![i(n), i(points), f(worst)]])
            })
        })
        .collect())
}

fn sources(p: &P, _seed: u64) -> Plan {
    let (r, eta, target, max_sources) = (p.float("r"), p.float("eta"), p.float("target"), p.int("max_sources") as u64);
    Ok(p.usizes("n")
        .into_iter()
        .map(|n| {
            let n = n as u64;
            task(max_sources, move || {
                use loqc_sources::*;
                let h = herald_fidelity(r, eta, n).map_err(s)?;
                let needed = sources_for_target(r, eta, n, target, max_sources).map_err(s)?;
                Ok(vec![vec![
                    i(n),
                    f(post_prob(eta, n).map_err(s)?),
                    f(h.p_corr),
                    f(h.p_par),
                    f(h.asymptote),
                    f(single_shot_bunch(n).map_err(s)?),
                    f(single_shot_rate(n).map_err(s)?),
                    needed.map_or(Cell::Empty, i),
                ]])
            })
        })
        .collect())
}

fn fusion_rate(p: &P, seed: u64) -> Plan {
    use loqc_fusion::{run_ensemble, FusionStrategy, StrategyKind};
    let kind: StrategyKind = p.string("strategy").parse().map_err(|e: String| bad("strategy", e))?;
    let (steps, chains, recycle) = (p.int("steps") as u64, p.int("chains") as u64, p.boolean("recycle"));
    Ok(p.usizes("d")
        .into_iter()
        .enumerate()
        .map(|(k, d)| {
            task(steps * chains, move || {
                let st = FusionStrategy { recycle, ..FusionStrategy::new(kind, d) };
                let r = run_ensemble(&st, steps, chains, stream(seed, k as u64).next_u64()).map_err(s)?;
                Ok(vec![vec![
                    i(d),
                    f(r.rate),
                    f(r.lo),
                    f(r.hi),
                    i(r.harvested),
                    i(r.counted_steps),
                    f(r.on_demand_per_state),
                ]])
            })
        })
        .collect())
}

fn cat_hom(p: &P, _seed: u64) -> Plan {
    use loqc_nonfock::{cat_amplitude, coherent, even_cat, odd_cat, CoherentSuperposition};
    let (kind, photons) = (p.string("cat"), p.usize("photons"));
    Ok(p.floats("alpha")
        .into_iter()
        .map(|alpha| {
            let kind = kind.clone();
            task(photons as u64 + 1, move || {
                let a = real(alpha);
                let mode = match kind.as_str() {
                    "even" => even_cat(a),
                    "coherent" => coherent(a),
                    _ => odd_cat(a),
                };
                let state = CoherentSuperposition::new(vec![mode.clone(), mode]).map_err(s)?;
                let h = ModeUnitary::hadamard();
                configurations(photons, 2)
                    .into_iter()
                    .map(|out| {
                        let z = cat_amplitude(&state, &h, &out).map_err(s)?;
                        Ok(vec![f(alpha), Cell::Str(out.to_string()), f(z.re), f(z.im), f(z.norm_sqr())])
                    })
                    .collect()
            })
        })
        .collect())
}

fn spacs(p: &P, _seed: u64) -> Plan {
    let scale = p.float("alpha2_scale");
    Ok(p.usizes("n")
        .into_iter()
        .map(|n| {
            task(n as u64, move || {
                let alpha2 = scale / n as f64;
                let st = loqc_nonfock::spacs_stats(n, alpha2).map_err(s)?;
                let mean: f64 = st.probs.iter().enumerate().map(|(k, q)| k as f64 * q).sum();
                Ok(vec![vec![i(n), f(alpha2), f(st.probs[n]), f(st.probs[0]), f(mean), Cell::Str(st.regime.to_string())]])
            })
        })
        .collect())
}

/// Sorted `n`-subsets of `0..m`.
fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in start..m {
            cur.push(k);
            rec(k + 1, m, n, cur, out);
            cur.pop();
        }
    }
    rec(0, m, n, &mut cur, &mut out);
    out
}

fn passv(p: &P, seed: u64) -> Plan {
    use loqc_nonfock::{passv_sample, Parity, PassvInput};
    let (m, n) = (p.usize("modes"), p.usize("photons"));
    if n > m {
        return Err(bad("photons", format!("{n} photon-added modes exceed {m} modes")));
    }
    let o = random_matrix(m, HaarKind::Orthogonal, &mut stream(seed, 0));
    let cost = binomial(m, n) as u64 * (1u64 << n);
    Ok(p.floats("xi")
        .into_iter()
        .map(|xi| {
            let o = o.clone();
            task(cost, move || {
                let input = PassvInput::new(n, xi).map_err(s)?;
                subsets(m, n)
                    .into_iter()
                    .map(|odd| {
                        let parity: Vec<Parity> = (0..m).map(|j| if odd.contains(&j) { Parity::Odd } else { Parity::Even }).collect();
                        let label: String = parity.iter().map(|q| if *q == Parity::Odd { 'o' } else { 'e' }).collect();
                        Ok(vec![f(xi), Cell::Str(label), f(passv_sample(&o, &input, &parity).map_err(s)?)])
                    })
                    .collect()
            })
        })
        .collect())
}

fn integral_check(p: &P, seed: u64) -> Plan {
    use loqc_phase::{integral_prob, Method, MONTE_CARLO_MAX_PHOTONS, QUADRATURE_MAX_PHOTONS};
    let (m, unitaries, budget, tol) = (p.usize("m"), p.int("unitaries") as u64, p.int("evaluations") as u64, p.float("tolerance"));
    let quadrature = p.string("method") == "quadrature";
    let limit = if quadrature { QUADRATURE_MAX_PHOTONS } else { MONTE_CARLO_MAX_PHOTONS };
    let ns = p.usizes("n");
    if let Some(&n) = ns.iter().find(|&&n| n > m || n > limit) {
        return Err(bad("n", format!("n = {n} needs n ≤ m = {m} and n ≤ {limit} for this method")));
    }
    let mut tasks = Vec::new();
    for n in ns {
        let cost = if quadrature { ((n + 2) as u64).pow(2 * n as u32).min(budget) } else { budget };
        for trial in 0..unitaries {
            tasks.push(task(cost, move || {
                let mut rng = stream(seed, trial);
                let u = random_matrix(m, HaarKind::Unitary, &mut rng);
                let method = if quadrature { Method::Quadrature { order: None } } else { Method::MonteCarlo { seed: rng.next_u64() } };
                let est = integral_prob(&u, n, method, budget, tol).map_err(s)?;
                let per = permanent_ryser(&u.entries().view((0, 0), (n, n)).into_owned()).map_err(s)?.norm_sqr();
                Ok(vec![vec![
                    i(n),
                    i(trial),
                    f(est.value),
                    f(est.error),
                    i(est.evaluations),
                    Cell::Bool(est.converged),
                    f(per),
                    f((est.value - per).abs()),
                ]])
            }));
        }
    }
    Ok(tasks)
}

fn walk(p: &P, seed: u64) -> Plan {
    let config = loqc_walk::WalkConfig {
        t_max: p.usize("t_max"),
        p: p.float("p"),
        p_d: p.float("p_d"),
        t_b: p.usize("t_b"),
        trials: p.usize("trials"),
    };
    let cost = config.trials as u64 * (config.t_max as u64 + 1).pow(2);
    Ok(vec![task(cost, move || {
        let pts = loqc_walk::ensemble_run(&config, seed).map_err(s)?;
        Ok(pts.iter().map(|q| vec![i(q.t), f(q.variance), f(q.variance_err), f(q.escape), f(q.escape_err)]).collect())
    })])
}

fn gkp(p: &P, _seed: u64) -> Plan {
    use loqc_gkp::*;
    Ok(p.floats("s_db")
        .into_iter()
        .map(|db| {
            let xi = xi_from_db(db);
            let enc = symmetric_encoding(xi);
            task((2.0 * enc.j + 1.0).powi(2) as u64, move || {
                let params = SpinLightParams::new(enc.j, enc.g, xi).map_err(s)?;
                let v = peak_variances(&params);
                Ok(vec![vec![
                    f(db),
                    f(xi),
                    f(enc.j),
                    f(enc.g),
                    f(success_prob(&params).map_err(s)?),
                    f(success_prob_limit(enc.j).map_err(s)?),
                    f(success_prob_asymptotic(enc.j)),
                    f(v.q),
                    f(v.p_exact),
                    f(v.p_approx),
                ]])
            })
        })
        .collect())
}

// ---------------------------------------------------------------------------

type Planner = fn(&P, u64) -> Plan;

fn schema(name: &str, summary: &str, cost_unit: &str, params: Vec<crate::catalog::ParamSpec>, columns: &[(&str, &str)]) -> ExperimentSchema {
    ExperimentSchema {
        name: name.into(),
        summary: summary.into(),
        cost_unit: cost_unit.into(),
        params,
        columns: columns.iter().map(|(n, u)| col(n, u)).collect(),
    }
}

fn registry() -> Vec<(ExperimentSchema, Planner)> {
    const UNIT: (f64, f64) = (0.0, 1.0);
    vec![
        (
            schema(
                "hom",
                "Two-photon interference on a beamsplitter",
                "output configurations",
                vec![
                    float("eta", 0.5, UNIT, "1", "power reflectivity of the splitter"),
                    int_list("input", &[1, 1], (0, 20), "photons", "occupation of the two input ports"),
                ],
                &AMPLITUDE_COLUMNS,
            ),
            hom as Planner,
        ),
        (
            schema(
                "distribution",
                "Full output distribution of a Fock input through a linear network",
                "output configurations",
                vec![
                    int_list("input", &[1, 1, 0, 0], (0, 12), "photons", "input occupation per mode"),
                    choice("unitary", "haar", &["haar", "haar-orthogonal", "identity", "qufti"], "network"),
                    float("phi", 0.3, (-1e3, 1e3), "rad", "phase for the qufti network"),
                ],
                &AMPLITUDE_COLUMNS,
            ),
            distribution,
        ),
        (
            schema(
                "loop-loss",
                "Loss factor applied to each entry of the loop-architecture map",
                "matrix entries",
                vec![
                    int("m", 4, (2, 32), "bins", "time bins in the pulse train"),
                    int("loops", 2, (1, 32), "passes", "passes through the inner loop"),
                    float("eta_f", 0.95, UNIT, "1", "fiber efficiency per bin delay"),
                    float("eta_s", 0.99, UNIT, "1", "switch efficiency per pass"),
                ],
                &[("i", "bin"), ("j", "bin"), ("factor", "amplitude")],
            ),
            loop_loss,
        ),
        (
            schema(
                "loop-similarity",
                "Best similarity of the lossy loop map to a balanced network",
                "trial-entries",
                vec![
                    int_list("m", &[2, 3, 4], (2, 8), "bins", "time bins"),
                    int_list("loops", &[1, 2, 3], (1, 6), "passes", "inner-loop passes"),
                    float("eta_f", 0.95, UNIT, "1", "fiber efficiency per bin delay"),
                    float("eta_s", 0.99, UNIT, "1", "switch efficiency per pass"),
                    int("trials", 200, (1, 1_000_000), "draws", "random settings and refinement steps"),
                ],
                &[("m", "bins"), ("loops", "passes"), ("similarity", "1"), ("postselect", "1")],
            ),
            loop_similarity,
        ),
        (
            schema(
                "loop-mismatch",
                "Fidelity of one loop pass with a loop-length error and source jitter",
                "jitter draws",
                vec![
                    int("m", 2, (2, 5), "bins", "time bins, one photon each"),
                    choice("switch", "hadamard", &["hadamard", "random"], "interior switch settings"),
                    float_list("delta", &[0.0, 0.25, 0.5, 1.0, 2.0], (-10.0, 10.0), "omega", "loop-length error"),
                    float("sigma", 0.0, (0.0, 10.0), "omega", "source timing jitter"),
                    int("trials", 100, (1, 1_000_000), "draws", "jitter draws per point when sigma > 0"),
                ],
                &[("delta", "omega"), ("sigma", "omega"), ("fidelity", "1")],
            ),
            loop_mismatch,
        ),
        (
            schema(
                "qufti",
                "Signal and phase sensitivity of the Fourier interferometer",
                "rows",
                vec![
                    int_list("n", &[2, 3, 4, 5, 6, 7, 8], (2, 1000), "photons", "photons and modes"),
                    float("phi", 1e-3, (-1e3, 1e3), "rad", "phase"),
                    float("dephasing_var", 0.0, (0.0, 1e3), "rad^2", "per-mode random phase variance"),
                ],
                &[
                    ("n", "photons"),
                    ("phi", "rad"),
                    ("probability", "1"),
                    ("slope", "1/rad"),
                    ("delta_phi", "rad"),
                    ("small_angle", "rad"),
                    ("snl", "rad"),
                    ("hl", "rad"),
                ],
            ),
            qufti,
        ),
        (
            schema(
                "qufti-conjecture",
                "Ryser permanent of the Fourier interferometer against its product formula",
                "permanent terms",
                vec![
                    int("n_min", 1, (1, 20), "modes", "smallest size"),
                    int("n_max", 10, (1, 20), "modes", "largest size"),
                    int("phi_points", 20, (1, 10_000), "points", "phases spread over one period"),
                ],
                &[("n", "modes"), ("phi_points", "points"), ("max_abs_diff", "1")],
            ),
            qufti_conjecture,
        ),
        (
            schema(
                "sources",
                "Heralded and multiplexed single-photon source figures",
                "candidate source counts",
                vec![
                    float("r", 0.5, (0.0, 5.0), "1", "squeezing parameter"),
                    float("eta", 0.9, UNIT, "1", "detector efficiency"),
                    float("target", 0.99, UNIT, "1", "multiplexed preparation probability to reach"),
                    int("max_sources", 10_000, (1, 1_000_000), "sources", "search limit"),
                    int_list("n", &[1, 2, 5, 10, 20, 50], (1, 100_000), "photons", "photons needed"),
                ],
                &[
                    ("n", "photons"),
                    ("post_prob", "1"),
                    ("p_corr", "1"),
                    ("p_par", "1"),
                    ("p_par_asymptote", "1"),
                    ("bunch_prob", "1"),
                    ("single_shot_rate", "1/shot"),
                    ("sources_needed", "sources"),
                ],
            ),
            sources,
        ),
        (
            schema(
                "fusion-rate",
                "Rate of reaching a target photon number by fusing Fock states",
                "chain steps",
                vec![
                    choice("strategy", "balanced", &["balanced", "modesty", "random", "frugal"], "which states to fuse"),
                    int_list("d", &[8, 16, 32, 64], (1, 4096), "photons", "target photon number"),
                    int("steps", 100_000, (1, 10_000_000_000), "steps", "steps per chain"),
                    int("chains", 8, (1, 4096), "chains", "independent chains"),
                    boolean("recycle", true, "keep every fusion outcome"),
                ],
                &[
                    ("d", "photons"),
                    ("rate", "1/step"),
                    ("rate_lo", "1/step"),
                    ("rate_hi", "1/step"),
                    ("harvested", "states"),
                    ("counted_steps", "steps"),
                    ("on_demand_per_state", "photons"),
                ],
            ),
            fusion_rate,
        ),
        (
            schema(
                "cat-hom",
                "Cat states in both ports of a balanced beamsplitter",
                "output configurations",
                vec![
                    float_list("alpha", &[1e-3, 1e-2, 0.1, 0.5, 1.0], (1e-6, 3.0), "1", "coherent amplitude"),
                    choice("cat", "odd", &["odd", "even", "coherent"], "input state in each port"),
                    int("photons", 2, (0, 12), "photons", "total photons in the tabulated outputs"),
                ],
                &[("alpha", "1"), ("output", "photons"), ("amplitude_re", "1"), ("amplitude_im", "1"), ("probability", "1")],
            ),
            cat_hom,
        ),
        (
            schema(
                "spacs",
                "Photon counts of photon-added coherent states after counter-displacement",
                "photons",
                vec![
                    int_list("n", &[10, 100, 1000, 10_000], (1, 1_000_000), "photons", "added photons"),
                    float("alpha2_scale", 1.0, (0.0, 1e6), "1/n", "|alpha|^2 in units of 1/n"),
                ],
                &[
                    ("n", "photons"),
                    ("alpha2", "photons"),
                    ("p_all", "1"),
                    ("p_vacuum", "1"),
                    ("mean_count", "photons"),
                    ("regime", "label"),
                ],
            ),
            spacs,
        ),
        (
            schema(
                "passv",
                "Parity patterns of photon-added squeezed vacuum through a real network",
                "permanent terms",
                vec![
                    int("modes", 4, (1, 12), "modes", "network size"),
                    int("photons", 2, (0, 12), "photons", "modes with an added photon"),
                    float_list("xi", &[0.0, 0.5, 1.5], (-5.0, 5.0), "1", "squeezing"),
                ],
                &[("xi", "1"), ("pattern", "parity"), ("probability", "1")],
            ),
            passv,
        ),
        (
            schema(
                "integral-check",
                "Phase-space integral against the permanent on Haar unitaries",
                "integrand evaluations",
                vec![
                    int_list("n", &[1, 2, 3], (1, 6), "photons", "photons in the leading modes"),
                    int("m", 4, (1, 12), "modes", "network size"),
                    int("unitaries", 20, (1, 100_000), "matrices", "Haar draws"),
                    choice("method", "quadrature", &["quadrature", "monte-carlo"], "integration method"),
                    int("evaluations", 1_000_000, (1, 1_000_000_000_000), "calls", "integrand calls per estimate"),
                    float("tolerance", 1e-8, (0.0, 1.0), "1", "error below which an estimate counts as converged"),
                ],
                &[
                    ("n", "photons"),
                    ("trial", "index"),
                    ("integral", "1"),
                    ("error", "1"),
                    ("evaluations", "calls"),
                    ("converged", "flag"),
                    ("permanent_sq", "1"),
                    ("abs_diff", "1"),
                ],
            ),
            integral_check,
        ),
        (
            schema(
                "walk",
                "Spreading and escape of a coined walk on a congested lattice",
                "trial-site-steps",
                vec![
                    int("t_max", 20, (0, 1000), "steps", "steps taken"),
                    float("p", 1.0, UNIT, "1", "probability that a site is free of congestion"),
                    float("p_d", 0.0, UNIT, "1", "dephasing probability per step"),
                    int("t_b", 10, (0, 1000), "sites", "escape boundary"),
                    int("trials", 100, (1, 1_000_000), "trials", "lattice and dephasing draws"),
                ],
                &[("t", "step"), ("variance", "site^2"), ("variance_err", "site^2"), ("escape", "1"), ("escape_err", "1")],
            ),
            walk,
        ),
        (
            schema(
                "gkp",
                "Grid-state preparation from spin-light coupling with symmetric peaks",
                "spin states squared",
                vec![float_list("s_db", &[0.0, 5.0, 10.0, 15.0, 20.0], (0.0, 30.0), "dB", "squeezing")],
                &[
                    ("s_db", "dB"),
                    ("xi", "1"),
                    ("j", "spin"),
                    ("g", "1"),
                    ("success_prob", "1"),
                    ("success_limit", "1"),
                    ("success_asymptotic", "1"),
                    ("sigma_q2", "1"),
                    ("sigma_p2", "1"),
                    ("sigma_p2_approx", "1"),
                ],
            ),
            gkp,
        ),
    ]
}

pub(crate) fn schemas() -> Vec<ExperimentSchema> {
    registry().into_iter().map(|(s, _)| s).collect()
}

/// Splits a validated config into tasks.
pub fn plan(cfg: &ExperimentConfig) -> Result<Vec<Task>, CliError> {
    let planner = registry()
        .into_iter()
        .find(|(s, _)| s.name == cfg.experiment)
        .map(|(_, p)| p)
        .ok_or_else(|| CliError::config(None, Some("experiment"), format!("unknown experiment `{}`", cfg.experiment)))?;
    planner(&P(&cfg.params), cfg.seed).map_err(|e| CliError::config(cfg.line_of(e.field), Some(e.field), e.msg))
}
