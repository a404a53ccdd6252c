//! End-to-end acceptance checks. Each criterion is evaluated against a
//! test-side oracle, reported on its own line, and asserted at the end.

use std::f64::consts::{E, FRAC_1_SQRT_2, PI};
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use loqc_fock::rng::stream;
use loqc_fock::*;
use loqc_loop::{ideal_loop_map, loss_matrix, lossy_loop_map, mismatch_fidelity, LossParams, SwitchSequence};
use nalgebra::DVector;
use rand::Rng;

type Check = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Sum over all permutations (Heap's algorithm).
fn permanent_by_permutations(a: &DMatrix<C64>) -> C64 {
    let n = a.nrows();
    let mut sigma: Vec<usize> = (0..n).collect();
    let term = |s: &[usize]| s.iter().enumerate().map(|(i, &j)| a[(i, j)]).product::<C64>();
    let mut total = term(&sigma);
    let mut count = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if count[i] < i {
            let k = if i % 2 == 0 { 0 } else { count[i] };
            sigma.swap(k, i);
            total += term(&sigma);
            count[i] += 1;
            i = 1;
        } else {
            count[i] = 0;
            i += 1;
        }
    }
    total
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for trial in 0..200u64 {
        let n = 1 + (trial as usize % 8);
        let mut rng = stream(1, trial);
        let a = DMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let r = permanent_ryser(&a).unwrap();
        let v = permanent_by_permutations(&a);
        worst = worst.max((r - v).norm() / v.norm());
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(worst <= 1e-10 && secs < 10.0, format!("max relative deviation {worst:.2e} in {secs:.2} s"))
}

fn criterion_2() -> Outcome {
    let dist = full_distribution(&ModeUnitary::hadamard(), &FockConfiguration::new(vec![1, 1])).unwrap();
    let want = [(vec![2, 0], 0.5), (vec![0, 2], 0.5), (vec![1, 1], 0.0)];
    let worst = want.iter().map(|(k, p)| (dist.probability(&FockConfiguration::new(k.clone())) - p).abs()).fold(0.0, f64::max);
    let total = dist.probabilities().count();
    outcome(worst <= 1e-12 && total == 3, format!("{total} outcomes, max deviation {worst:.2e}"))
}

/// `Σ_l V_{jl} e^{i(l−1)φ} conj(V_{kl})` with `V_{jl} = e^{−2πijl/n}/√n`, indices from 1.
fn dft_product(n: usize, phi: f64) -> DMatrix<C64> {
    let v = |j: usize, l: usize| C64::from_polar(1.0, -2.0 * PI * (j * l) as f64 / n as f64);
    DMatrix::from_fn(n, n, |j, k| {
        (1..=n).map(|l| v(j + 1, l) * C64::from_polar(1.0, (l - 1) as f64 * phi) * v(k + 1, l).conj()).sum::<C64>() / n as f64
    })
}

/// Signal `Π_j [a_n(j) cos(nφ) + b_n(j)] / n^{2n−2}`.
fn qufti_signal(n: usize, phi: f64) -> f64 {
    let nf = n as f64;
    (1..n)
        .map(|j| {
            let j = j as f64;
            (2.0 * j * (nf - j) * (nf * phi).cos() + nf * nf - 2.0 * j * nf + 2.0 * j * j) / (nf * nf)
        })
        .product()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let (mut worst, mut worst_signal) = (0.0f64, 0.0f64);
    for n in 1..=12 {
        for k in 0..20 {
            let phi = 2.0 * PI * (k as f64 + 0.37) / 20.0;
            let per = permanent_ryser(&dft_product(n, phi)).unwrap();
            let conj = loqc_qufti::conjectured_permanent(n, phi);
            worst = worst.max((per - conj).norm());
            worst_signal = worst_signal.max((per.norm_sqr() - qufti_signal(n, phi)).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-9 && worst_signal <= 1e-9 && secs < 60.0,
        format!("max |Per − conjecture| {worst:.2e}, max signal deviation {worst_signal:.2e}, {secs:.2} s"),
    )
}

fn criterion_4() -> Outcome {
    let (phi, h) = (1e-3, 1e-6);
    let mut worst = 0.0f64;
    for n in 2..=8 {
        let p = |x: f64| permanent_ryser(&dft_product(n, x)).unwrap().norm_sqr();
        let p0 = p(phi);
        let slope = (p(phi + h) - p(phi - h)) / (2.0 * h);
        let numeric = (p0 * (1.0 - p0)).sqrt() / slope.abs();
        let nf = n as f64;
        let formula = (3.0 / (2.0 * nf * (nf + 1.0) * (nf - 1.0))).sqrt();
        let library = loqc_qufti::signal_and_sensitivity(&loqc_qufti::QuftiParams::new(n, phi, 0.0).unwrap()).unwrap();
        worst = worst.max((numeric / formula - 1.0).abs()).max((library.delta_phi.value() / formula - 1.0).abs());
    }
    let mut ordered = true;
    for n in 2..=30 {
        let nf = n as f64;
        let resources = 1.0 + nf * (nf - 1.0) / 2.0;
        let dphi = 1.0 / (2.0 * (nf * (nf * nf - 1.0) / 6.0).sqrt());
        let b = loqc_qufti::orc_baselines(n).unwrap();
        let lib = loqc_qufti::small_angle_sensitivity(n).unwrap();
        ordered &= 1.0 / resources <= dphi + 1e-15 && dphi <= 1.0 / resources.sqrt();
        ordered &= (b.snl - 1.0 / resources.sqrt()).abs() < 1e-15 && (b.hl - 1.0 / resources).abs() < 1e-15;
        ordered &= (lib - dphi).abs() <= 1e-15 * dphi.max(1.0);
    }
    outcome(worst <= 1e-4 && ordered, format!("max relative deviation {worst:.2e}, HL ≤ Δφ ≤ SNL for n ≤ 30: {ordered}"))
}

fn criterion_5() -> Outcome {
    use loqc_phase::{integral_prob, Method};
    let exact = |u: &ModeUnitary, n: usize| integral_prob(u, n, Method::Quadrature { order: None }, u64::MAX, 1e-12).unwrap();
    let mut worst = 0.0f64;
    for n in 1..=3 {
        for trial in 0..20 {
            let u = random_matrix(4, HaarKind::Unitary, &mut stream(5, 100 * n as u64 + trial));
            let block = u.entries().view((0, 0), (n, n)).into_owned();
            let want = permanent_by_permutations(&block).norm_sqr();
            worst = worst.max((exact(&u, n).value - want).abs());
        }
    }
    let perms: [(&[usize], usize); 5] = [(&[1, 0], 2), (&[2, 0, 1], 3), (&[1, 2, 0], 3), (&[0, 2, 1], 3), (&[1, 0, 3, 2], 2)];
    let perm_worst = perms
        .iter()
        .map(|&(sigma, n)| (exact(&ModeUnitary::permutation(sigma).unwrap(), n).value - 1.0).abs())
        .fold(0.0, f64::max);
    outcome(worst <= 1e-8 && perm_worst <= 1e-10, format!("Haar max deviation {worst:.2e}, permutation max deviation {perm_worst:.2e}"))
}

/// Follows one photon bin by bin through the switch and the lossy loop.
fn propagate_direct(seqs: &[SwitchSequence], eta_f: f64, eta_s: f64, input: usize) -> Vec<C64> {
    let m = seqs[0].modes();
    let zero = C64::new(0.0, 0.0);
    let mut amp = vec![zero; m];
    amp[input] = c(1.0);
    for (l, seq) in seqs.iter().enumerate() {
        if l > 0 {
            let outer = eta_f.powi(m as i32) * eta_s.powi(2);
            amp.iter_mut().for_each(|a| *a *= outer);
        }
        let mut out = vec![zero; m];
        let mut in_loop = zero;
        for t in 1..=m + 1 {
            let src = if t <= m { amp[t - 1] } else { zero };
            let exit = (src * seq.u(1, 1, t) + in_loop * seq.u(2, 1, t)) * eta_s;
            in_loop = (src * seq.u(1, 2, t) + in_loop * seq.u(2, 2, t)) * eta_s * eta_f;
            if t >= 2 {
                out[t - 2] = exit;
            }
        }
        amp = out;
    }
    amp
}

fn criterion_6() -> Outcome {
    let (eta_f, eta_s) = (0.93, 0.87);
    let loss = LossParams::new(eta_f, eta_s).unwrap();
    let eta = eta_f * eta_s;
    let mut rng = stream(6, 0);
    let mut worst = 0.0f64;
    for m in 2..=5 {
        for loops in 1..=4i32 {
            let seqs: Vec<_> = (0..loops).map(|_| SwitchSequence::random(m, &mut rng)).collect();
            let ideal = ideal_loop_map(&seqs).unwrap();
            let full = lossy_loop_map(&seqs, loss).unwrap().full().unwrap();
            let outer = (eta_f.powi(m as i32) * eta_s * eta_s).powi(loops - 1);
            for i in 0..m {
                let direct = propagate_direct(&seqs, eta_f, eta_s, i);
                for (j, d) in direct.iter().enumerate() {
                    let l = eta_s.powi(loops) * eta.powi(loops + j as i32 - i as i32);
                    worst = worst.max((ideal.get(i, j) * l * outer - d).norm());
                    worst = worst.max((full.get(i, j) - d).norm());
                }
            }
        }
    }
    let mut appendix = 0.0f64;
    for (ef, es) in [(0.9, 0.8), (0.99, 0.5), (0.3, 0.7)] {
        let loss = LossParams::new(ef, es).unwrap();
        let one = [[es * es * ef, es.powi(3) * ef * ef], [es, es * es * ef]];
        let two = [[es.powi(4) * ef * ef, es.powi(5) * ef.powi(3)], [es.powi(3) * ef, es.powi(4) * ef * ef]];
        let (l1, l2) = (loss_matrix(2, 1, loss), loss_matrix(2, 2, loss));
        for i in 0..2 {
            for j in 0..2 {
                appendix = appendix.max((l1[(i, j)] - one[i][j]).abs()).max((l2[(i, j)] - two[i][j]).abs());
            }
        }
    }
    outcome(worst <= 1e-12 && appendix <= 1e-15, format!("propagation max deviation {worst:.2e}, two-mode matrices {appendix:.2e}"))
}

fn criterion_7() -> Outcome {
    let h = FRAC_1_SQRT_2;
    let seq = SwitchSequence::with_interior(vec![[[c(h), c(h)], [c(h), c(-h)]]]).unwrap();
    let input = FockConfiguration::new(vec![1, 1]);
    let f = |d: f64| mismatch_fidelity(&seq, &input, d, 0.0, 1.0, 1, &mut stream(7, 0)).unwrap();
    let origin = f(0.0);
    let closed = |d: f64| {
        let x = d * d;
        0.25 * (-x / 2.0).exp() * (1.0 + (-x).exp()).powi(2)
    };
    let worst = [0.0, 0.25, 0.5, 1.0, 2.0].iter().map(|&d| (f(d) - closed(d)).abs()).fold(0.0, f64::max);
    let mut rng = stream(7, 1);
    let random = SwitchSequence::random(3, &mut rng);
    let origin3 = mismatch_fidelity(&random, &FockConfiguration::new(vec![1, 1, 1]), 0.0, 0.0, 1.0, 5, &mut rng).unwrap();
    outcome(
        origin == 1.0 && origin3 == 1.0 && worst <= 1e-10,
        format!("F(0,0) = {origin} (m=2), {origin3} (m=3); closed-form max deviation {worst:.2e}"),
    )
}

fn criterion_8() -> Outcome {
    use loqc_fusion::*;
    let mut completeness = 0.0f64;
    for m in 0..=8 {
        for n in 0..=8 {
            for eta in [0.1, 0.3, FRAC_1_SQRT_2, 0.9] {
                let total: f64 = fusion_distribution(m, n, eta).unwrap().iter().sum();
                completeness = completeness.max((total - 1.0).abs());
            }
        }
    }
    let p_opt = (1..=6).map(|m| (optimize_eta(m, m, EtaObjective::Recycled).1 - 0.5).abs()).fold(0.0, f64::max);
    let limited = limited_recycling_prob(60);

    let start = Instant::now();
    let ds = [8usize, 16, 32, 64];
    let points: Vec<(f64, f64)> = ds
        .iter()
        .map(|&d| {
            let r = run_ensemble(&FusionStrategy::new(StrategyKind::Balanced, d), 1_000_000, 32, 800 + d as u64).unwrap();
            ((d as f64).ln(), r.rate.ln())
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    outcome(
        completeness <= 1e-10
            && p_opt <= 1e-5
            && (limited - 1.0 / 3.0).abs() <= 0.02
            && (-4.5..=-2.3).contains(&slope)
            && slope.is_finite()
            && secs < 300.0,
        format!(
            "completeness {completeness:.2e}, |P_opt − 1/2| {p_opt:.2e}, P(60) = {limited:.4}, slope {slope:.3} ({secs:.1} s)"
        ),
    )
}

fn criterion_9() -> Outcome {
    use loqc_sources::*;
    let norm = [0.1, 0.5, 1.0, 1.5]
        .iter()
        .map(|&r| ((0..5000).map(|s| spdc_pn(s, r)).sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    let (r, eps, n) = (0.5f64, 0.5f64, 50u64);
    let eta = eps.powf(1.0 / n as f64);
    let p_par = herald_fidelity(r, eta, n).unwrap().p_par;
    let limit = eps.powf(2.0 * r.tanh().powi(2));
    let rel = (p_par / limit - 1.0).abs();
    let bunch = single_shot_bunch(2).unwrap();
    outcome(
        norm <= 1e-12 && rel <= 0.01 && bunch == 0.5,
        format!("normalization {norm:.2e}, P_par(50) relative to ε^(2tanh²r) {rel:.2e}, bunch(2) = {bunch}"),
    )
}

fn criterion_10() -> Outcome {
    use loqc_nonfock::*;
    let alpha = c(1e-3);
    let state = CoherentSuperposition::new(vec![odd_cat(alpha), odd_cat(alpha)]).unwrap();
    let h = ModeUnitary::hadamard();
    let g = |k: Vec<usize>| cat_amplitude(&state, &h, &FockConfiguration::new(k)).unwrap();
    let tol = 10.0 * alpha.norm_sqr();
    let cat = [(g(vec![1, 1]), 0.0), (g(vec![0, 2]), -FRAC_1_SQRT_2), (g(vec![2, 0]), FRAC_1_SQRT_2)]
        .iter()
        .map(|(a, w)| (a - c(*w)).norm())
        .fold(0.0, f64::max);

    let n = 10_000;
    let alpha2 = 1.0 / n as f64;
    let p_all = spacs_stats(n, alpha2).unwrap().probs[n];
    let closed = (1.0 + alpha2).powi(-(n as i32));
    let spacs = (p_all - 1.0 / E).abs() * E;

    let o = random_matrix(4, HaarKind::Orthogonal, &mut stream(10, 0));
    let patterns: Vec<Vec<Parity>> = (0..4)
        .flat_map(|a| (a + 1..4).map(move |b| (0..4).map(|k| if k == a || k == b { Parity::Odd } else { Parity::Even }).collect()))
        .collect();
    let sample = |xi: f64| -> Vec<u64> {
        let input = PassvInput::new(2, xi).unwrap();
        patterns.iter().map(|p| passv_sample(&o, &input, p).unwrap().to_bits()).collect()
    };
    let (a, b, d) = (sample(0.0), sample(0.5), sample(1.5));
    let identical = a == b && b == d;
    outcome(
        cat <= tol && spacs <= 0.01 && (p_all - closed).abs() <= 1e-12 && identical,
        format!("cat deviation {cat:.2e} (tol {tol:.0e}), SPACS P_n = {p_all:.6} ({:.2}% from 1/e), PASSV bit-identical: {identical}", 100.0 * spacs),
    )
}

fn quadratic_r2(ts: &[f64], ys: &[f64]) -> f64 {
    let a = DMatrix::from_fn(ts.len(), 3, |i, j| ts[i].powi(2 - j as i32));
    let b = DVector::from_column_slice(ys);
    let coef = a.clone().svd(true, true).solve(&b, 1e-14).unwrap();
    let fit = &a * coef;
    let mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let ss_res: f64 = ys.iter().zip(fit.iter()).map(|(y, f)| (y - f).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - mean).powi(2)).sum();
    1.0 - ss_res / ss_tot
}

/// Fully dephased free walk: each step sends a site's population to its four
/// diagonal neighbours equally. Returns the x variance after each step.
fn classical_variances(steps: usize) -> Vec<f64> {
    let e = steps as i64;
    let side = (2 * e + 1) as usize;
    let mut p = vec![vec![0.0f64; side]; side];
    p[e as usize][e as usize] = 1.0;
    let variance = |p: &Vec<Vec<f64>>| {
        let (mut m1, mut m2) = (0.0, 0.0);
        for (i, row) in p.iter().enumerate() {
            let x = i as f64 - e as f64;
            let w: f64 = row.iter().sum();
            m1 += w * x;
            m2 += w * x * x;
        }
        m2 - m1 * m1
    };
    let mut out = vec![variance(&p)];
    for _ in 0..steps {
        let mut next = vec![vec![0.0f64; side]; side];
        for i in 1..side - 1 {
            for j in 1..side - 1 {
                if p[i][j] != 0.0 {
                    for (di, dj) in [(-1i64, -1i64), (-1, 1), (1, -1), (1, 1)] {
                        next[(i as i64 + di) as usize][(j as i64 + dj) as usize] += p[i][j] / 4.0;
                    }
                }
            }
        }
        p = next;
        out.push(variance(&p));
    }
    out
}

fn criterion_11() -> Outcome {
    use loqc_walk::*;
    let mut s = WalkState::origin(100);
    let clear = CoinField::clear(100);
    let congested = CoinField::random(100, 0.7, &mut stream(11, 0)).unwrap();
    let mut noisy = s.clone();
    let mut rng = stream(11, 1);
    let (mut ts, mut vs) = (vec![0.0], vec![0.0]);
    for t in 1..=100 {
        s.advance(&clear).unwrap();
        noisy.advance(&congested).unwrap();
        dephase(&mut noisy, 0.1, &mut rng).unwrap();
        ts.push(t as f64);
        vs.push(metrics(&s, 10).unwrap().variance);
    }
    let drift = (s.norm_sqr() - 1.0).abs().max((noisy.norm_sqr() - 1.0).abs());
    let r2 = quadratic_r2(&ts, &vs);

    let series = ensemble_run(&WalkConfig { t_max: 30, p: 1.0, p_d: 0.5, t_b: 5, trials: 100 }, 11).unwrap();
    let classical = classical_variances(30);
    let z = [5, 10, 20, 30]
        .iter()
        .map(|&t| (series[t].variance - classical[t]).abs() / series[t].variance_err)
        .fold(0.0, f64::max);

    let mut rng = stream(11, 2);
    let psi: Vec<C64> = (0..5).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let psi: Vec<C64> = psi.iter().map(|a| a / norm).collect();
    let trials = 40_000;
    let mut decay_z = 0.0f64;
    for p_d in [0.0, 0.1, 0.25, 0.4, 0.5] {
        let rho = average_dephased_density(&psi, p_d, trials, &mut rng).unwrap();
        let f = (1.0f64 - 2.0 * p_d).powi(2);
        let sd = ((1.0 - f * f) / trials as f64).sqrt().max(1e-12);
        for i in 0..5 {
            for j in (0..5).filter(|&j| j != i) {
                let ratio = rho[(i, j)] / (psi[i] * psi[j].conj());
                decay_z = decay_z.max((ratio.re - f).abs() / sd);
            }
        }
    }
    outcome(
        drift <= 1e-12 && r2 >= 0.99 && z <= 3.0 && decay_z <= 3.0,
        format!("norm drift {drift:.2e}, R² {r2:.5}, dephased variance within {z:.2}σ, decay factor within {decay_z:.2}σ"),
    )
}

fn sigma_p2_numeric(j: f64, g: f64) -> f64 {
    let n = 200_000;
    let lim = PI / g;
    let h = 2.0 * lim / n as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..=n {
        let p = -lim + i as f64 * h;
        let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let f = (g * p / 2.0).cos().powf(2.0 * j);
        num += w * p * p * f;
        den += w * f;
    }
    num / den
}

fn criterion_12() -> Outcome {
    use loqc_gkp::*;
    let mut completeness = 0.0f64;
    for two_j in 1..=60u32 {
        for xi in [-0.5, 0.0, 1.0] {
            let p = SpinLightParams::new(two_j as f64 / 2.0, PI.sqrt(), xi).unwrap();
            completeness = completeness.max((outcome_probs(&p).unwrap().iter().sum::<f64>() - 1.0).abs());
        }
    }
    let xi = xi_from_db(20.0);
    let enc = symmetric_encoding(xi);
    let ps = success_prob(&SpinLightParams::new(127.0, enc.g, xi).unwrap()).unwrap();
    let (j0, j20) = (symmetric_encoding(xi_from_db(0.0)).j, enc.j);
    let g = PI.sqrt();
    let exact = peak_variances(&SpinLightParams::new(50.0, g, 0.0).unwrap()).p_exact;
    let sigma = (exact - sigma_p2_numeric(50.0, g)).abs();
    outcome(
        completeness <= 1e-10 && (ps - 0.0708).abs() <= 0.0005 && j0 == 1.0 && j20 == 127.0 && sigma <= 1e-8,
        format!("completeness {completeness:.2e}, P_s(127) = {ps:.5}, J(0 dB) = {j0}, J(20 dB) = {j20}, σ_p² deviation {sigma:.2e}"),
    )
}

fn criterion_13() -> Outcome {
    let dir = std::env::temp_dir().join(format!("loqc-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |config: &PathBuf, out: &PathBuf, format: &str| {
        Command::new(env!("CARGO_BIN_EXE_loqc"))
            .arg("run")
            .arg(config)
            .args(["--seed", "13", "--format", format, "--out"])
            .arg(out)
            .output()
            .unwrap()
            .status
            .success()
    };
    let mut identical = 0;
    let mut failures = Vec::new();
    for schema in loqc_cli::catalog() {
        let config = dir.join(format!("{}.cfg", schema.name));
        std::fs::write(&config, format!("experiment = {}\n", schema.name)).unwrap();
        for format in ["csv", "json-lines"] {
            let (a, b) = (dir.join(format!("{}-a.{format}", schema.name)), dir.join(format!("{}-b.{format}", schema.name)));
            let ok = run(&config, &a, format) && run(&config, &b, format);
            if ok && std::fs::read(&a).unwrap() == std::fs::read(&b).unwrap() {
                identical += 1;
            } else {
                failures.push(format!("{}/{format}", schema.name));
            }
        }
    }
    let total = 2 * loqc_cli::catalog().len();
    outcome(failures.is_empty() && identical == total, format!("{identical}/{total} experiment outputs byte-identical {failures:?}"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Check; 13] = [
        ("permanent oracle equivalence", criterion_1),
        ("HOM table", criterion_2),
        ("QuFTI permanent conjecture", criterion_3),
        ("QuFTI sensitivity", criterion_4),
        ("integral and permanent agree", criterion_5),
        ("loop loss bias", criterion_6),
        ("mode mismatch", criterion_7),
        ("fusion", criterion_8),
        ("sources", criterion_9),
        ("cat, SPACS and PASSV", criterion_10),
        ("quantum walk", criterion_11),
        ("GKP encoder", criterion_12),
        ("CLI determinism", criterion_13),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        // written past the test harness capture so the summary always shows
        writeln!(std::io::stderr(), "criterion {:>2}: {verdict} {name}: {}", k + 1, o.detail).unwrap();
        if !o.pass {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
