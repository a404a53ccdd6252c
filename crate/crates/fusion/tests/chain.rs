use loqc_fusion::*;
use proptest::prelude::*;
use std::f64::consts::FRAC_1_SQRT_2;

fn rng(i: u64) -> loqc_fock::rng::ChaCha8Rng {
    loqc_fock::rng::stream(2024, i)
}

// Closed-form vacuum-outcome probability for equal inputs, maximized on a grid.
fn best_s0(m: usize, n: usize) -> f64 {
    (1..10_000)
        .map(|i| fusion_prob_closed_form(0, m, n, i as f64 / 10_000.0).unwrap())
        .fold(0.0, f64::max)
}

#[test]
fn two_photon_target_rate() {
    // With d = 2 nothing is ever stored: every step fuses two singles and
    // succeeds iff no photon is detected, so the chain is Bernoulli(1/2).
    let steps = 100_000;
    let r = run_strategy(&FusionStrategy::new(StrategyKind::Balanced, 2), steps, &mut rng(0), false).unwrap();
    let sigma = (0.25 / r.counted_steps as f64).sqrt();
    assert!((r.rate - 0.5).abs() < 3.0 * sigma, "{}", r.rate);
    assert!(r.lo < 0.5 && 0.5 < r.hi);
}

#[test]
fn non_recycled_doubling_cost() {
    let e2 = 2.0 / best_s0(1, 1);
    let want = 2.0 * e2 / best_s0(2, 2);
    assert!((want - 64.0 / 3.0).abs() < 1e-3);
    let st = FusionStrategy { recycle: false, ..FusionStrategy::new(StrategyKind::Balanced, 4) };
    let r = run_strategy(&st, 200_000, &mut rng(1), false).unwrap();
    assert!((r.on_demand_per_state - want).abs() < 0.1 * want, "{} vs {want}", r.on_demand_per_state);
}

#[test]
fn modesty_decays_faster_than_balanced() {
    let b = run_ensemble(&FusionStrategy::new(StrategyKind::Balanced, 16), 200_000, 4, 3).unwrap();
    let m = run_ensemble(&FusionStrategy::new(StrategyKind::Modesty, 16), 200_000, 4, 3).unwrap();
    assert!(m.hi < b.lo, "modesty {:?} balanced {:?}", (m.lo, m.hi), (b.lo, b.hi));
}

#[test]
fn hybrid_start_helps() {
    let single = FusionStrategy::new(StrategyKind::Balanced, 16);
    let hybrid = FusionStrategy { unlimited_at: 2, ..single };
    let a = run_ensemble(&single, 200_000, 4, 5).unwrap();
    let b = run_ensemble(&hybrid, 200_000, 4, 5).unwrap();
    assert!(b.rate >= a.rate, "{} < {}", b.rate, a.rate);
}

#[test]
fn balanced_optimum_is_one_half() {
    for m in 1..=6 {
        let (_, p) = optimize_eta(m, m, EtaObjective::Recycled);
        assert!((p - 0.5).abs() < 1e-5, "m={m}: {p}");
    }
}

#[test]
fn s0_optimum_matches_grid() {
    let (eta, p) = optimize_eta(1, 1, EtaObjective::S0Only);
    let grid = (1..10_000).map(|i| fusion_prob(0, 1, 1, i as f64 * 1e-4).unwrap()).fold(0.0, f64::max);
    assert!(p >= grid - 1e-12 && p - grid < 1e-6);
    assert!((eta - FRAC_1_SQRT_2).abs() < 1e-4);
}

#[test]
fn limited_recycling_approaches_a_third() {
    assert!((limited_recycling_prob(60) - 1.0 / 3.0).abs() < 0.02);
}

#[test]
fn reduction_by_one_is_geometric() {
    let (n, eta) = (6, 0.05);
    let dist = fusion_distribution(n, 0, eta).unwrap();
    let trials = 20_000;
    let mut r = rng(7);
    let (mut ops, mut ok) = (0u64, 0u64);
    for _ in 0..trials {
        let red = reduce_state(n, n - 1, eta, &mut r).unwrap();
        ops += red.operations;
        ok += u64::from(red.success);
    }
    let mean = ops as f64 / trials as f64;
    let want_mean = 1.0 / (1.0 - dist[0]);
    let want_ok = dist[1] / (1.0 - dist[0]);
    assert!((mean / want_mean - 1.0).abs() < 0.03, "{mean} vs {want_mean}");
    assert!((ok as f64 / trials as f64 - want_ok).abs() < 0.01);
}

#[test]
fn reduction_cost_is_linear() {
    let d = 10;
    let mut r = rng(8);
    let pts: Vec<(f64, f64)> = (1..=10)
        .map(|k| {
            let trials = 400;
            let tot: u64 = (0..trials).map(|_| reduce_state(d + k, d, 0.05, &mut r).unwrap().operations).sum();
            (k as f64, tot as f64 / trials as f64)
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let r2 = sxy * sxy / (sxx * syy);
    assert!(r2 >= 0.98, "R² = {r2}");
}

#[test]
fn trace_conserves_photons() {
    for kind in [StrategyKind::Balanced, StrategyKind::Modesty, StrategyKind::Random, StrategyKind::Frugal] {
        let st = FusionStrategy::new(kind, 12);
        let r = run_strategy(&st, 5_000, &mut rng(9), true).unwrap();
        let mut stored = 0u64;
        for t in &r.trace {
            let part = |k: usize| if k == st.unlimited_at { 0 } else { k as u64 };
            let out = (t.m + t.n - t.s) as u64;
            let kept = if t.harvested || out == st.unlimited_at as u64 { 0 } else { out };
            stored = stored - part(t.m) - part(t.n) + kept;
            assert_eq!(stored, t.stored_photons, "{kind:?} step {}", t.step);
        }
    }
}

#[test]
fn bad_strategy_rejected() {
    let st = FusionStrategy { d_prime: 3, ..FusionStrategy::new(StrategyKind::Frugal, 4) };
    assert!(run_strategy(&st, 10, &mut rng(0), false).is_err());
    assert!(run_strategy(&FusionStrategy::new(StrategyKind::Balanced, 4), 0, &mut rng(0), false).is_err());
}

proptest! {
    #[test]
    fn detection_distribution_is_complete(m in 0usize..=8, n in 0usize..=8, eta in 0.2f64..0.9) {
        let total: f64 = fusion_distribution(m, n, eta).unwrap().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn swapping_inputs_mirrors_splitter(m in 0usize..=6, n in 0usize..=6, eta in 0.05f64..0.95) {
        let t = (1.0 - eta * eta).sqrt();
        let a = fusion_distribution(m, n, eta).unwrap();
        let b = fusion_distribution(n, m, t).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn chains_are_reproducible(seed in 0u64..1000) {
        let st = FusionStrategy::new(StrategyKind::Random, 8);
        let a = run_strategy(&st, 500, &mut loqc_fock::rng::stream(seed, 0), true).unwrap();
        let b = run_strategy(&st, 500, &mut loqc_fock::rng::stream(seed, 0), true).unwrap();
        prop_assert_eq!(a, b);
    }
}
