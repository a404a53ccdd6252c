//! Prints pooled r(d) for each strategy: `rate_scan [steps] [chains]`.
use loqc_fusion::{run_ensemble, FusionStrategy, StrategyKind};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let steps = args.next().unwrap_or(1_000_000);
    let chains = args.next().unwrap_or(16);
    for kind in [StrategyKind::Balanced, StrategyKind::Frugal, StrategyKind::Modesty, StrategyKind::Random] {
        for d in [8usize, 16, 32, 64] {
            let r = run_ensemble(&FusionStrategy::new(kind, d), steps, chains, 7).expect("valid strategy");
            println!("{kind:?}\td={d}\tr={:.3e}\t[{:.3e}, {:.3e}]\tharvested={}", r.rate, r.lo, r.hi, r.harvested);
        }
    }
}
