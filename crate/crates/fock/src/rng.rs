//! Reproducible random streams.
//!
//! A root seed plus a stream index selects an independent ChaCha8 keystream,
//! so trial `k` draws the same numbers regardless of thread scheduling.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
