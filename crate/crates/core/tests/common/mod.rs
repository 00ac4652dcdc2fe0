// shared by several integration-test binaries; not every binary uses
// every helper
#![allow(dead_code)]

use last_success::ProblemInstance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random instance with `n` uniform in `1..=max_n` and `p_i ~ U(0,1)`;
/// when `certainty_rate > 0`, each entry is forced to 1 with that rate.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, certainty_rate: f64) -> ProblemInstance {
    let n = rng.gen_range(1..=max_n);
    let probs: Vec<f64> = (0..n)
        .map(|_| {
            if certainty_rate > 0.0 && rng.gen::<f64>() < certainty_rate {
                1.0
            } else {
                rng.gen_range(1e-9..1.0)
            }
        })
        .collect();
    ProblemInstance::new(probs).unwrap()
}

/// Instance kept away from both degeneracies: all `p_i` in `[lo, hi]`
/// with `hi < 1`, for strict-ordering assertions.
pub fn bounded_instance(rng: &mut ChaCha8Rng, max_n: usize, lo: f64, hi: f64) -> ProblemInstance {
    let n = rng.gen_range(1..=max_n);
    let probs: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
    ProblemInstance::new(probs).unwrap()
}
