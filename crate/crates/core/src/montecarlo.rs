//! Seeded simulation of all three games.
//!
//! Per-replicate randomness is a pure function of `(master_seed,
//! replicate_index)`: each replicate owns a ChaCha stream selected by its
//! index.  Parallel and serial runs therefore produce identical tallies, and
//! the merge across workers is plain integer addition of win counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::oracle;
use crate::solver;
use crate::stats::SuffixStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Game {
    Standard,
    VariantI,
    VariantII,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub replicates: u64,
    pub master_seed: u64,
    pub game: Game,
    /// Simulate a (possibly suboptimal) threshold instead of the optimal one.
    pub threshold_override: Option<usize>,
    /// Variant I resampling cap per replicate.
    pub max_rejection_attempts: u64,
}

impl SimulationConfig {
    pub fn new(replicates: u64, master_seed: u64, game: Game) -> Self {
        Self {
            replicates,
            master_seed,
            game,
            threshold_override: None,
            max_rejection_attempts: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub wins: u64,
    pub replicates: u64,
    pub frequency: f64,
    /// `sqrt(f(1-f)/replicates)`.
    pub std_error: f64,
    /// Exact value of the simulated quantity, from the solver/sweep.
    pub exact: f64,
    pub z_score: f64,
    pub seed_echo: u64,
    /// Replicates whose Variant I resampling loop hit the attempt cap; such
    /// replicates count as losses and are flagged here rather than dropped.
    pub rejection_cap_hits: u64,
}

fn replicate_rng(master_seed: u64, replicate: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(replicate);
    rng
}

/// Successes in `k..=n` for one drawn outcome; the threshold rule wins
/// exactly when this count is 1.
fn suffix_success_count(rng: &mut ChaCha8Rng, probs: &[f64], k: usize) -> (u32, u32) {
    let mut total = 0u32;
    let mut suffix = 0u32;
    for (i, &p) in probs.iter().enumerate() {
        if rng.gen::<f64>() < p {
            total += 1;
            if i + 1 >= k {
                suffix += 1;
            }
        }
    }
    (total, suffix)
}

fn tally(result: (u64, u64), other: (u64, u64)) -> (u64, u64) {
    (result.0 + other.0, result.1 + other.1)
}

/// Simulate one game at a fixed threshold; deterministic for a fixed
/// `(instance, config)`.
pub fn simulate(inst: &ProblemInstance, cfg: &SimulationConfig) -> Result<SimulationResult> {
    let stats = SuffixStats::from_instance(inst);
    let sol = solver::solve_with_stats(&stats)?;
    let n = inst.n();
    let k = cfg.threshold_override.unwrap_or(sol.threshold);
    if k < 1 || k > n {
        return Err(Error::ThresholdMismatch { threshold: k, n });
    }
    let r1 = stats.suffix_odds_sum(1);

    let exact = match cfg.game {
        Game::Standard => threshold_value(inst, &stats, k)?,
        Game::VariantI => {
            // Degeneracy check applies whenever the game can actually repeat.
            solver::variant1_value(&stats, threshold_value(inst, &stats, k)?)?
        }
        Game::VariantII => {
            if r1 >= 1.0 {
                threshold_value(inst, &stats, k)?
            } else {
                stats.suffix_survival(1)
            }
        }
    };

    let probs = inst.probs();
    let cap = cfg.max_rejection_attempts.max(1);
    let (wins, cap_hits) = (0..cfg.replicates)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replicate_rng(cfg.master_seed, rep);
            match cfg.game {
                Game::Standard => {
                    let (_, suffix) = suffix_success_count(&mut rng, probs, k);
                    ((suffix == 1) as u64, 0u64)
                }
                Game::VariantI => {
                    for _ in 0..cap {
                        let (total, suffix) = suffix_success_count(&mut rng, probs, k);
                        if total > 0 {
                            return ((suffix == 1) as u64, 0);
                        }
                    }
                    (0, 1)
                }
                Game::VariantII => {
                    if r1 >= 1.0 {
                        let (_, suffix) = suffix_success_count(&mut rng, probs, k);
                        ((suffix == 1) as u64, 0)
                    } else {
                        let (total, _) = suffix_success_count(&mut rng, probs, 1);
                        ((total == 0) as u64, 0)
                    }
                }
            }
        })
        .reduce(|| (0, 0), tally);

    Ok(finish(wins, cfg, exact, cap_hits))
}

/// Exact value of the threshold rule `k` (not necessarily the optimal one).
fn threshold_value(inst: &ProblemInstance, stats: &SuffixStats, k: usize) -> Result<f64> {
    let r = stats.suffix_odds_sum(k);
    if r.is_finite() {
        Ok(stats.suffix_survival(k) * r)
    } else {
        oracle::enumerate_value(inst, k)
    }
}

fn finish(wins: u64, cfg: &SimulationConfig, exact: f64, cap_hits: u64) -> SimulationResult {
    let reps = cfg.replicates;
    let frequency = wins as f64 / reps as f64;
    let std_error = (frequency * (1.0 - frequency) / reps as f64).sqrt();
    let z_score = if std_error > 0.0 {
        (frequency - exact) / std_error
    } else {
        0.0
    };
    SimulationResult {
        wins,
        replicates: reps,
        frequency,
        std_error,
        exact,
        z_score,
        seed_echo: cfg.master_seed,
        rejection_cap_hits: cap_hits,
    }
}

/// One standard-game simulation per threshold `k = 1..n`, all thresholds
/// evaluated on the *same* drawn outcomes per replicate (common random
/// numbers), so the empirical argmax is low-variance.
pub fn simulate_sweep(
    inst: &ProblemInstance,
    cfg: &SimulationConfig,
) -> Result<Vec<SimulationResult>> {
    let n = inst.n();
    let exact = oracle::threshold_sweep(inst)?;
    let probs = inst.probs();

    let wins = (0..cfg.replicates)
        .into_par_iter()
        .fold(
            || vec![0u64; n],
            |mut acc, rep| {
                let mut rng = replicate_rng(cfg.master_seed, rep);
                // Threshold k wins iff [k, n] holds exactly one success,
                // i.e. second_last < k <= last.
                let mut last = 0usize;
                let mut second_last = 0usize;
                for (i, &p) in probs.iter().enumerate() {
                    if rng.gen::<f64>() < p {
                        second_last = last;
                        last = i + 1;
                    }
                }
                for k in second_last + 1..=last {
                    acc[k - 1] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );

    Ok(wins
        .into_iter()
        .enumerate()
        .map(|(idx, w)| finish(w, cfg, exact.values[idx], 0))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(p: &[f64]) -> ProblemInstance {
        ProblemInstance::new(p.to_vec()).unwrap()
    }

    #[test]
    fn reproducible_bit_identical() {
        let i = inst(&[0.4, 0.6, 0.2]);
        let cfg = SimulationConfig::new(20_000, 7, Game::Standard);
        let a = simulate(&i, &cfg).unwrap();
        let b = simulate(&i, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn standard_fair_pair_within_band() {
        let i = inst(&[0.5, 0.5]);
        let cfg = SimulationConfig::new(100_000, 42, Game::Standard);
        let r = simulate(&i, &cfg).unwrap();
        assert_eq!(r.exact, 0.5);
        assert!(r.z_score.abs() <= 4.0, "z = {}", r.z_score);
    }

    #[test]
    fn variant1_conditioning_band() {
        let i = inst(&[0.5, 0.5]);
        let cfg = SimulationConfig::new(100_000, 42, Game::VariantI);
        let r = simulate(&i, &cfg).unwrap();
        assert!((r.exact - 2.0 / 3.0).abs() < 1e-15);
        assert!(r.z_score.abs() <= 4.0, "z = {}", r.z_score);
        assert_eq!(r.rejection_cap_hits, 0);
    }

    #[test]
    fn variant2_predict_band() {
        let i = inst(&[0.1, 0.1]);
        let cfg = SimulationConfig::new(100_000, 42, Game::VariantII);
        let r = simulate(&i, &cfg).unwrap();
        assert!((r.exact - 0.81).abs() < 1e-15);
        assert!(r.z_score.abs() <= 4.0, "z = {}", r.z_score);
    }

    #[test]
    fn threshold_override_uses_suboptimal_rule() {
        let i = inst(&[0.33; 10]);
        let mut cfg = SimulationConfig::new(50_000, 11, Game::Standard);
        cfg.threshold_override = Some(9);
        let r = simulate(&i, &cfg).unwrap();
        assert!((r.exact - 0.4422).abs() < 1e-6);
        assert!(r.z_score.abs() <= 4.5, "z = {}", r.z_score);
    }

    #[test]
    fn override_out_of_range() {
        let i = inst(&[0.5, 0.5]);
        let mut cfg = SimulationConfig::new(10, 1, Game::Standard);
        cfg.threshold_override = Some(3);
        assert!(matches!(
            simulate(&i, &cfg),
            Err(Error::ThresholdMismatch { threshold: 3, n: 2 })
        ));
    }

    #[test]
    fn sweep_single_trial() {
        let i = inst(&[0.3]);
        let cfg = SimulationConfig::new(100_000, 5, Game::Standard);
        let rs = simulate_sweep(&i, &cfg).unwrap();
        assert_eq!(rs.len(), 1);
        assert!((rs[0].exact - 0.3).abs() < 1e-15);
        assert!(rs[0].z_score.abs() <= 4.0);
    }

    #[test]
    fn sweep_shares_randomness_with_tie() {
        let i = inst(&[0.5, 0.5]);
        let cfg = SimulationConfig::new(50_000, 9, Game::Standard);
        let rs = simulate_sweep(&i, &cfg).unwrap();
        for r in &rs {
            assert!((r.exact - 0.5).abs() < 1e-15);
            assert!(r.z_score.abs() <= 4.0, "z = {}", r.z_score);
        }
    }
}
