//! Independent ground-truth engines for validating the closed-form solver:
//! exhaustive outcome enumeration, backward-induction dynamic programming
//! over all adapted stopping rules, and a sweep over every threshold rule.
//! None of them share arithmetic with `solver::win_probability` beyond the
//! shared suffix aggregates.

use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::solver::{self, Solution};
use crate::stats::SuffixStats;

/// Largest `n` accepted by `enumerate_value` (2^n outcomes).
pub const ENUMERATION_CAP: usize = 24;

/// Win probability of the threshold rule "stop on the first success at index
/// `>= k`", computed by summing over all `2^n` outcome vectors.
///
/// A run wins exactly when the suffix `k..=n` contains a single success: the
/// rule stops on it and nothing later overrides it.  Compensated summation
/// keeps the accumulation honest for 1e-12 comparisons.
pub fn enumerate_value(inst: &ProblemInstance, k: usize) -> Result<f64> {
    let n = inst.n();
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if k < 1 || k > n {
        return Err(Error::ThresholdMismatch { threshold: k, n });
    }
    let probs = inst.probs();
    let suffix_shift = (k - 1) as u32;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for mask in 0u64..(1u64 << n) {
        if (mask >> suffix_shift).count_ones() != 1 {
            continue;
        }
        let mut prob = 1.0;
        for (i, &p) in probs.iter().enumerate() {
            prob *= if mask & (1 << i) != 0 { p } else { 1.0 - p };
        }
        // Kahan step
        let y = prob - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(sum)
}

/// Optimal value over *all* adapted stopping rules, by backward induction,
/// plus the set of indices where stopping on a success is optimal.
#[derive(Debug, Clone, PartialEq)]
pub struct DpSolution {
    pub value: f64,
    /// Indices `i` with `Q_{i+1} >= w_{i+1}`: stopping on a success there is
    /// at least as good as continuing.  Ties prefer stopping, mirroring the
    /// `>=` in the threshold definition; tied indices are listed too.
    pub stop_set: Vec<usize>,
}

/// Backward induction: `w_{n+1} = 0`,
/// `w_i = p_i · max(Q_{i+1}, w_{i+1}) + (1 - p_i) · w_{i+1}`.
pub fn dp_optimal(inst: &ProblemInstance) -> DpSolution {
    let n = inst.n();
    let stats = SuffixStats::from_instance(inst);
    let mut w_next = 0.0f64;
    let mut stop_set = Vec::new();
    for i in (1..=n).rev() {
        let p = inst.prob(i);
        let q_next = stats.suffix_survival(i + 1);
        if q_next >= w_next {
            stop_set.push(i);
        }
        w_next = p * q_next.max(w_next) + (1.0 - p) * w_next;
    }
    stop_set.reverse();
    DpSolution {
        value: w_next,
        stop_set,
    }
}

/// Values of every threshold rule `k = 1..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub values: Vec<f64>,
    /// All maximizers, with ties admitted at 1e-12 absolute-relative slack.
    pub argmax_set: Vec<usize>,
    pub best_value: f64,
}

/// Evaluate `V(k) = Q_k · R_k` for every `k` whose tail has no certain trial;
/// thresholds whose tail does contain a `p_i = 1` fall back to enumeration
/// (only possible for `n <= 24`).
pub fn threshold_sweep(inst: &ProblemInstance) -> Result<SweepResult> {
    let n = inst.n();
    let stats = SuffixStats::from_instance(inst);
    let mut values = Vec::with_capacity(n);
    for k in 1..=n {
        let r = stats.suffix_odds_sum(k);
        if r.is_finite() {
            values.push(stats.suffix_survival(k) * r);
        } else {
            values.push(enumerate_value(inst, k)?);
        }
    }
    let best_value = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let slack = 1e-12 * best_value.max(1.0);
    let argmax_set = (1..=n)
        .filter(|&k| values[k - 1] >= best_value - slack)
        .collect();
    Ok(SweepResult {
        values,
        argmax_set,
        best_value,
    })
}

/// Agreement record produced by `cross_validate`.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub solution: Solution,
    pub dp_value: f64,
    pub dp_delta: f64,
    pub sweep_best: f64,
    pub sweep_argmax: Vec<usize>,
    /// Enumeration at the solver's threshold; `None` when `n > 24`.
    pub enumeration_value: Option<f64>,
    pub enumeration_delta: Option<f64>,
}

/// Run every engine against the closed-form solver and demand agreement:
/// the DP value within 1e-12 relative, the solver threshold inside the sweep
/// argmax, and (for `n <= 24`) the enumerated value of the optimal rule.
pub fn cross_validate(inst: &ProblemInstance) -> Result<Verdict> {
    let solution = solver::solve(inst)?;
    let dp = dp_optimal(inst);
    let sweep = threshold_sweep(inst)?;
    let tol = 1e-12 * solution.value.max(1.0);

    let dp_delta = (dp.value - solution.value).abs();
    if dp_delta > tol {
        return Err(Error::Mismatch(format!(
            "dp value {} vs solver V {} (delta {:e}) on p = {:?}",
            dp.value,
            solution.value,
            dp_delta,
            inst.probs()
        )));
    }
    if !sweep.argmax_set.contains(&solution.threshold) {
        return Err(Error::Mismatch(format!(
            "solver s = {} not in sweep argmax {:?} (values {:?}) on p = {:?}",
            solution.threshold,
            sweep.argmax_set,
            sweep.values,
            inst.probs()
        )));
    }
    let (enumeration_value, enumeration_delta) = if inst.n() <= ENUMERATION_CAP {
        let e = enumerate_value(inst, solution.threshold)?;
        let delta = (e - solution.value).abs();
        if delta > tol {
            return Err(Error::Mismatch(format!(
                "enumeration {} vs solver V {} (delta {:e}) on p = {:?}",
                e,
                solution.value,
                delta,
                inst.probs()
            )));
        }
        (Some(e), Some(delta))
    } else {
        (None, None)
    };

    Ok(Verdict {
        solution,
        dp_value: dp.value,
        dp_delta,
        sweep_best: sweep.best_value,
        sweep_argmax: sweep.argmax_set,
        enumeration_value,
        enumeration_delta,
    })
}
