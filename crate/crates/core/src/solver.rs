use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::oracle;
use crate::stats::SuffixStats;

/// How to open Variant II: keep playing the standard game, or bet up front
/// that every trial comes up 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant2Decision {
    PlayStandard,
    PredictNoOnes,
    Indifferent,
}

impl Variant2Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant2Decision::PlayStandard => "play_standard",
            Variant2Decision::PredictNoOnes => "predict_no_ones",
            Variant2Decision::Indifferent => "indifferent",
        }
    }
}

/// Full solution of one instance: optimal threshold and value of the standard
/// game plus the values of both variants.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Optimal threshold `s`: stop on the first success at index `>= s`.
    pub threshold: usize,
    /// Win probability `V` of the standard game under the optimal rule.
    pub value: f64,
    /// True when `p_s = 1` (the `R_s = ∞` case).
    pub threshold_prob_is_one: bool,
    /// `V*`: win probability when all-zero rounds are replayed.
    pub variant1_value: f64,
    /// `V**`: win probability when the player may instead predict no successes.
    pub variant2_value: f64,
    pub variant2_decision: Variant2Decision,
    /// `R_1`, the full odds sum.
    pub r1: f64,
    /// `R_s`, the odds sum from the threshold on (`+∞` when `p_s = 1`).
    pub rs: f64,
}

/// Largest `k` with `R_k >= 1`, or 1 when `R_1 < 1`.
///
/// The comparison is exact: a tie at `R_k = 1` is meaningful (it is the
/// indifference case of Variant II) and epsilon fuzz would silently move `s`.
/// An infinite `R_k` counts as `>= 1`.
pub fn optimal_threshold(stats: &SuffixStats) -> usize {
    for k in (1..=stats.n()).rev() {
        if stats.suffix_odds_sum(k) >= 1.0 {
            return k;
        }
    }
    1
}

/// Win probability of the optimal rule with threshold `s`.
///
/// `V = Q_s · R_s` when `p_s < 1`; when `p_s = 1` the product would be the
/// indeterminate `0 · ∞` and the value is `Q_{s+1}` instead (stopping on the
/// certain success wins exactly when everything after it is 0).
pub fn win_probability(stats: &SuffixStats, s: usize) -> Result<f64> {
    let n = stats.n();
    if s < 1 || s > n {
        return Err(Error::ThresholdMismatch { threshold: s, n });
    }
    if stats.prob_is_one(s) {
        Ok(stats.suffix_survival(s + 1))
    } else {
        Ok(stats.suffix_survival(s) * stats.suffix_odds_sum(s))
    }
}

/// `V*`: the standard value conditioned on at least one success.
///
/// With a certain trial present the game never repeats, so `V* = V`.
/// Otherwise `V* = V / (1 - Q_1)`, with the denominator evaluated in log
/// space (`-expm1(ln Q_1)`) so instances with all-tiny probabilities do not
/// lose the conditioning mass to cancellation.
pub fn variant1_value(stats: &SuffixStats, value: f64) -> Result<f64> {
    if stats.suffix_odds_sum(1).is_infinite() {
        return Ok(value);
    }
    let one_minus_q1 = -f64::exp_m1(stats.log_suffix_survival(1));
    if one_minus_q1 < 1e-12 {
        return Err(Error::DegenerateConditioning { one_minus_q1 });
    }
    Ok(value / one_minus_q1)
}

/// Variant II decision and value: `V** = max(Q_1, V)`.
pub fn variant2_decide(stats: &SuffixStats, value: f64) -> (Variant2Decision, f64) {
    let r1 = stats.suffix_odds_sum(1);
    let q1 = stats.suffix_survival(1);
    let decision = if r1 > 1.0 {
        Variant2Decision::PlayStandard
    } else if r1 < 1.0 {
        Variant2Decision::PredictNoOnes
    } else {
        Variant2Decision::Indifferent
    };
    (decision, q1.max(value))
}

/// Solve an instance: threshold, `V`, `V*`, `V**` and the Variant II decision.
/// Pure function of the input probabilities.
pub fn solve(inst: &ProblemInstance) -> Result<Solution> {
    let stats = SuffixStats::from_instance(inst);
    solve_with_stats(&stats)
}

pub fn solve_with_stats(stats: &SuffixStats) -> Result<Solution> {
    let s = optimal_threshold(stats);
    let value = win_probability(stats, s)?;
    let variant1_value = variant1_value(stats, value)?;
    let (variant2_decision, variant2_value) = variant2_decide(stats, value);
    Ok(Solution {
        threshold: s,
        value,
        threshold_prob_is_one: stats.prob_is_one(s),
        variant1_value,
        variant2_value,
        variant2_decision,
        r1: stats.suffix_odds_sum(1),
        rs: stats.suffix_odds_sum(s),
    })
}

/// The all-equal game `G(p,...,p)` with `p < 1`, plus `m = ⌈1/p⌉`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousSpec {
    p: f64,
    n: usize,
    m: usize,
}

impl HomogeneousSpec {
    pub fn new(p: f64, n: usize) -> Result<Self> {
        if !p.is_finite() || p <= 0.0 || p >= 1.0 {
            return Err(Error::OutOfRange { index: 1, value: p });
        }
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        let m = (1.0 / p).ceil() as usize;
        Ok(Self { p, n, m })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `⌈1/p⌉`; at least 2 since `p < 1`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn instance(&self) -> ProblemInstance {
        ProblemInstance::homogeneous(self.p, self.n).expect("validated in new")
    }
}

/// Closed-form solution of the homogeneous game.
///
/// If `n >= m - 1` the threshold is `s = n - m + 2` and
/// `V = p (m-1) (1-p)^{m-2}`; otherwise `s = 1` and `V = n p (1-p)^{n-1}`.
/// The aggregates are accumulated the same way `SuffixStats` does so the
/// result agrees with `solve` on the expanded instance to the last bit.
pub fn homogeneous_solve(spec: &HomogeneousSpec) -> Result<Solution> {
    let (p, n, m) = (spec.p, spec.n, spec.m);
    let q = 1.0 - p;
    let r = p / q;
    let s = if n >= m - 1 { n + 2 - m } else { 1 };
    // tail length n - s + 1 is m - 1 in the first case, n in the second
    let tail = n - s + 1;
    let mut qs = 1.0;
    let mut rs = 0.0;
    for _ in 0..tail {
        qs *= q;
        rs += r;
    }
    let value = qs * rs;
    let mut q1 = qs;
    let mut r1 = rs;
    for _ in tail..n {
        q1 *= q;
        r1 += r;
    }
    let one_minus_q1 = -f64::exp_m1((n as f64) * q.ln());
    if one_minus_q1 < 1e-12 {
        return Err(Error::DegenerateConditioning { one_minus_q1 });
    }
    let variant1_value = value / one_minus_q1;
    let variant2_decision = if r1 > 1.0 {
        Variant2Decision::PlayStandard
    } else if r1 < 1.0 {
        Variant2Decision::PredictNoOnes
    } else {
        Variant2Decision::Indifferent
    };
    Ok(Solution {
        threshold: s,
        value,
        threshold_prob_is_one: false,
        variant1_value,
        variant2_value: q1.max(value),
        variant2_decision,
        r1,
        rs,
    })
}

/// The literature's floor-formula threshold estimate for the homogeneous game,
/// `s* = ⌊n + 1 + 1/ln(1-p) + 1/2⌋`, reported raw and clamped to `[1, n]`.
/// It is a good estimate of `s` but not always equal to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MalThreshold {
    pub raw: i64,
    pub clamped: usize,
}

pub fn mal_threshold(spec: &HomogeneousSpec) -> MalThreshold {
    let raw = (spec.n as f64 + 1.0 + 1.0 / (1.0 - spec.p).ln() + 0.5).floor() as i64;
    let clamped = raw.clamp(1, spec.n as i64) as usize;
    MalThreshold { raw, clamped }
}

/// A grid point where the floor estimate disagrees with the true threshold,
/// annotated with the threshold-rule values of both so the suboptimality of
/// `s*` is visible.
#[derive(Debug, Clone, PartialEq)]
pub struct MalCounterexample {
    pub p: f64,
    pub n: usize,
    pub s: usize,
    pub s_star: usize,
    pub value_at_s: f64,
    pub value_at_s_star: f64,
}

pub fn find_mal_counterexamples(
    p_grid: &[f64],
    n_grid: &[usize],
) -> Result<Vec<MalCounterexample>> {
    let mut hits = Vec::new();
    for &p in p_grid {
        for &n in n_grid {
            let spec = HomogeneousSpec::new(p, n)?;
            let s = homogeneous_solve(&spec)?.threshold;
            let s_star = mal_threshold(&spec).clamped;
            if s != s_star {
                let sweep = oracle::threshold_sweep(&spec.instance())?;
                hits.push(MalCounterexample {
                    p,
                    n,
                    s,
                    s_star,
                    value_at_s: sweep.values[s - 1],
                    value_at_s_star: sweep.values[s_star - 1],
                });
            }
        }
    }
    Ok(hits)
}

/// Append the auxiliary trial `p_{n+1} = 1/⌈1/𝔭⌉` where `𝔭` is the minimum
/// probability in the threshold tail `s..=n`.  The appended parameter never
/// exceeds `𝔭`; when `R_s >= 1` the extended game's value never exceeds the
/// original's (for `R_1 < 1` the extra trial can genuinely help).
pub fn extend_game(inst: &ProblemInstance, s: usize) -> Result<ProblemInstance> {
    let n = inst.n();
    if s < 1 || s > n {
        return Err(Error::ThresholdMismatch { threshold: s, n });
    }
    let tail_min = inst.tail_min(s);
    if tail_min >= 1.0 {
        return Err(Error::TailContainsCertainty);
    }
    let appended = 1.0 / (1.0 / tail_min).ceil();
    let mut probs = inst.probs().to_vec();
    probs.push(appended);
    ProblemInstance::new(probs)
}
