use crate::error::{Error, Result};
use crate::instance::ProblemInstance;
use crate::solver::Solution;
use crate::stats::SuffixStats;

/// Which regime the instance falls into; exactly one applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    /// `p_s = 1`, so `R_s = ∞`.
    RsInfinite,
    /// `1 <= R_s < ∞`.
    RsAtLeastOneFinite,
    /// `R_1 < 1` (and therefore `s = 1`, `R_s = R_1`).
    R1BelowOne,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::RsInfinite => "Rs_Infinite",
            CaseLabel::RsAtLeastOneFinite => "Rs_AtLeastOne_Finite",
            CaseLabel::R1BelowOne => "R1_BelowOne",
        }
    }
}

/// One named lower bound together with its distance from the target value.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub value: f64,
    /// `target - value`; non-negative up to solver slack.
    pub gap: f64,
}

/// Every lower bound applicable to an instance, split into bounds on the
/// standard value `V` and bounds on the Variant I value `V*`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub case_label: CaseLabel,
    pub standard_bounds: Vec<BoundEntry>,
    pub variant1_bounds: Vec<BoundEntry>,
    /// `𝔭 = min{p_i : s <= i <= n}`.
    pub tail_min: f64,
}

/// Solver-level slack for "bound <= value" checks.
pub const BOUND_SLACK: f64 = 1e-12;

fn entry(name: &'static str, value: f64, target: f64) -> Result<BoundEntry> {
    if value > target + BOUND_SLACK {
        return Err(Error::BoundViolation {
            name,
            bound: value,
            target,
        });
    }
    Ok(BoundEntry {
        name,
        value,
        gap: target - value,
    })
}

/// Classify the instance and evaluate every lower bound on `V`.
///
/// A `BoundViolation` from here means a bug in the solver or in a bound
/// expression, never legitimate input behavior.
pub fn classify_and_bound(
    sol: &Solution,
    stats: &SuffixStats,
    inst: &ProblemInstance,
) -> Result<BoundReport> {
    let n = inst.n();
    let s = sol.threshold;
    let v = sol.value;
    let tail_min = inst.tail_min(s);
    let mut standard = Vec::new();

    let case_label = if sol.rs.is_infinite() {
        let t = (n - s) as f64;
        let r_next = stats.suffix_odds_sum(s + 1);
        let inf_case = if n == s {
            1.0
        } else {
            (t / (t + r_next)).powi((n - s) as i32)
        };
        standard.push(entry("inf_case", inf_case, v)?);
        CaseLabel::RsInfinite
    } else if sol.rs >= 1.0 {
        let m = (1.0 / tail_min).ceil();
        standard.push(entry("mas1", (1.0 - 1.0 / m).powi(m as i32 - 1), v)?);
        standard.push(entry("bruss_exp", sol.rs * (-sol.rs).exp(), v)?);
        standard.push(entry("one_over_e", (-1.0f64).exp(), v)?);
        CaseLabel::RsAtLeastOneFinite
    } else {
        let r1 = sol.r1;
        let nf = n as f64;
        standard.push(entry(
            "menos1_finite",
            r1 * (nf / (nf + r1)).powi(n as i32),
            v,
        )?);
        standard.push(entry("menos1_exp", r1 * (-r1).exp(), v)?);
        CaseLabel::R1BelowOne
    };

    Ok(BoundReport {
        case_label,
        standard_bounds: standard,
        variant1_bounds: Vec::new(),
        tail_min,
    })
}

/// Evaluate the Variant I bounds and append them to a report.
///
/// Only meaningful when every `p_i < 1` (otherwise Variant I coincides with
/// the standard game and the section stays empty).
pub fn variant1_bound(sol: &Solution, stats: &SuffixStats, report: &mut BoundReport) -> Result<()> {
    if stats.suffix_odds_sum(1).is_infinite() {
        return Ok(());
    }
    let v_star = sol.variant1_value;
    let n = stats.n() as f64;
    let r1 = sol.r1;
    if r1 < 1.0 {
        let pow = (n / (n + r1)).powi(stats.n() as i32);
        report
            .variant1_bounds
            .push(entry("v1_low_finite", r1 * pow / (1.0 - pow), v_star)?);
        report
            .variant1_bounds
            .push(entry("v1_low_exp", r1 / f64::exp_m1(r1), v_star)?);
        report
            .variant1_bounds
            .push(entry("v1_floor", 1.0 / f64::exp_m1(1.0), v_star)?);
    } else {
        let rs = sol.rs;
        let v1_high = 1.0 / (std::f64::consts::E * -f64::exp_m1(-rs));
        report
            .variant1_bounds
            .push(entry("v1_high", v1_high, v_star)?);
    }
    Ok(())
}

/// Solve-and-bound in one call: standard section always, Variant I section
/// when no trial is certain.
pub fn full_report(inst: &ProblemInstance) -> Result<(Solution, BoundReport)> {
    let stats = SuffixStats::from_instance(inst);
    let sol = crate::solver::solve_with_stats(&stats)?;
    let mut report = classify_and_bound(&sol, &stats, inst)?;
    variant1_bound(&sol, &stats, &mut report)?;
    Ok((sol, report))
}

/// The equal-parameter configuration `x_i = R/(R+n)` at which the Lagrange
/// arguments behind the bounds attain them.  `lead_certainties` prepends that
/// many certain trials, for exercising the `R_s = ∞` case with the extremal
/// tail starting at `s + 1`.
pub fn minimizer_instance(r: f64, n: usize, lead_certainties: usize) -> Result<ProblemInstance> {
    if r <= 0.0 || !r.is_finite() {
        return Err(Error::OutOfRange { index: 1, value: r });
    }
    let x = r / (r + n as f64);
    let mut probs = vec![1.0; lead_certainties];
    probs.extend(std::iter::repeat_n(x, n));
    ProblemInstance::new(probs)
}

/// LHS of the first preparatory inequality:
/// `(1-p)·((p/(1-p)) + X)/X <= 1` for `p ∈ (0,1)`, `X >= 1`.
/// Returns whether it holds with `1e-15` slack.
pub fn lemma_menor1_holds(p: f64, x: f64) -> bool {
    let lhs = (1.0 - p) * (p / (1.0 - p) + x) / x;
    lhs <= 1.0 + 1e-15
}

/// LHS of the second preparatory inequality:
/// `((1-p)/(1-P))·((p/(1-p)) + X - P/(1-P))/X <= 1`
/// for `p < P` in `(0,1)` and `1 <= X <= 1/(1-P)`.
pub fn lemma_menor2_holds(p: f64, big_p: f64, x: f64) -> Result<bool> {
    if !(p > 0.0 && p < 1.0 && big_p > 0.0 && big_p < 1.0 && p < big_p) {
        return Err(Error::DomainViolation(format!(
            "need 0 < p < P < 1, got p = {p}, P = {big_p}"
        )));
    }
    if !(x >= 1.0 && x <= 1.0 / (1.0 - big_p)) {
        return Err(Error::DomainViolation(format!(
            "need 1 <= X <= 1/(1-P), got X = {x}, 1/(1-P) = {}",
            1.0 / (1.0 - big_p)
        )));
    }
    let lhs = (1.0 - p) / (1.0 - big_p) * (p / (1.0 - p) + x - big_p / (1.0 - big_p)) / x;
    Ok(lhs <= 1.0 + 1e-15)
}
