//! Solver and verification toolkit for the last-success stopping problem:
//! `n` independent Bernoulli trials are observed one at a time and the goal
//! is to stop exactly on the final success.
//!
//! The optimal rule is a threshold rule: stop on the first success at index
//! `>= s`, where `s` is the largest `k` whose suffix odds sum
//! `R_k = Σ_{i=k..n} p_i/(1-p_i)` is at least 1.  This crate computes that
//! rule and its value, the values of two game variants (replay-on-all-zeros
//! and predict-no-successes), the full catalog of closed-form lower bounds
//! with case classification, and three independent verification engines:
//! exhaustive enumeration, backward-induction dynamic programming, and
//! seeded Monte Carlo simulation.

pub mod bounds;
pub mod error;
pub mod instance;
pub mod montecarlo;
pub mod oracle;
pub mod solver;
pub mod stats;

pub use bounds::{BoundEntry, BoundReport, CaseLabel};
pub use error::{Error, Result};
pub use instance::ProblemInstance;
pub use montecarlo::{Game, SimulationConfig, SimulationResult};
pub use oracle::{DpSolution, SweepResult, Verdict};
pub use solver::{HomogeneousSpec, MalCounterexample, MalThreshold, Solution, Variant2Decision};
pub use stats::SuffixStats;
