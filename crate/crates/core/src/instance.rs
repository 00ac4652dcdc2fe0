use crate::error::{Error, Result};

/// A validated sequence of success probabilities `p_1..p_n`.
///
/// Every entry lies in `(0, 1]`.  Zero probabilities are rejected rather than
/// skipped: a silently dropped inert trial would shift indices in every report
/// downstream.  `p_i = 1` is allowed and drives the `R_s = ∞` case.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    probs: Vec<f64>,
}

impl ProblemInstance {
    pub fn new(raw: impl Into<Vec<f64>>) -> Result<Self> {
        let probs = raw.into();
        if probs.is_empty() {
            return Err(Error::EmptyInstance);
        }
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() || p <= 0.0 || p > 1.0 {
                return Err(Error::OutOfRange {
                    index: i + 1,
                    value: p,
                });
            }
        }
        Ok(Self { probs })
    }

    /// `n` equal trials with parameter `p`.
    pub fn homogeneous(p: f64, n: usize) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn n(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// 1-based access, matching the index convention used throughout.
    pub fn prob(&self, i: usize) -> f64 {
        self.probs[i - 1]
    }

    pub fn has_certain_trial(&self) -> bool {
        self.probs.contains(&1.0)
    }

    /// Smallest probability among trials `s..=n`.
    pub fn tail_min(&self, s: usize) -> f64 {
        self.probs[s - 1..]
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}
