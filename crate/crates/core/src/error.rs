use thiserror::Error;

/// Errors across the solver, bounds, oracle and simulation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("instance has no entries")]
    EmptyInstance,

    #[error("probability out of range at index {index}: {value} (must lie in (0, 1])")]
    OutOfRange { index: usize, value: f64 },

    #[error("threshold {threshold} outside [1, {n}]")]
    ThresholdMismatch { threshold: usize, n: usize },

    #[error("tail minimum is 1; game extension requires p_s < 1")]
    TailContainsCertainty,

    #[error("conditioning on at least one success is numerically meaningless (1 - Q_1 = {one_minus_q1:e})")]
    DegenerateConditioning { one_minus_q1: f64 },

    #[error("n = {n} exceeds the exhaustive enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("lower bound `{name}` = {bound} exceeds its target {target}")]
    BoundViolation {
        name: &'static str,
        bound: f64,
        target: f64,
    },

    #[error("lemma domain violated: {0}")]
    DomainViolation(String),

    #[error("oracle mismatch: {0}")]
    Mismatch(String),

    #[error("rejection-sampling cap {cap} exhausted in replicate {replicate}")]
    RejectionCapExceeded { replicate: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
