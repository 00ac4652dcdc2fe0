use crate::instance::ProblemInstance;

/// Per-index odds and suffix aggregates for an instance.
///
/// For `p = (p_1..p_n)` this holds
///   `r_i = p_i / (1 - p_i)`            (`+∞` when `p_i = 1`),
///   `R_k = Σ_{i=k..n} r_i`             (`R_{n+1} = 0`),
///   `Q_k = Π_{i=k..n} (1 - p_i)`       (`Q_{n+1} = 1`),
///   `log Q_k = Σ_{i=k..n} ln(1 - p_i)` (`-∞` past a certain trial).
///
/// `R` and `Q` are accumulated by descending index, so results are
/// bit-deterministic for identical input bits.  The log-space survival is
/// carried alongside the linear one so near-1 products can be detected
/// reliably (Variant I conditioning).
#[derive(Debug, Clone, PartialEq)]
pub struct SuffixStats {
    odds: Vec<f64>,
    suffix_odds_sum: Vec<f64>,
    suffix_survival: Vec<f64>,
    log_suffix_survival: Vec<f64>,
}

impl SuffixStats {
    pub fn from_instance(inst: &ProblemInstance) -> Self {
        let n = inst.n();
        let mut odds = vec![0.0; n];
        let mut suffix_odds_sum = vec![0.0; n + 1];
        let mut suffix_survival = vec![1.0; n + 1];
        let mut log_suffix_survival = vec![0.0; n + 1];
        for k in (1..=n).rev() {
            let p = inst.prob(k);
            let q = 1.0 - p;
            let r = if p == 1.0 { f64::INFINITY } else { p / q };
            odds[k - 1] = r;
            suffix_odds_sum[k - 1] = r + suffix_odds_sum[k];
            suffix_survival[k - 1] = q * suffix_survival[k];
            log_suffix_survival[k - 1] = q.ln() + log_suffix_survival[k];
        }
        Self {
            odds,
            suffix_odds_sum,
            suffix_survival,
            log_suffix_survival,
        }
    }

    pub fn n(&self) -> usize {
        self.odds.len()
    }

    /// `r_i` for `i` in `1..=n`.
    pub fn odds(&self, i: usize) -> f64 {
        self.odds[i - 1]
    }

    /// `R_k` for `k` in `1..=n+1`.
    pub fn suffix_odds_sum(&self, k: usize) -> f64 {
        self.suffix_odds_sum[k - 1]
    }

    /// `Q_k` for `k` in `1..=n+1`.
    pub fn suffix_survival(&self, k: usize) -> f64 {
        self.suffix_survival[k - 1]
    }

    /// `ln Q_k` for `k` in `1..=n+1`.
    pub fn log_suffix_survival(&self, k: usize) -> f64 {
        self.log_suffix_survival[k - 1]
    }

    pub fn prob_is_one(&self, i: usize) -> bool {
        self.odds[i - 1].is_infinite()
    }
}
