//! Closed-form quantities for an `n×n` matrix with i.i.d. entries and
//! `P(0) = p₀`: the `log_Q n` scale with `Q = 1/p₀`, the first-order size
//! `(2 + √2) log_Q n`, first-moment counts of permuted corners and the
//! Markov tail bounds they give.
//!
//! All exponent arithmetic is carried out in natural-log space with exact
//! falling-factorial sums.

use thiserror::Error;

use crate::matcore::{nu0, CornerShape};

/// `2 + √2`, the limit of every size divided by `log_Q n`.
pub const LIMIT_CONSTANT: f64 = 2.0 + std::f64::consts::SQRT_2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("p0 must lie in (0, 1), got {0}")]
    Probability(f64),
    #[error("log_q needs n > 0 and q > 1, got n={n}, q={q}")]
    LogDomain { n: f64, q: f64 },
    #[error("need 1 <= ell <= m and ell <= n, got n={n}, m={m}, ell={ell}")]
    CornerOrder { n: u64, m: u64, ell: u64 },
    #[error("delta must lie in (0, 1), got {0}")]
    Delta(f64),
    #[error("s = {s} must exceed 2γ = {two_gamma}")]
    Scale { s: f64, two_gamma: f64 },
    #[error("zero-square expansion needs log_Q n > 1 (n = {n}, p0 = {p0})")]
    ZeroSquareDomain { n: f64, p0: f64 },
}

/// `n` together with `p₀` and the derived `Q = 1/p₀`, `γ = 1/ln Q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub n: u64,
    pub p0: f64,
}

impl ModelParams {
    pub fn new(n: u64, p0: f64) -> Result<Self, BoundsError> {
        check_p0(p0)?;
        if n == 0 {
            return Err(BoundsError::LogDomain { n: 0.0, q: 1.0 / p0 });
        }
        Ok(ModelParams { n, p0 })
    }

    pub fn q(&self) -> f64 {
        1.0 / self.p0
    }

    pub fn gamma(&self) -> f64 {
        1.0 / self.q().ln()
    }

    pub fn log_q_n(&self) -> f64 {
        log_q(self.n as f64, self.q()).expect("validated parameters")
    }
}

fn check_p0(p0: f64) -> Result<(), BoundsError> {
    if p0 > 0.0 && p0 < 1.0 {
        Ok(())
    } else {
        Err(BoundsError::Probability(p0))
    }
}

/// `ln n / ln Q`.
pub fn log_q(n: f64, q: f64) -> Result<f64, BoundsError> {
    if !(n > 0.0 && q > 1.0 && n.is_finite() && q.is_finite()) {
        return Err(BoundsError::LogDomain { n, q });
    }
    Ok(n.ln() / q.ln())
}

/// `(2 + √2) log_Q n`.
pub fn asymptotic_size(params: ModelParams) -> f64 {
    LIMIT_CONSTANT * params.log_q_n()
}

/// A nonnegative quantity kept as its natural logarithm so that huge and
/// tiny counts survive. `ln == -inf` encodes zero.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct LogValue {
    pub ln: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { ln: f64::NEG_INFINITY };

    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    pub fn log10(self) -> f64 {
        self.ln / std::f64::consts::LN_10
    }

    pub fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }
}

/// `ln (n)_k = Σ_{i<k} ln(n − i)`; `-inf` when `k > n`.
pub fn ln_falling_factorial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    (0..k).map(|i| ((n - i) as f64).ln()).sum()
}

/// Expected number of permuted `(m, ℓ)`-corner submatrices of an `n×n`
/// matrix: `(n)_ℓ² · p₀^{ν₀(m, ℓ)}`.
pub fn expected_corner_count(n: u64, m: u64, ell: u64, p0: f64) -> Result<LogValue, BoundsError> {
    check_p0(p0)?;
    if ell == 0 || ell > m || ell > n {
        return Err(BoundsError::CornerOrder { n, m, ell });
    }
    let shape = CornerShape::new(m as usize, ell as usize).expect("checked order");
    let ln = 2.0 * ln_falling_factorial(n, ell) + nu0(shape) as f64 * p0.ln();
    Ok(LogValue { ln })
}

/// The `ℓ ∈ (m/2, m]` minimising the expected corner count, with that count.
/// `None` when `m > n` (no such submatrix can exist).
pub fn best_corner(n: u64, m: u64, p0: f64) -> Result<Option<(u64, LogValue)>, BoundsError> {
    check_p0(p0)?;
    if m == 0 || m > n {
        return Ok(None);
    }
    let mut best: Option<(u64, LogValue)> = None;
    for ell in (m / 2 + 1)..=m {
        let e = expected_corner_count(n, m, ell, p0)?;
        if best.is_none_or(|(_, b)| e.ln < b.ln) {
            best = Some((ell, e));
        }
    }
    Ok(best)
}

/// Upper bound on `P(Tᵖ ≥ m)` for an `n×n` matrix, clamped to 1.
/// Exactly 0 for `m > n`.
pub fn markov_tail(n: u64, m: u64, p0: f64) -> Result<f64, BoundsError> {
    if m == 0 {
        check_p0(p0)?;
        return Ok(1.0);
    }
    Ok(match best_corner(n, m, p0)? {
        Some((_, e)) => e.value().min(1.0),
        None => 0.0,
    })
}

/// Smallest `m` with `markov_tail(n, m, p₀) < δ`; with probability at least
/// `1 − δ` every one of the four sizes is below it.
pub fn certified_upper_size(n: u64, p0: f64, delta: f64) -> Result<u64, BoundsError> {
    check_p0(p0)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(BoundsError::Delta(delta));
    }
    for m in 1..=n {
        if markov_tail(n, m, p0)? < delta {
            return Ok(m);
        }
    }
    Ok(n + 1)
}

/// `2t − ln Q·(2st − s²/2 − t²)`, the leading coefficient of `(ln n)²` in
/// `ln E Y` for `m = s ln n`, `ℓ = t ln n`.
pub fn first_moment_exponent(s: f64, t: f64, q: f64) -> f64 {
    2.0 * t - q.ln() * (2.0 * s * t - s * s / 2.0 - t * t)
}

/// `t = s − γ`, which minimises [`first_moment_exponent`] over `t` for fixed `s`
/// (the best corner order for the Markov bound).
pub fn optimal_t(s: f64, q: f64) -> Result<f64, BoundsError> {
    if q.is_nan() || q <= 1.0 {
        return Err(BoundsError::LogDomain { n: s, q });
    }
    let gamma = 1.0 / q.ln();
    if s <= 2.0 * gamma {
        return Err(BoundsError::Scale { s, two_gamma: 2.0 * gamma });
    }
    Ok(s - gamma)
}

/// `(2 + √2)γ`: the exponent at the optimal `t` is negative exactly above it.
pub fn critical_scale(q: f64) -> f64 {
    LIMIT_CONSTANT / q.ln()
}

/// `s(n) = 2 log_Q n − 2 log_Q log_Q n + 2 log_Q(e/2)`, the centre of the
/// largest all-zero square.
pub fn zero_square_center(n: f64, p0: f64) -> Result<f64, BoundsError> {
    check_p0(p0)?;
    let q = 1.0 / p0;
    let l = log_q(n, q)?;
    if l <= 1.0 {
        return Err(BoundsError::ZeroSquareDomain { n, p0 });
    }
    Ok(2.0 * l - 2.0 * log_q(l, q)? + 2.0 * log_q(std::f64::consts::E / 2.0, q)?)
}
