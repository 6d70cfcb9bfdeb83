//! Exact moments of step-count distributions and the closed-form checks
//! around them: the universal mean `n/2 + 1`, the two-dimensional variance
//! `n^2/(8n - 4)`, the `n/4` variance bound, and the Chebyshev tail.
//!
//! Every probability here is an exact rational; floats only show up in the
//! reported Chebyshev bound, and even the `holds` verdict is decided by
//! cross-multiplied big-integer comparisons.

use num_rational::Ratio;
use num_traits::{Pow, Zero};

use crate::combinatorics::{step_pmf, StepDistribution};
use crate::error::{Error, Result};
use crate::exact::{ratio_int, ratio_u64, ExactInt, ExactRatio};

/// Exponent for the Chebyshev tail, as an exact fraction `p/q`.
pub type Epsilon = Ratio<u64>;

/// `E[K]`, exactly.
pub fn exact_mean(dist: &StepDistribution) -> ExactRatio {
    let mut acc = ExactInt::zero();
    for (i, c) in dist.counts().iter().enumerate() {
        acc += c * (i as u64 + 1);
    }
    ratio_int(&acc, dist.total())
}

/// `Var[K] = E[K^2] - E[K]^2`, exactly.
pub fn exact_variance(dist: &StepDistribution) -> ExactRatio {
    let mean = exact_mean(dist);
    let mut acc = ExactInt::zero();
    for (i, c) in dist.counts().iter().enumerate() {
        let k = i as u64 + 1;
        acc += c * (k * k);
    }
    ratio_int(&acc, dist.total()) - mean.clone() * mean
}

/// True iff the exact variance of the start-`(n+1, ..., n+1)` distribution is
/// at most `n/4`, the one-dimensional value.
pub fn verify_variance_bound(dim: u32, n: u64) -> bool {
    exact_variance(&step_pmf(dim, n + 1)) <= ratio_u64(n, 4)
}

/// Outcome of the Chebyshev tail check.
#[derive(Clone, Debug)]
pub struct ChebyshevReport {
    /// `P(|K - (n/2 + 1)| >= n^eps * sqrt(n)/2)`, exact.
    pub tail_prob: ExactRatio,
    /// `n^(-2 eps)` as a float, for display.
    pub bound: f64,
    /// Whether `tail_prob <= n^(-2 eps)`, decided exactly.
    pub holds: bool,
}

/// Exact tail mass beyond `n^eps * sqrt(n)/2` from the mean, versus the
/// `n^(-2 eps)` bound.
///
/// The threshold is irrational, so tail membership of each `k` is decided by
/// integers: with `eps = p/q` and `D = |2k - n - 2|`,
/// `|k - mu| >= n^eps sqrt(n)/2  <=>  D^(2q) >= n^(q + 2p)`.
/// The verdict compares `tail^q` against `n^(-2p)` the same way.
pub fn chebyshev_tail(dist: &StepDistribution, eps: Epsilon) -> Result<ChebyshevReport> {
    if dist.start() <= 2 {
        return Err(Error::DegenerateStart {
            start: dist.start(),
            min_start: 3,
        });
    }
    let (p, q) = (*eps.numer(), *eps.denom());
    assert!(p >= 1, "epsilon must be positive");
    let n = dist.start() - 1;

    let rhs = Pow::pow(&ExactInt::from(n), (q + 2 * p) as u32);
    let mut tail = ExactInt::zero();
    for k in dist.support() {
        let two_k = 2 * k;
        let center = n + 2; // 2 * mean
        let dev = two_k.abs_diff(center);
        if Pow::pow(&ExactInt::from(dev), (2 * q) as u32) >= rhs {
            tail += &dist.count(k);
        }
    }
    let tail_prob = ratio_int(&tail, dist.total());

    // tail <= n^(-2p/q)  <=>  tail_num^q * n^(2p) <= tail_den^q
    let lhs = Pow::pow(tail_prob.numer().magnitude(), q as u32)
        * Pow::pow(&ExactInt::from(n), (2 * p) as u32);
    let holds = lhs <= Pow::pow(tail_prob.denom().magnitude(), q as u32);

    let bound = (n as f64).powf(-2.0 * p as f64 / q as f64);
    Ok(ChebyshevReport {
        tail_prob,
        bound,
        holds,
    })
}

/// Exact moments side by side with the closed-form predictions.
#[derive(Clone, Debug)]
pub struct MomentReport {
    pub dim: u32,
    pub start: u64,
    pub mean: ExactRatio,
    pub variance: ExactRatio,
    /// `n/2 + 1` with `n = start - 1`; exact for every dimension.
    pub predicted_mean: ExactRatio,
    /// `n/4` for `d = 1`, `n^2/(8n - 4)` for `d = 2`; no closed form beyond.
    pub predicted_variance: Option<ExactRatio>,
}

pub fn moment_report(dim: u32, start: u64) -> MomentReport {
    assert!(start >= 1);
    let dist = step_pmf(dim, start);
    let n = start - 1;
    let predicted_variance = if n == 0 {
        // single-point distribution regardless of dimension
        match dim {
            1 | 2 => Some(ExactRatio::zero()),
            _ => None,
        }
    } else {
        match dim {
            1 => Some(ratio_u64(n, 4)),
            2 => Some(ratio_u64(n * n, 8 * n - 4)),
            _ => None,
        }
    };
    MomentReport {
        dim,
        start,
        mean: exact_mean(&dist),
        variance: exact_variance(&dist),
        predicted_mean: ratio_u64(n + 2, 2),
        predicted_variance,
    }
}
