//! Invariant suites behind `verify` in the CLI.
//!
//! Each suite sweeps a family of exact identities or convergence trends over
//! pinned parameter ranges and reports one labelled pass/fail line per
//! family. The acceptance tests reuse these reports.

use num_traits::{Pow, Zero};

use crate::combinatorics::{binomial, step_pmf};
use crate::dist_stats::{chebyshev_tail, exact_mean, exact_variance, Epsilon};
use crate::exact::{ratio_to_f64, ratio_u64, ExactInt};
use crate::gauss::{asymptotic_total_paths, count_ratio, gaussian_pmf_approx, ks_distance};

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Is the sequence strictly decreasing? A sequence that is identically zero
/// also passes: it means the quantity is exact at every size, which is
/// stronger than decay (the one-dimensional variance ratio is such a case).
fn strictly_decreasing_or_zero(values: &[f64]) -> bool {
    values.iter().all(|v| *v == 0.0) || values.windows(2).all(|w| w[1] < w[0])
}

/// Exact moment identities: the universal mean, the closed 2-d variance, the
/// squared-coefficient identity behind it, the `n/4` bound, and variance
/// monotonicity in the dimension.
pub fn moment_suite() -> SuiteReport {
    let mut checks = Vec::new();

    for dim in 1..=5u32 {
        let mut failures = Vec::new();
        for n in 1..=200u64 {
            if exact_mean(&step_pmf(dim, n + 1)) != ratio_u64(n + 2, 2) {
                failures.push(n);
            }
        }
        checks.push(Check::new(
            format!("mean equals n/2 + 1 exactly (d={dim}, n=1..=200)"),
            failures.is_empty(),
            if failures.is_empty() {
                "200/200 exact".to_string()
            } else {
                format!("violations at n={failures:?}")
            },
        ));
    }

    let mut failures = Vec::new();
    for n in 1..=200u64 {
        if exact_variance(&step_pmf(2, n + 1)) != ratio_u64(n * n, 8 * n - 4) {
            failures.push(n);
        }
    }
    checks.push(Check::new(
        "2-d variance equals n^2/(8n - 4) exactly (n=1..=200)",
        failures.is_empty(),
        if failures.is_empty() {
            "200/200 exact".to_string()
        } else {
            format!("violations at n={failures:?}")
        },
    ));

    let mut failures = Vec::new();
    for n in 1..=100u64 {
        let mut lhs = ExactInt::zero();
        for k in 0..=n {
            lhs += Pow::pow(&binomial(n, k), 2u32) * (k * k);
        }
        if lhs != binomial(2 * n - 2, n - 1) * (n * n) {
            failures.push(n);
        }
    }
    checks.push(Check::new(
        "sum of k^2 C(n,k)^2 equals n^2 C(2n-2, n-1) (n=1..=100)",
        failures.is_empty(),
        if failures.is_empty() {
            "100/100 exact".to_string()
        } else {
            format!("violations at n={failures:?}")
        },
    ));

    let mut failures = Vec::new();
    for dim in 1..=5u32 {
        for n in 1..=100u64 {
            if exact_variance(&step_pmf(dim, n + 1)) > ratio_u64(n, 4) {
                failures.push((dim, n));
            }
        }
    }
    checks.push(Check::new(
        "variance bounded by n/4 (d=1..=5, n=1..=100)",
        failures.is_empty(),
        if failures.is_empty() {
            "500/500 within bound".to_string()
        } else {
            format!("violations at (d, n)={failures:?}")
        },
    ));

    let mut failures = Vec::new();
    for n in 1..=100u64 {
        let variances: Vec<_> = (1..=5u32)
            .map(|dim| exact_variance(&step_pmf(dim, n + 1)))
            .collect();
        if !variances.windows(2).all(|w| w[1] <= w[0]) {
            failures.push(n);
        }
    }
    checks.push(Check::new(
        "variance non-increasing in d (d=1..=5, n=1..=100)",
        failures.is_empty(),
        if failures.is_empty() {
            "100/100 monotone".to_string()
        } else {
            format!("violations at n={failures:?}")
        },
    ));

    SuiteReport {
        name: "moments",
        checks,
    }
}

/// Chebyshev tails: exact tail mass at threshold `n^eps sqrt(n)/2` never
/// exceeds `n^(-2 eps)`.
pub fn chebyshev_suite() -> SuiteReport {
    let epsilons = [Epsilon::new(1, 9), Epsilon::new(1, 4), Epsilon::new(1, 3)];
    let sizes = [20u64, 50, 100, 200];
    let mut checks = Vec::new();
    for dim in 1..=4u32 {
        let mut failures = Vec::new();
        let mut worst: Option<(u64, Epsilon, f64, f64)> = None;
        for &n in &sizes {
            let dist = step_pmf(dim, n + 1);
            for &eps in &epsilons {
                let report = chebyshev_tail(&dist, eps).expect("start > 2");
                let tail = ratio_to_f64(&report.tail_prob);
                let slack = report.bound - tail;
                if worst.map_or(true, |(_, _, _, s)| slack < s) {
                    worst = Some((n, eps, tail, slack));
                }
                if !report.holds {
                    failures.push((n, eps));
                }
            }
        }
        let detail = match worst {
            Some((n, eps, tail, slack)) if failures.is_empty() => format!(
                "tightest margin at n={n}, eps={eps}: tail {tail:.3e}, slack {slack:.3e}"
            ),
            _ => format!("violations at (n, eps)={failures:?}"),
        };
        checks.push(Check::new(
            format!("Chebyshev tail within n^(-2eps) (d={dim}, n in {{20,50,100,200}})"),
            failures.is_empty(),
            detail,
        ));
    }
    SuiteReport {
        name: "chebyshev",
        checks,
    }
}

/// Asymptotic path-count formula: exact collapse at `d = 1`, ratio
/// converging to 1 with doubling `n` for `d = 2..=7`.
pub fn asymptotic_suite() -> SuiteReport {
    let mut checks = Vec::new();

    let mut failures = Vec::new();
    for n in 1..=500u64 {
        let exact = crate::combinatorics::total_paths(1, n + 1);
        let estimate = asymptotic_total_paths(1, n);
        if exact.to_f64() != Some(estimate) {
            failures.push(n);
        }
    }
    checks.push(Check::new(
        "estimate equals 2^n exactly for d=1 (n=1..=500)",
        failures.is_empty(),
        if failures.is_empty() {
            "500/500 exact".to_string()
        } else {
            format!("violations at n={failures:?}")
        },
    ));

    let sizes = [25u64, 50, 100, 200, 400];
    for dim in 2..=7u32 {
        let errors: Vec<f64> = sizes
            .iter()
            .map(|&n| (count_ratio(dim, n) - 1.0).abs())
            .collect();
        let pass = strictly_decreasing_or_zero(&errors);
        checks.push(Check::new(
            format!("|s_d(n+1)/estimate - 1| strictly decreasing (d={dim}, n doubling 25..400)"),
            pass,
            format!("errors {errors:.3e?}"),
        ));
    }

    let ratio = count_ratio(2, 100);
    checks.push(Check::new(
        "d=2, n=100 ratio within 1% (central binomial)",
        (ratio - 1.0).abs() < 0.01,
        format!("ratio {ratio:.6}"),
    ));

    SuiteReport {
        name: "asymptotic",
        checks,
    }
}

/// Gaussian convergence: KS distance and the variance ratio improve as `n`
/// doubles; the limiting density matches the exact pmf near the mean and
/// carries unit total mass.
pub fn gauss_suite() -> SuiteReport {
    let sizes = [50u64, 100, 200, 400];
    let mut checks = Vec::new();

    for dim in 1..=3u32 {
        let distances: Vec<f64> = sizes
            .iter()
            .map(|&n| ks_distance(&step_pmf(dim, n + 1)).expect("start > 2"))
            .collect();
        let pass = distances.windows(2).all(|w| w[1] < w[0]);
        checks.push(Check::new(
            format!("KS distance strictly decreasing (d={dim}, n doubling 50..400)"),
            pass,
            format!("distances {distances:.3e?}"),
        ));
    }

    for dim in 1..=4u32 {
        let errors: Vec<f64> = sizes
            .iter()
            .map(|&n| {
                let variance = exact_variance(&step_pmf(dim, n + 1));
                let ratio = variance * ratio_u64(4 * dim as u64, n);
                (ratio_to_f64(&ratio) - 1.0).abs()
            })
            .collect();
        let pass = strictly_decreasing_or_zero(&errors);
        checks.push(Check::new(
            format!("|variance * 4d/n - 1| strictly decreasing (d={dim}, n doubling 50..400)"),
            pass,
            if errors.iter().all(|e| *e == 0.0) {
                "identically zero (variance is exactly n/4d)".to_string()
            } else {
                format!("errors {errors:.3e?}")
            },
        ));
    }

    for dim in [1u32, 2] {
        let dist = step_pmf(dim, 101);
        let exact = ratio_to_f64(&dist.pmf(51));
        let approx = gaussian_pmf_approx(dim, 100, 51);
        let err = (approx / exact - 1.0).abs();
        checks.push(Check::new(
            format!("Gaussian density within 2% of exact pmf at the mean (d={dim}, n=100)"),
            err < 0.02,
            format!("relative error {err:.3e}"),
        ));
    }

    let mut details = Vec::new();
    let mut pass = true;
    for dim in 1..=4u32 {
        for n in [100u64, 400] {
            let sum: f64 = (1..=n + 1).map(|k| gaussian_pmf_approx(dim, n, k)).sum();
            let err = (sum - 1.0).abs();
            // far below the O(1/n) requirement: the lattice sum of these
            // Gaussians is exponentially close to 1, so only float rounding
            // remains
            if err > 1e-12 {
                pass = false;
            }
            details.push(format!("d={dim} n={n}: {err:.1e}"));
        }
    }
    checks.push(Check::new(
        "Gaussian density sums to 1 within 1e-12 (d=1..=4, n in {100, 400})",
        pass,
        details.join(", "),
    ));

    SuiteReport {
        name: "gauss",
        checks,
    }
}

/// Runs a suite by name; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<SuiteReport> {
    match name {
        "moments" => Some(moment_suite()),
        "chebyshev" => Some(chebyshev_suite()),
        "asymptotic" => Some(asymptotic_suite()),
        "gauss" => Some(gauss_suite()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decreasing_helper() {
        assert!(strictly_decreasing_or_zero(&[3.0, 2.0, 1.0]));
        assert!(strictly_decreasing_or_zero(&[0.0, 0.0, 0.0]));
        assert!(!strictly_decreasing_or_zero(&[1.0, 1.0]));
        assert!(!strictly_decreasing_or_zero(&[1.0, 2.0]));
    }

    #[test]
    fn suite_lookup() {
        assert!(run_suite("moments").is_some());
        assert!(run_suite("nope").is_none());
    }
}
