//! Gaussian-convergence diagnostics for step-count distributions.
//!
//! The step count from `(n+1, ..., n+1)` concentrates around `n/2 + 1` with
//! limiting variance `n/4d`. This module standardizes coordinates, evaluates
//! the limiting Gaussian density, measures the KS distance between the exact
//! distribution and its fitted normal, and evaluates the asymptotic
//! path-count formula `2^{nd} (pi n / 2)^{(1-d)/2} d^{-1/2}`.

use std::f64::consts::{LN_2, PI, SQRT_2};

use crate::combinatorics::{total_paths, StepDistribution};
use crate::dist_stats::{exact_mean, exact_variance};
use crate::error::{Error, Result};
use crate::exact::{ln_biguint, ratio_int, ratio_to_f64, ratio_u64, ExactInt, ExactRatio};

use num_traits::Zero;

/// Standardized coordinate `l` with `k = (n/2 + 1) + l * sqrt(n)/2`.
///
/// The deviation `k - (n/2 + 1)` stays an exact rational; precision is lost
/// only at the final division by the irrational scale.
#[derive(Clone, Debug, PartialEq)]
pub struct Standardized {
    deviation: ExactRatio,
    n: u64,
}

impl Standardized {
    /// `k - (n/2 + 1)`, exact.
    pub fn deviation(&self) -> &ExactRatio {
        &self.deviation
    }

    /// `l = 2 (k - (n/2 + 1)) / sqrt(n)` at 64-bit precision.
    pub fn value(&self) -> f64 {
        2.0 * ratio_to_f64(&self.deviation) / (self.n as f64).sqrt()
    }
}

/// Standardizes `k` for the start point `(n+1, ..., n+1)`. The location
/// `n/2 + 1` and scale `sqrt(n)/2` are shared by every dimension.
pub fn standardize(k: u64, n: u64) -> Standardized {
    let deviation = ratio_u64(k, 1) - ratio_u64(n + 2, 2);
    Standardized { deviation, n }
}

/// Complementary error function, accurate to roughly 1e-15 absolute.
///
/// Maclaurin series below 1.5, Lentz-evaluated continued fraction above.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 1.5 {
        1.0 - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

fn erf_series(x: f64) -> f64 {
    // erf(x) = 2/sqrt(pi) * sum_k (-1)^k x^(2k+1) / (k! (2k+1))
    let mut term = x; // (-1)^k x^(2k+1) / k!
    let mut sum = x;
    let x2 = x * x;
    for k in 1..200 {
        term *= -x2 / k as f64;
        let contrib = term / (2 * k + 1) as f64;
        sum += contrib;
        if contrib.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum * 2.0 / PI.sqrt()
}

fn erfc_continued_fraction(x: f64) -> f64 {
    // sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let tiny = 1e-300;
    let mut f = tiny;
    let mut c = f;
    let mut d = 0.0;
    for j in 1..400 {
        let a = if j == 1 { 1.0 } else { (j - 1) as f64 / 2.0 };
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / PI.sqrt() * f
}

/// Gaussian density with mean `n/2 + 1` and variance `n/(4d)`, evaluated at
/// `k` — the limiting shape of the step-count pmf with start
/// `(n+1, ..., n+1)`.
pub fn gaussian_pmf_approx(dim: u32, n: u64, k: u64) -> f64 {
    assert!(dim >= 1 && n >= 1);
    let mu = n as f64 / 2.0 + 1.0;
    let var = n as f64 / (4.0 * dim as f64);
    let z = k as f64 - mu;
    (2.0 * PI * var).sqrt().recip() * (-z * z / (2.0 * var)).exp()
}

/// KS distance between the exact CDF and a normal fitted with the
/// distribution's own exact mean and variance (1/2 continuity correction).
pub fn ks_distance(dist: &StepDistribution) -> Result<f64> {
    if dist.start() <= 2 {
        return Err(Error::DegenerateStart {
            start: dist.start(),
            min_start: 3,
        });
    }
    let mean = ratio_to_f64(&exact_mean(dist));
    let variance = ratio_to_f64(&exact_variance(dist));
    Ok(ks_distance_against(dist, mean, variance))
}

/// The same statistic against an arbitrary normal — pass the limiting
/// parameters `n/2 + 1` and `n/(4d)` to study the asymptotic fit instead of
/// the per-distribution one.
pub fn ks_distance_against(dist: &StepDistribution, mean: f64, variance: f64) -> f64 {
    let sd = variance.sqrt();
    let mut cum = ExactInt::zero();
    let mut sup = 0f64;
    for (i, c) in dist.counts().iter().enumerate() {
        cum += c;
        let k = i as u64 + 1;
        let exact = ratio_to_f64(&ratio_int(&cum, dist.total()));
        let fitted = normal_cdf((k as f64 + 0.5 - mean) / sd);
        sup = sup.max((exact - fitted).abs());
    }
    sup
}

/// `ln` of the asymptotic path-count estimate for `s_d(n+1)`.
pub fn asymptotic_total_paths_ln(dim: u32, n: u64) -> f64 {
    assert!(dim >= 1 && n >= 1);
    let d = dim as f64;
    let nf = n as f64;
    nf * d * LN_2 + 0.5 * (1.0 - d) * (PI * nf / 2.0).ln() - 0.5 * d.ln()
}

/// The estimate `2^{nd} (pi n / 2)^{(1-d)/2} d^{-1/2}` itself.
///
/// Evaluated directly while `2^{nd}` is representable (so the `d = 1` case
/// collapses to exactly `2^n`), in log space past that; `inf` when even the
/// exponentiated value overflows.
pub fn asymptotic_total_paths(dim: u32, n: u64) -> f64 {
    assert!(dim >= 1 && n >= 1);
    let nd = n.saturating_mul(dim as u64);
    if nd > 1023 {
        return asymptotic_total_paths_ln(dim, n).exp();
    }
    let d = dim as f64;
    2f64.powi(nd as i32) * (PI * n as f64 / 2.0).powf(0.5 * (1.0 - d)) / d.sqrt()
}

/// `s_d(n+1) / estimate`, evaluated in log space so huge counts stay finite.
pub fn count_ratio(dim: u32, n: u64) -> f64 {
    let s = total_paths(dim, n + 1);
    (ln_biguint(&s) - asymptotic_total_paths_ln(dim, n)).exp()
}

/// Convergence diagnostics for the distribution starting at
/// `(start, ..., start)`.
#[derive(Clone, Debug)]
pub struct GaussianSummary {
    pub dim: u32,
    pub start: u64,
    /// Exact mean rounded to a float.
    pub fit_mean: f64,
    /// Exact variance rounded to a float.
    pub fit_variance: f64,
    /// KS distance against the normal fitted with the exact moments.
    pub ks_distance: f64,
    /// `variance * 4d / n`; tends to 1 as the variance approaches `n/4d`.
    pub variance_ratio: f64,
    /// `s_d(start) / asymptotic estimate`; tends to 1.
    pub count_ratio: f64,
}

pub fn gaussian_summary(dim: u32, start: u64) -> Result<GaussianSummary> {
    if start <= 2 {
        return Err(Error::DegenerateStart {
            start,
            min_start: 3,
        });
    }
    let n = start - 1;
    let dist = StepDistribution::new(dim, start);
    let variance = exact_variance(&dist);
    let variance_ratio =
        ratio_to_f64(&(variance.clone() * ratio_u64(4 * dim as u64, n)));
    Ok(GaussianSummary {
        dim,
        start,
        fit_mean: ratio_to_f64(&exact_mean(&dist)),
        fit_variance: ratio_to_f64(&variance),
        ks_distance: ks_distance(&dist)?,
        variance_ratio,
        count_ratio: count_ratio(dim, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::step_pmf;

    // 30-digit reference values (mpmath).
    const ERFC_REFS: &[(f64, f64)] = &[
        (0.25, 0.723673609831763067014931732235),
        (0.5, 0.479500122186953462317253346108),
        (1.0, 0.157299207050285130658779364917),
        (1.49, 0.0351021351567957878970927624364),
        (1.5, 0.0338948535246892729330237383541),
        (1.51, 0.0327232518712883640861740087513),
        (2.0, 0.00467773498104726583793074363275),
        (3.0, 0.0000220904969985854413727761295823),
        (5.0, 1.53745979442803485018834348538e-12),
        (8.0, 1.12242971729829270799678884432e-29),
    ];

    const PHI_REFS: &[(f64, f64)] = &[
        (-6.0, 9.86587645037698140700864132398e-10),
        (-3.0, 0.0013498980316300945266518147676),
        (-1.0, 0.158655253931457051414767454368),
        (-0.5, 0.308537538725986896362295389392),
        (0.0, 0.5),
        (0.5, 0.691462461274013103637704610608),
        (1.0, 0.841344746068542948585232545632),
        (2.0, 0.977249868051820792799717362833),
        (3.0, 0.998650101968369905473348185232),
        (6.0, 0.999999999013412354962301859299),
    ];

    #[test]
    fn erfc_reaches_reference_accuracy() {
        for &(x, want) in ERFC_REFS {
            let got = erfc(x);
            assert!(
                (got - want).abs() < 1e-15 + 1e-13 * want.abs(),
                "erfc({x}) = {got}, want {want}"
            );
            let neg = erfc(-x);
            assert!((neg - (2.0 - want)).abs() < 1e-13);
        }
    }

    #[test]
    fn normal_cdf_reaches_reference_accuracy() {
        for &(x, want) in PHI_REFS {
            let got = normal_cdf(x);
            assert!(
                (got - want).abs() < 1e-13,
                "Phi({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn standardize_examples() {
        // mean maps to zero (n even)
        assert_eq!(standardize(4, 6).value(), 0.0);
        assert_eq!(standardize(4, 4).value(), 1.0);
        assert_eq!(standardize(1, 9).value(), -3.0);
        // exact deviation survives as a rational
        assert_eq!(
            *standardize(1, 9).deviation(),
            ratio_u64(1, 1) - ratio_u64(11, 2)
        );
    }

    #[test]
    fn gaussian_peak_value() {
        for (dim, n) in [(1u32, 100u64), (2, 100), (4, 64)] {
            let peak = gaussian_pmf_approx(dim, n, n / 2 + 1);
            let want = 1.0 / (2.0 * PI * n as f64 / (4.0 * dim as f64)).sqrt();
            assert!((peak - want).abs() < 1e-15);
        }
    }

    #[test]
    fn gaussian_matches_exact_pmf_near_center() {
        for dim in [1u32, 2] {
            let dist = step_pmf(dim, 101);
            let exact = ratio_to_f64(&dist.pmf(51));
            let approx = gaussian_pmf_approx(dim, 100, 51);
            assert!(
                (approx / exact - 1.0).abs() < 0.02,
                "d={dim}: approx {approx}, exact {exact}"
            );
        }
    }

    #[test]
    fn ks_distance_decays_with_n() {
        let coarse = ks_distance(&step_pmf(1, 101)).unwrap();
        let fine = ks_distance(&step_pmf(1, 401)).unwrap();
        assert!(fine < coarse, "{fine} vs {coarse}");
    }

    #[test]
    fn ks_distance_rejects_tiny_starts() {
        assert!(matches!(
            ks_distance(&step_pmf(2, 2)),
            Err(Error::DegenerateStart { .. })
        ));
    }

    #[test]
    fn asymptotic_collapses_for_one_dimension() {
        for n in [1u64, 5, 17, 100, 500, 1000] {
            let estimate = asymptotic_total_paths(1, n);
            assert_eq!(estimate, 2f64.powi(n as i32), "n={n}");
        }
    }

    #[test]
    fn asymptotic_matches_central_binomial() {
        let ratio = count_ratio(2, 100);
        assert!((ratio - 1.0).abs() < 0.01, "ratio {ratio}");
    }

    #[test]
    fn asymptotic_ln_consistent_with_direct() {
        for (dim, n) in [(2u32, 10u64), (3, 20), (7, 30)] {
            let direct = asymptotic_total_paths(dim, n);
            let via_ln = asymptotic_total_paths_ln(dim, n).exp();
            assert!((direct / via_ln - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn summary_reports_sane_fields() {
        let s = gaussian_summary(2, 41).unwrap();
        assert_eq!(s.dim, 2);
        assert_eq!(s.start, 41);
        assert!((s.fit_mean - 21.0).abs() < 1e-12);
        assert!(s.fit_variance > 0.0);
        assert!(s.ks_distance > 0.0 && s.ks_distance < 1.0);
        assert!((s.variance_ratio - 1.0).abs() < 0.1);
        assert!((s.count_ratio - 1.0).abs() < 0.1);
        assert!(matches!(
            gaussian_summary(2, 2),
            Err(Error::DegenerateStart { .. })
        ));
    }
}
