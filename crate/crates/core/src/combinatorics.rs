//! Exact counting of simple jump paths.
//!
//! A simple jump path in `d` dimensions walks from a start point down to the
//! origin, strictly decreasing *every* coordinate at each step. From
//! `(a_1, ..., a_d)` there are `prod_j C(a_j - 1, k - 1)` paths of exactly
//! `k` steps: each dimension independently chooses its `k - 1` intermediate
//! values. Everything here is big-integer exact.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;
use std::sync::{Arc, LazyLock, RwLock};

use num_traits::{One, Pow, Zero};

use crate::exact::{ratio_int, ExactInt, ExactRatio};

/// `C(n, k)` by the multiplicative formula with exact division; `0` when
/// `k > n`.
pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return ExactInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = ExactInt::one();
    for i in 0..k {
        // every prefix product C(n, i) * (n - i) is divisible by i + 1
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

static ROWS: LazyLock<RwLock<HashMap<u64, Arc<Vec<ExactInt>>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// The full row `C(n, 0..=n)`, memoized because count sweeps reuse rows
/// heavily. Safe to call concurrently; a race at worst computes a row twice.
pub fn binomial_row(n: u64) -> Arc<Vec<ExactInt>> {
    if let Some(row) = ROWS.read().expect("row cache poisoned").get(&n) {
        return Arc::clone(row);
    }
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = ExactInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    let row = Arc::new(row);
    ROWS.write()
        .expect("row cache poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&row));
    row
}

/// Number of `k`-step simple jump paths from `starts` to the origin.
///
/// Out-of-range `k` (zero, or more steps than the smallest coordinate
/// allows) counts zero paths instead of erroring, so sums over `k` stay
/// uniform.
pub fn path_count(k: u64, starts: &[u64]) -> ExactInt {
    assert!(!starts.is_empty(), "need at least one dimension");
    if k == 0 || starts.iter().any(|&a| k > a) {
        return ExactInt::zero();
    }
    starts
        .iter()
        .map(|&a| binomial(a - 1, k - 1))
        .product()
}

/// `k`-step paths from the equal-coordinate start `(n, ..., n)`:
/// `C(n - 1, k - 1)^d`.
pub fn path_count_equal(dim: u32, k: u64, n: u64) -> ExactInt {
    assert!(dim >= 1, "dimension must be positive");
    if k == 0 || k > n {
        return ExactInt::zero();
    }
    Pow::pow(&binomial(n - 1, k - 1), dim)
}

/// Total number of simple jump paths from `(n, ..., n)` to the origin.
pub fn total_paths(dim: u32, n: u64) -> ExactInt {
    assert!(dim >= 1 && n >= 1, "need positive dimension and start");
    let row = binomial_row(n - 1);
    let mut sum = ExactInt::zero();
    for c in row.iter() {
        sum += Pow::pow(c, dim);
    }
    sum
}

/// Exact distribution of the step count `K` over all simple jump paths from
/// `(start, ..., start)` to the origin.
///
/// Internally the pmf is a vector of integer counts over a common
/// denominator (the total path count), so `pmf(k) * total` recovering an
/// integer is structural rather than something to maintain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDistribution {
    dim: u32,
    start: u64,
    counts: Vec<ExactInt>,
    total: ExactInt,
}

impl StepDistribution {
    pub fn new(dim: u32, start: u64) -> Self {
        assert!(dim >= 1 && start >= 1, "need positive dimension and start");
        let row = binomial_row(start - 1);
        let counts: Vec<ExactInt> = row.iter().map(|c| Pow::pow(c, dim)).collect();
        let mut total = ExactInt::zero();
        for c in &counts {
            total += c;
        }
        StepDistribution {
            dim,
            start,
            counts,
            total,
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// The common start coordinate; the support of `K` is `1..=start`.
    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn support(&self) -> RangeInclusive<u64> {
        1..=self.start
    }

    /// `t_d(k, start)` — zero outside the support.
    pub fn count(&self, k: u64) -> ExactInt {
        if k == 0 || k > self.start {
            ExactInt::zero()
        } else {
            self.counts[(k - 1) as usize].clone()
        }
    }

    /// Counts indexed by `k - 1`.
    pub fn counts(&self) -> &[ExactInt] {
        &self.counts
    }

    /// `s_d(start)`, the common denominator of the pmf.
    pub fn total(&self) -> &ExactInt {
        &self.total
    }

    /// `P(K = k)` as an exact rational.
    pub fn pmf(&self, k: u64) -> ExactRatio {
        ratio_int(&self.count(k), &self.total)
    }

    /// The whole pmf as a map `k -> P(K = k)`.
    pub fn pmf_map(&self) -> BTreeMap<u64, ExactRatio> {
        self.support().map(|k| (k, self.pmf(k))).collect()
    }

    /// `P(K <= k)` as an exact rational.
    pub fn cdf(&self, k: u64) -> ExactRatio {
        let mut cum = ExactInt::zero();
        for c in self.counts.iter().take(k.min(self.start) as usize) {
            cum += c;
        }
        ratio_int(&cum, &self.total)
    }
}

/// The step-count pmf `p_d(k, n) = t_d(k, n) / s_d(n)`.
pub fn step_pmf(dim: u32, n: u64) -> StepDistribution {
    StepDistribution::new(dim, n)
}

/// Step-count pmf aggregated over every start `(i, ..., i)` with
/// `1 <= i <= n`, each start weighted by its share of all paths. Auxiliary
/// output: no convergence rate is claimed for the mixture.
pub fn aggregate_step_pmf(dim: u32, n: u64) -> BTreeMap<u64, ExactRatio> {
    assert!(dim >= 1 && n >= 1);
    let mut numerators: Vec<ExactInt> = vec![ExactInt::zero(); n as usize];
    let mut denominator = ExactInt::zero();
    for i in 1..=n {
        let dist = step_pmf(dim, i);
        for (idx, c) in dist.counts().iter().enumerate() {
            numerators[idx] += c;
        }
        denominator += dist.total();
    }
    (1..=n)
        .map(|k| {
            (
                k,
                ratio_int(&numerators[(k - 1) as usize], &denominator),
            )
        })
        .collect()
}
