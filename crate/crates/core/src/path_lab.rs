//! Enumeration oracle, exact-uniform sampler, and gap statistics for simple
//! jump paths.
//!
//! Enumeration is the ground truth the closed-form counts are checked
//! against, so it works straight off the definition: depth-first over every
//! strictly-descending point sequence. The sampler is exactly uniform — the
//! step count is drawn from the exact pmf by inverse CDF over big-integer
//! cumulative counts, and the per-dimension intermediate coordinates are
//! independent uniform subsets, which is faithful because the count
//! factorizes across dimensions once the length is fixed.

use std::collections::BTreeMap;

use num_bigint::RandBigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{path_count_equal, total_paths};
use crate::error::{Error, Result};
use crate::exact::ExactInt;

/// Default ceiling on exhaustive enumeration, in number of paths.
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

/// A point of the `d`-dimensional lattice (nonnegative coordinates).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    coords: Vec<u64>,
}

impl LatticePoint {
    pub fn new(coords: Vec<u64>) -> Self {
        assert!(!coords.is_empty(), "points need at least one coordinate");
        LatticePoint { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Self::new(vec![0; dim])
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn strictly_dominates(&self, other: &Self) -> bool {
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(&a, &b)| a > b)
    }
}

/// A simple jump path: all-positive start, strict decrease in every
/// coordinate at every step, origin last. The constructor validates, so a
/// `JumpPath` in hand is always well-formed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpPath {
    points: Vec<LatticePoint>,
}

impl JumpPath {
    pub fn new(points: Vec<LatticePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPath {
                reason: "need at least a start point and the origin".into(),
            });
        }
        let dim = points[0].dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::InvalidPath {
                reason: "points mix dimensions".into(),
            });
        }
        if points[0].coords().iter().any(|&c| c == 0) {
            return Err(Error::InvalidPath {
                reason: "start point must have every coordinate positive".into(),
            });
        }
        if !points.last().expect("nonempty").is_origin() {
            return Err(Error::InvalidPath {
                reason: "path must end at the origin".into(),
            });
        }
        for pair in points.windows(2) {
            if !pair[0].strictly_dominates(&pair[1]) {
                return Err(Error::InvalidPath {
                    reason: format!(
                        "step {:?} -> {:?} does not decrease every coordinate",
                        pair[0].coords(),
                        pair[1].coords()
                    ),
                });
            }
        }
        Ok(JumpPath { points })
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// Number of steps (one less than the number of points).
    pub fn steps(&self) -> u64 {
        (self.points.len() - 1) as u64
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }
}

/// Counts down through the box `{1..=hi_j - 1}^d` in descending
/// lexicographic order; yields nothing when some side is empty.
struct DescendingBox {
    hi: Vec<u64>,
    cur: Option<Vec<u64>>,
}

impl DescendingBox {
    fn below(point: &LatticePoint) -> Self {
        let hi = point.coords().to_vec();
        let cur = if hi.iter().all(|&h| h >= 2) {
            Some(hi.iter().map(|&h| h - 1).collect())
        } else {
            None
        };
        DescendingBox { hi, cur }
    }
}

impl Iterator for DescendingBox {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().expect("checked above");
        let mut done = true;
        for j in (0..cur.len()).rev() {
            if cur[j] > 1 {
                cur[j] -= 1;
                for h in j + 1..cur.len() {
                    cur[h] = self.hi[h] - 1;
                }
                done = false;
                break;
            }
        }
        if done {
            self.cur = None;
        }
        Some(out)
    }
}

/// All simple jump paths from `(n, ..., n)` to the origin, depth-first with
/// next points in descending lexicographic order (origin last), under the
/// default cap.
pub fn enumerate_paths(dim: u32, n: u64) -> Result<Vec<JumpPath>> {
    enumerate_paths_capped(dim, n, DEFAULT_ENUM_CAP)
}

/// Same, refusing instances whose exact path count exceeds `cap`.
pub fn enumerate_paths_capped(dim: u32, n: u64, cap: u64) -> Result<Vec<JumpPath>> {
    assert!(dim >= 1 && n >= 1, "need positive dimension and start");
    let total = total_paths(dim, n);
    if total > ExactInt::from(cap) {
        return Err(Error::EnumerationCapExceeded { total, cap });
    }

    fn dfs(prefix: &mut Vec<LatticePoint>, out: &mut Vec<JumpPath>) {
        let current = prefix.last().expect("prefix starts nonempty").clone();
        for coords in DescendingBox::below(&current) {
            prefix.push(LatticePoint::new(coords));
            dfs(prefix, out);
            prefix.pop();
        }
        prefix.push(LatticePoint::origin(current.dim()));
        out.push(JumpPath::new(prefix.clone()).expect("enumeration yields valid paths"));
        prefix.pop();
    }

    let mut out = Vec::new();
    let mut prefix = vec![LatticePoint::new(vec![n; dim as usize])];
    dfs(&mut prefix, &mut out);
    Ok(out)
}

/// Exact-uniform sampler over all simple jump paths from `(n, ..., n)`.
///
/// Cumulative step-count weights are computed once; each draw costs one
/// big-integer inverse-CDF lookup plus `d` subset draws.
pub struct PathSampler {
    dim: u32,
    n: u64,
    cumulative: Vec<ExactInt>,
    total: ExactInt,
}

impl PathSampler {
    pub fn new(dim: u32, n: u64) -> Self {
        assert!(dim >= 1 && n >= 1, "need positive dimension and start");
        let mut cumulative = Vec::with_capacity(n as usize);
        let mut acc = ExactInt::zero();
        for k in 1..=n {
            acc += path_count_equal(dim, k, n);
            cumulative.push(acc.clone());
        }
        let total = acc;
        PathSampler {
            dim,
            n,
            cumulative,
            total,
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn start(&self) -> u64 {
        self.n
    }

    /// One exactly-uniform path.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> JumpPath {
        let u = rng.gen_biguint_below(&self.total);
        let k = self.cumulative.partition_point(|c| *c <= u) as u64 + 1;

        // per dimension: a uniform (k-1)-subset of {1, ..., n-1}, descending
        let columns: Vec<Vec<u64>> = (0..self.dim)
            .map(|_| {
                let mut vals: Vec<u64> =
                    rand::seq::index::sample(rng, (self.n - 1) as usize, (k - 1) as usize)
                        .iter()
                        .map(|i| i as u64 + 1)
                        .collect();
                vals.sort_unstable_by(|a, b| b.cmp(a));
                vals
            })
            .collect();

        let mut points = Vec::with_capacity(k as usize + 1);
        points.push(LatticePoint::new(vec![self.n; self.dim as usize]));
        for i in 0..(k - 1) as usize {
            points.push(LatticePoint::new(
                columns.iter().map(|col| col[i]).collect(),
            ));
        }
        points.push(LatticePoint::origin(self.dim as usize));
        JumpPath::new(points).expect("sampler yields valid paths")
    }
}

/// One path from a fresh ChaCha8 stream keyed by `seed`. Identical seeds
/// reproduce identical paths within a release.
pub fn sample_path(dim: u32, n: u64, seed: u64) -> JumpPath {
    let sampler = PathSampler::new(dim, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sampler.sample(&mut rng)
}

/// `count` paths drawn sequentially from one seeded stream.
pub fn sample_paths(dim: u32, n: u64, count: u64, seed: u64) -> Vec<JumpPath> {
    let sampler = PathSampler::new(dim, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sampler.sample(&mut rng)).collect()
}

/// Frequency of each path length among `samples` seeded draws.
pub fn empirical_pmf(dim: u32, n: u64, samples: u64, seed: u64) -> BTreeMap<u64, f64> {
    assert!(samples >= 1);
    let sampler = PathSampler::new(dim, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for _ in 0..samples {
        *counts.entry(sampler.sample(&mut rng).steps()).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(k, c)| (k, c as f64 / samples as f64))
        .collect()
}

/// Per-dimension histogram of coordinate drops between consecutive points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapHistogram {
    per_dim: Vec<BTreeMap<u64, u64>>,
    paths: u64,
    steps: u64,
}

impl GapHistogram {
    /// Gap-size counts for dimension `j` (zero-based).
    pub fn dimension(&self, j: usize) -> &BTreeMap<u64, u64> {
        &self.per_dim[j]
    }

    pub fn dims(&self) -> usize {
        self.per_dim.len()
    }

    pub fn paths(&self) -> u64 {
        self.paths
    }

    /// Total steps across all paths; each step contributes one gap per
    /// dimension.
    pub fn steps(&self) -> u64 {
        self.steps
    }
}

/// Aggregates coordinate gaps across paths; all paths must share a
/// dimension.
pub fn gap_histogram(paths: &[JumpPath]) -> Result<GapHistogram> {
    let first = paths.first().ok_or(Error::EmptyPaths)?;
    let dim = first.dim();
    let mut per_dim: Vec<BTreeMap<u64, u64>> = vec![BTreeMap::new(); dim];
    let mut steps = 0u64;
    for path in paths {
        if path.dim() != dim {
            return Err(Error::MixedDimensions {
                first: dim,
                other: path.dim(),
            });
        }
        steps += path.steps();
        for pair in path.points().windows(2) {
            for (j, hist) in per_dim.iter_mut().enumerate() {
                let gap = pair[0].coords()[j] - pair[1].coords()[j];
                *hist.entry(gap).or_insert(0) += 1;
            }
        }
    }
    Ok(GapHistogram {
        per_dim,
        paths: paths.len() as u64,
        steps,
    })
}
