//! Greedy construction of the simple and compound Zeckendorf diagonal
//! sequences.
//!
//! Grid positions fill anti-diagonals from the bottom right to the top left:
//! `(1,1); (2,1), (1,2); (3,1), (2,2), (1,3); ...`. Iterating through the
//! naturals, a number joins the grid at the next position exactly when no
//! legal chain over the values already present sums to it. A chain steps
//! strictly down in every coordinate for the simple kind, and never up in
//! any coordinate (with at least one strict drop) for the compound kind; a
//! single grid value is itself a legal chain.
//!
//! Because any position reachable from an anchor sits on an earlier
//! diagonal, chains strictly descend in value, which makes the
//! representability search a DAG walk: depth-first from each entry in
//! descending value order, pruning when the remaining target exceeds the
//! total value reachable below the anchor, and memoizing failed
//! `(anchor, remaining)` states.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Simple,
    Compound,
}

/// One-based grid position; `b` is fixed at 1 for one-dimensional grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPos {
    pub a: u32,
    pub b: u32,
}

impl GridPos {
    pub fn new(a: u32, b: u32) -> Self {
        assert!(a >= 1 && b >= 1, "grid positions are one-based");
        GridPos { a, b }
    }

    /// Anti-diagonal index, starting at 1 for `(1,1)`.
    pub fn diagonal(&self) -> u32 {
        self.a + self.b - 1
    }
}

/// Position of the `index`-th admitted value (zero-based) in a
/// two-dimensional grid: diagonal `t` runs `(t,1), (t-1,2), ..., (1,t)`.
pub fn diagonal_position(index: usize) -> GridPos {
    let mut diag = 1usize;
    let mut first = 0usize; // index of (diag, 1)
    while first + diag <= index {
        first += diag;
        diag += 1;
    }
    let offset = index - first;
    GridPos::new((diag - offset) as u32, (offset + 1) as u32)
}

/// May `to` follow `from` in a legal chain?
fn chain_step_ok(kind: SequenceKind, dim: u8, from: GridPos, to: GridPos) -> bool {
    match kind {
        SequenceKind::Simple => to.a < from.a && (dim == 1 || to.b < from.b),
        SequenceKind::Compound => {
            to.a <= from.a && (dim == 1 || to.b <= from.b) && to != from
        }
    }
}

/// A legal decomposition: grid entries in chain order (largest value first)
/// summing to the represented integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    entries: Vec<(GridPos, u64)>,
}

impl Decomposition {
    pub fn entries(&self) -> &[(GridPos, u64)] {
        &self.entries
    }

    pub fn values(&self) -> Vec<u64> {
        self.entries.iter().map(|&(_, v)| v).collect()
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, v)| v).sum()
    }

    /// Checks the chain rule between consecutive entries.
    pub fn is_legal_chain(&self, kind: SequenceKind, dim: u8) -> bool {
        !self.entries.is_empty()
            && self
                .entries
                .windows(2)
                .all(|w| chain_step_ok(kind, dim, w[0].0, w[1].0))
    }
}

/// A partially built simple or compound Zeckendorf diagonal sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceGrid {
    kind: SequenceKind,
    dim: u8,
    entries: Vec<(GridPos, u64)>,
    next_candidate: u64,
}

impl SequenceGrid {
    pub fn new(kind: SequenceKind, dim: u8) -> Self {
        assert!(dim == 1 || dim == 2, "grids are one- or two-dimensional");
        SequenceGrid {
            kind,
            dim,
            entries: Vec::new(),
            next_candidate: 1,
        }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in insertion order (values strictly increasing).
    pub fn entries(&self) -> &[(GridPos, u64)] {
        &self.entries
    }

    pub fn value_at(&self, pos: GridPos) -> Option<u64> {
        self.entries
            .iter()
            .find(|&&(p, _)| p == pos)
            .map(|&(_, v)| v)
    }

    /// Values laid out as a map for table-style access.
    pub fn value_map(&self) -> BTreeMap<(u32, u32), u64> {
        self.entries
            .iter()
            .map(|&(p, v)| ((p.a, p.b), v))
            .collect()
    }

    /// The next natural number the builder will consider.
    pub fn next_candidate(&self) -> u64 {
        self.next_candidate
    }

    fn next_position(&self) -> GridPos {
        match self.dim {
            1 => GridPos::new(self.entries.len() as u32 + 1, 1),
            _ => diagonal_position(self.entries.len()),
        }
    }

    /// Grows the grid until it holds `target_terms` values.
    pub fn extend_to(&mut self, target_terms: usize) {
        while self.entries.len() < target_terms {
            let search = ChainSearch::new(self.kind, self.dim, &self.entries);
            let mut memo = HashSet::new();
            loop {
                let m = self.next_candidate;
                self.next_candidate += 1;
                if search.find_one(m, &mut memo).is_none() {
                    self.entries.push((self.next_position(), m));
                    break;
                }
            }
        }
    }

    /// A witness decomposition of `m` over the current grid, if one exists.
    pub fn find_decomposition(&self, m: u64) -> Option<Decomposition> {
        let search = ChainSearch::new(self.kind, self.dim, &self.entries);
        search.find_one(m, &mut HashSet::new())
    }

    pub fn is_representable(&self, m: u64) -> bool {
        self.find_decomposition(m).is_some()
    }

    /// Every legal decomposition of `m`, deduplicated by construction (each
    /// chain is discovered exactly once, in descending value order), sorted
    /// with the largest leading value first.
    pub fn decompositions(&self, m: u64) -> Vec<Decomposition> {
        let search = ChainSearch::new(self.kind, self.dim, &self.entries);
        search.find_all(m)
    }

    pub fn to_snapshot(&self) -> GridSnapshot {
        GridSnapshot {
            kind: self.kind,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|&(p, v)| SnapshotEntry {
                    a: p.a,
                    b: if self.dim == 1 { None } else { Some(p.b) },
                    value: v,
                })
                .collect(),
            next_candidate: self.next_candidate,
        }
    }

    /// Validates and adopts a snapshot.
    pub fn from_snapshot(snapshot: &GridSnapshot) -> Result<Self> {
        if snapshot.dim != 1 && snapshot.dim != 2 {
            return Err(Error::InvalidSnapshot {
                reason: format!("dim must be 1 or 2, got {}", snapshot.dim),
            });
        }
        let mut grid = SequenceGrid::new(snapshot.kind, snapshot.dim);
        let mut last_value = 0u64;
        for (i, entry) in snapshot.entries.iter().enumerate() {
            let pos = match (snapshot.dim, entry.b) {
                (1, None) | (1, Some(1)) => GridPos::new(entry.a, 1),
                (1, Some(b)) => {
                    return Err(Error::InvalidSnapshot {
                        reason: format!("one-dimensional entry with b = {b}"),
                    })
                }
                (_, Some(b)) => GridPos::new(entry.a, b),
                (_, None) => {
                    return Err(Error::InvalidSnapshot {
                        reason: "two-dimensional entry without b".into(),
                    })
                }
            };
            let expected = grid.next_position();
            if pos != expected {
                return Err(Error::InvalidSnapshot {
                    reason: format!(
                        "entry {i} at ({}, {}) violates the diagonal fill order; expected ({}, {})",
                        pos.a, pos.b, expected.a, expected.b
                    ),
                });
            }
            if entry.value <= last_value {
                return Err(Error::InvalidSnapshot {
                    reason: format!("values must strictly increase; entry {i} is {}", entry.value),
                });
            }
            if i == 0 && entry.value != 1 {
                return Err(Error::InvalidSnapshot {
                    reason: "the first admitted value is always 1".into(),
                });
            }
            last_value = entry.value;
            grid.entries.push((pos, entry.value));
        }
        if snapshot.next_candidate <= last_value {
            return Err(Error::InvalidSnapshot {
                reason: "next_candidate must exceed the last admitted value".into(),
            });
        }
        grid.next_candidate = snapshot.next_candidate;
        Ok(grid)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_snapshot())?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let snapshot: GridSnapshot = serde_json::from_str(json)?;
        Self::from_snapshot(&snapshot)
    }
}

/// Builds the first `target_terms` values of the chosen sequence from
/// scratch.
pub fn build_sequence(kind: SequenceKind, dim: u8, target_terms: usize) -> SequenceGrid {
    let mut grid = SequenceGrid::new(kind, dim);
    grid.extend_to(target_terms);
    grid
}

/// Lossless JSON form of a grid, also the `--resume` format of the CLI.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GridSnapshot {
    pub kind: SequenceKind,
    pub dim: u8,
    pub entries: Vec<SnapshotEntry>,
    pub next_candidate: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SnapshotEntry {
    pub a: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    pub value: u64,
}

/// Frozen view of the grid wired for decomposition search.
struct ChainSearch {
    /// Entries in descending value order.
    order: Vec<(GridPos, u64)>,
    /// `succ[i]`: indices of entries that may follow entry `i` in a chain.
    succ: Vec<Vec<usize>>,
    /// Total value reachable strictly below entry `i` (upper bound on what a
    /// chain can still collect after visiting `i`).
    reachable_sum: Vec<u64>,
}

impl ChainSearch {
    fn new(kind: SequenceKind, dim: u8, entries: &[(GridPos, u64)]) -> Self {
        let mut order: Vec<(GridPos, u64)> = entries.to_vec();
        order.sort_by(|x, y| y.1.cmp(&x.1));
        let succ: Vec<Vec<usize>> = order
            .iter()
            .map(|&(from, _)| {
                order
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(to, _))| chain_step_ok(kind, dim, from, to))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        let reachable_sum: Vec<u64> = succ
            .iter()
            .map(|js| {
                js.iter()
                    .fold(0u64, |acc, &j| acc.saturating_add(order[j].1))
            })
            .collect();
        ChainSearch {
            order,
            succ,
            reachable_sum,
        }
    }

    fn find_one(&self, m: u64, memo_fail: &mut HashSet<(usize, u64)>) -> Option<Decomposition> {
        for (i, &(_, v)) in self.order.iter().enumerate() {
            if v > m {
                continue;
            }
            if v == m {
                return Some(self.decomposition(&[i]));
            }
            if self.reachable_sum[i] >= m - v {
                let mut chain = vec![i];
                if self.descend(i, m - v, &mut chain, memo_fail) {
                    return Some(self.decomposition(&chain));
                }
            }
        }
        None
    }

    fn descend(
        &self,
        anchor: usize,
        remaining: u64,
        chain: &mut Vec<usize>,
        memo_fail: &mut HashSet<(usize, u64)>,
    ) -> bool {
        if memo_fail.contains(&(anchor, remaining)) {
            return false;
        }
        for &j in &self.succ[anchor] {
            let v = self.order[j].1;
            if v > remaining {
                continue;
            }
            if v == remaining {
                chain.push(j);
                return true;
            }
            if self.reachable_sum[j] >= remaining - v {
                chain.push(j);
                if self.descend(j, remaining - v, chain, memo_fail) {
                    return true;
                }
                chain.pop();
            }
        }
        memo_fail.insert((anchor, remaining));
        false
    }

    fn find_all(&self, m: u64) -> Vec<Decomposition> {
        let mut out = Vec::new();
        for (i, &(_, v)) in self.order.iter().enumerate() {
            if v > m {
                continue;
            }
            if v == m {
                out.push(self.decomposition(&[i]));
                continue;
            }
            if self.reachable_sum[i] >= m - v {
                let mut chain = vec![i];
                self.collect_all(i, m - v, &mut chain, &mut out);
            }
        }
        out
    }

    fn collect_all(
        &self,
        anchor: usize,
        remaining: u64,
        chain: &mut Vec<usize>,
        out: &mut Vec<Decomposition>,
    ) {
        for &j in &self.succ[anchor] {
            let v = self.order[j].1;
            if v > remaining {
                continue;
            }
            if v == remaining {
                chain.push(j);
                out.push(self.decomposition(chain));
                chain.pop();
                continue;
            }
            if self.reachable_sum[j] >= remaining - v {
                chain.push(j);
                self.collect_all(j, remaining - v, chain, out);
                chain.pop();
            }
        }
    }

    fn decomposition(&self, chain: &[usize]) -> Decomposition {
        Decomposition {
            entries: chain.iter().map(|&i| self.order[i]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_positions_walk_antidiagonals() {
        let expected = [
            (1, 1),
            (2, 1),
            (1, 2),
            (3, 1),
            (2, 2),
            (1, 3),
            (4, 1),
            (3, 2),
            (2, 3),
            (1, 4),
        ];
        for (i, &(a, b)) in expected.iter().enumerate() {
            assert_eq!(diagonal_position(i), GridPos::new(a, b), "index {i}");
        }
    }

    #[test]
    fn one_dimensional_sequence_is_powers_of_two() {
        let grid = build_sequence(SequenceKind::Simple, 1, 10);
        let values: Vec<u64> = grid.entries().iter().map(|&(_, v)| v).collect();
        assert_eq!(values, vec![1, 2, 4, 8, 16, 32, 64, 128, 256, 512]);
    }

    #[test]
    fn compound_equals_simple_in_one_dimension() {
        let simple = build_sequence(SequenceKind::Simple, 1, 12);
        let compound = build_sequence(SequenceKind::Compound, 1, 12);
        assert_eq!(simple.entries(), compound.entries());
    }

    #[test]
    fn simple_grid_first_diagonals() {
        let grid = build_sequence(SequenceKind::Simple, 2, 10);
        let map = grid.value_map();
        assert_eq!(map[&(1, 1)], 1);
        assert_eq!(map[&(2, 1)], 2);
        assert_eq!(map[&(1, 2)], 3);
        assert_eq!(map[&(3, 1)], 4);
        assert_eq!(map[&(2, 2)], 5);
        assert_eq!(map[&(1, 3)], 7);
        assert_eq!(map[&(4, 1)], 8);
        assert_eq!(map[&(3, 2)], 9);
    }

    #[test]
    fn compound_grid_first_diagonals() {
        let grid = build_sequence(SequenceKind::Compound, 2, 10);
        let map = grid.value_map();
        assert_eq!(map[&(1, 1)], 1);
        assert_eq!(map[&(2, 1)], 2);
        assert_eq!(map[&(1, 2)], 4);
        assert_eq!(map[&(3, 1)], 6);
        assert_eq!(map[&(2, 2)], 10);
        assert_eq!(map[&(1, 3)], 16);
    }

    #[test]
    fn witnesses_for_small_integers() {
        let mut grid = build_sequence(SequenceKind::Simple, 2, 5); // up to (2,2) = 5
        let witness = grid.find_decomposition(6).unwrap();
        assert_eq!(witness.values(), vec![5, 1]);
        assert_eq!(witness.entries()[0].0, GridPos::new(2, 2));
        assert_eq!(witness.entries()[1].0, GridPos::new(1, 1));
        assert!(witness.is_legal_chain(SequenceKind::Simple, 2));

        grid = build_sequence(SequenceKind::Simple, 2, 1);
        let unit = grid.find_decomposition(1).unwrap();
        assert_eq!(unit.values(), vec![1]);
    }

    #[test]
    fn greedy_soundness_on_replay() {
        for kind in [SequenceKind::Simple, SequenceKind::Compound] {
            let built = build_sequence(kind, 2, 15);
            let admitted: Vec<u64> = built.entries().iter().map(|&(_, v)| v).collect();
            let mut replay = SequenceGrid::new(kind, 2);
            for m in 1..built.next_candidate() {
                let decomposable = !replay.decompositions(m).is_empty();
                if admitted.contains(&m) {
                    assert!(!decomposable, "{kind:?}: admitted {m} was representable");
                    replay.extend_to(replay.len() + 1);
                    assert_eq!(replay.entries().last().unwrap().1, m);
                } else {
                    assert!(decomposable, "{kind:?}: skipped {m} was not representable");
                }
            }
        }
    }

    #[test]
    fn insertion_values_strictly_increase() {
        for kind in [SequenceKind::Simple, SequenceKind::Compound] {
            let grid = build_sequence(kind, 2, 21);
            let values: Vec<u64> = grid.entries().iter().map(|&(_, v)| v).collect();
            assert!(values.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn decomposition_chains_are_legal_and_sum() {
        let grid = build_sequence(SequenceKind::Compound, 2, 21);
        for m in 1..grid.next_candidate() {
            for dec in grid.decompositions(m) {
                assert!(dec.is_legal_chain(SequenceKind::Compound, 2));
                assert_eq!(dec.total(), m);
            }
        }
    }

    #[test]
    fn unrepresentable_targets_return_nothing() {
        let grid = build_sequence(SequenceKind::Simple, 2, 6);
        let sum_all: u64 = grid.entries().iter().map(|&(_, v)| v).sum();
        assert!(grid.decompositions(sum_all + 1000).is_empty());
        assert!(grid.find_decomposition(sum_all + 1000).is_none());
    }

    #[test]
    fn snapshot_round_trip() {
        let grid = build_sequence(SequenceKind::Compound, 2, 12);
        let json = grid.to_json().unwrap();
        let back = SequenceGrid::from_json(&json).unwrap();
        assert_eq!(grid, back);

        let one_d = build_sequence(SequenceKind::Simple, 1, 6);
        let json = one_d.to_json().unwrap();
        assert!(!json.contains("\"b\""));
        assert_eq!(SequenceGrid::from_json(&json).unwrap(), one_d);
    }

    #[test]
    fn snapshot_validation_rejects_corruption() {
        let grid = build_sequence(SequenceKind::Simple, 2, 6);
        let mut snapshot = grid.to_snapshot();
        snapshot.entries[3].value = snapshot.entries[2].value; // not increasing
        assert!(SequenceGrid::from_snapshot(&snapshot).is_err());

        let mut reordered = grid.to_snapshot();
        reordered.entries.swap(1, 2); // breaks the fill order
        assert!(SequenceGrid::from_snapshot(&reordered).is_err());

        let mut stale = grid.to_snapshot();
        stale.next_candidate = 1;
        assert!(SequenceGrid::from_snapshot(&stale).is_err());
    }

    #[test]
    fn resume_matches_fresh_build() {
        for kind in [SequenceKind::Simple, SequenceKind::Compound] {
            let mut partial = build_sequence(kind, 2, 8);
            partial.extend_to(15);
            assert_eq!(partial, build_sequence(kind, 2, 15));
        }
    }
}
