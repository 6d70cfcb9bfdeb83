//! Crate-wide error type.

use crate::exact::ExactInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Exhaustive enumeration refused because the instance has too many paths.
    #[error("enumeration of {total} paths exceeds the cap of {cap}; use sampling instead")]
    EnumerationCapExceeded { total: ExactInt, cap: u64 },

    /// The distribution is too small for the requested analysis.
    #[error("start point {start} is degenerate for this analysis; need start >= {min_start}")]
    DegenerateStart { start: u64, min_start: u64 },

    #[error("no paths were supplied")]
    EmptyPaths,

    #[error("paths mix dimensions {first} and {other}")]
    MixedDimensions { first: usize, other: usize },

    #[error("invalid jump path: {reason}")]
    InvalidPath { reason: String },

    #[error("invalid sequence grid snapshot: {reason}")]
    InvalidSnapshot { reason: String },

    #[error("snapshot JSON error: {0}")]
    SnapshotJson(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
