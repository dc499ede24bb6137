//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong when building meshes or schemes.
///
/// Offending values are reported as `f64` regardless of the scalar type in
/// use, which keeps the error type non-generic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least 3 background cells, got {0}")]
    TooFewCells(usize),
    #[error("alpha must lie in (0, 0.5], got {0}")]
    AlphaOutOfRange(f64),
    #[error("split coordinate {0} does not lie on a background cell boundary in [0, 1)")]
    SplitOffGrid(f64),
    #[error("velocity beta must be positive, got {0}")]
    NonPositiveVelocity(f64),
    #[error("CFL number lambda must lie in (0, 1), got {0}")]
    CflOutOfRange(f64),
    #[error("eta {0} lies outside [0, 1]; use the forced assembly to override")]
    EtaOutOfRange(f64),
    #[error("state carries {state} values but the mesh has {expected} cells")]
    DimensionMismatch { state: usize, expected: usize },
    #[error("custom profile needs at least one sample")]
    EmptyProfile,
}

pub type Result<T> = std::result::Result<T, Error>;
