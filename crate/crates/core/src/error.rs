//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by polynomial construction, grid certification, series
/// evaluation, and the verification harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial must contain at least one term")]
    EmptyPolynomial,

    #[error("term {index}: {reason}")]
    InvalidTerm { index: usize, reason: String },

    #[error("conjugation requires mean zero, got mean = {mean}")]
    NonzeroMean { mean: f64 },

    #[error("grid size {k} must be a power of two")]
    GridNotPowerOfTwo { k: usize },

    #[error("grid size {k} is too coarse: need K > {required} to resolve frequency {max_frequency} without aliasing")]
    GridTooCoarse {
        k: usize,
        required: usize,
        max_frequency: u32,
    },

    #[error(
        "p = {p} is out of range: the defining integral diverges at p = 1, so p > 1 is required"
    )]
    ExponentOutOfRange { p: f64 },

    #[error("x = {x} must be positive for series evaluation in the half-strip")]
    NonpositiveX { x: f64 },

    #[error("point (x, y) = ({x}, {y}) lies outside the closed half-strip")]
    OutsideStrip { x: f64, y: f64 },

    #[error("sup-norm hypothesis violated: B = {b} is below the certified lower bound {sup_lower} for the sup norm")]
    SupBoundViolated { b: f64, sup_lower: f64 },

    #[error("hypothesis violated: the mean {u_mean} is negative, but u >= 0 is required")]
    NegativeMean { u_mean: f64 },

    #[error("degenerate hypothesis: mean {u_mean} forces the conjugate to vanish, but its p-mean {pmean} exceeds the error margin {margin}")]
    DegenerateHypothesis {
        u_mean: f64,
        pmean: f64,
        margin: f64,
    },

    #[error("family size {n} exceeds the sweep cap {cap}")]
    SweepCapExceeded { n: u32, cap: u32 },

    #[error("sweep sizes must be powers of two, got {n}")]
    SweepSizeNotPowerOfTwo { n: u32 },

    #[error("family spec invalid: {reason}")]
    InvalidFamily { reason: String },

    #[error("x values must be positive and strictly decreasing")]
    InvalidRatioSequence,

    #[error("polynomial JSON invalid: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
