//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by the library. Solver termination reasons
/// (divergence, iteration cap) are not errors; they are reported through
/// [`crate::solver::SolveStatus`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gamma evaluated within `1e-12` of a pole (nonpositive integer).
    #[error("gamma pole: x = {x} is within 1e-12 of a nonpositive integer")]
    GammaPole { x: f64 },

    /// `z^w` with `z = 0` and `w < 0`.
    #[error("zero base raised to negative power {exponent}")]
    ZeroBase { exponent: f64 },

    /// Derivative order outside `[0, 2]` or too close to an integer.
    #[error("invalid derivative order {alpha}: must lie in [0, 2] at least {margin} from 0, 1, 2")]
    InvalidOrder { alpha: f64, margin: f64 },

    /// A configuration field failed validation.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Vector length does not match the problem dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Parallel chord slope must be nonzero.
    #[error("parallel chord slope must be nonzero")]
    ZeroSlope,

    /// Not enough trace data to fit a convergence order.
    #[error("insufficient trace: need at least {needed} {what}, got {got}")]
    InsufficientTrace {
        needed: usize,
        got: usize,
        what: &'static str,
    },

    /// A sign-change certificate failed on the listed components (0-based).
    #[error("bracket violation: components {components:?} have positive products")]
    BracketViolation { components: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;
