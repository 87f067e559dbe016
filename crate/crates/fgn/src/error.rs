//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong outside of caller programming errors
/// (which are `panic!`/`assert!`ed as usual).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FgnError {
    /// Hurst parameter outside `[0, 1]` or non-finite.
    #[error("Hurst parameter must be finite and in [0, 1], got {0}")]
    InvalidHurst(f64),

    /// The fGn covariance matrix is singular at h = 1 (all ρ_k = 1).
    #[error("operation is undefined in the degenerate regime h = 1")]
    SingularRegime,

    /// A nonpositive pivot arose during Cholesky factorization. This signals
    /// numerical breakdown; it must not occur for valid h < 1.
    #[error("Cholesky factorization failed (nonpositive pivot)")]
    FactorizationFailure,

    /// The Cramer determinant path is limited to small orders.
    #[error("Cramer path supports n <= 13, got n = {0}")]
    OrderTooLarge(usize),

    /// Discrete difference order above the usable cap (rounding-error
    /// amplification grows as 2^j).
    #[error("difference order is capped at 12, got {0}")]
    OrderTooHigh(usize),

    /// The prediction-error denominator 1 − Σ Γₙᵏ ρ_{k−1} collapsed;
    /// happens only in the closest vicinity of h = 1.
    #[error("prediction-error denominator below 1e-14 while extending to order {order}")]
    DegenerateDenominator { order: usize },

    /// Argument outside the documented domain of the function.
    #[error("argument {value} outside the domain {domain}")]
    DomainError { value: f64, domain: &'static str },

    /// The series seed c₀ = 2H(2H−1) vanishes at h = ½; the η series is
    /// undefined there.
    #[error("series seed c0 = 2H(2H-1) vanishes; eta series undefined at h = 1/2")]
    DegenerateC0,

    /// The sample Gram matrix of the least-squares recovery is numerically
    /// singular.
    #[error("sample Gram matrix ill-conditioned: pivot {pivot:.3e} below 1e-10")]
    IllConditioned { pivot: f64 },

    /// The requested property check is vacuous or undefined at this h.
    #[error("property check not applicable at h = {0}")]
    NotApplicable(f64),
}

pub type Result<T> = std::result::Result<T, FgnError>;
