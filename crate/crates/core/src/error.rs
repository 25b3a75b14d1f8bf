//! Crate-wide error type.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by tensor algebra, Hankel maps, solvers and evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The delay embedding length is outside `1..=T`.
    #[error("tau = {tau} out of range, expected 1 <= tau <= {t}")]
    TauOutOfRange { tau: usize, t: usize },

    /// An observation mask with no observed entries.
    #[error("observation mask has no observed entries")]
    EmptyMask,

    /// Input contains NaN or infinite values where finite ones are required.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// A per-slice SVD or eigendecomposition failed to converge.
    #[error("numerical factorization failed on frontal slice {slice}")]
    FactorizationFailed { slice: usize },

    /// The inverse mode-3 DFT of a spectrum that is not conjugate-symmetric.
    #[error("inverse DFT input is not conjugate-symmetric (relative imaginary residue {residue:e})")]
    ImaginaryResidue { residue: f64 },

    /// A denominator that must be nonzero (e.g. `||P_Omega(M)||_F`) is zero.
    #[error("zero denominator in {0}")]
    ZeroDenominator(&'static str),
}
