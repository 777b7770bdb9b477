use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix entry was NaN or infinite.
    #[error("matrix contains a non-finite entry")]
    NonFiniteEntry,

    /// The matrix is not symmetric beyond the admitted floating-point slack.
    #[error("matrix is not symmetric: max |V - V^T| = {asymmetry:.3e} exceeds 1e-12")]
    NotSymmetric { asymmetry: f64 },

    /// The uncertainty principle is violated: V + (i/2)Omega has a negative
    /// eigenvalue, so no quantum state has this covariance matrix.
    #[error("unphysical covariance matrix: min eigenvalue of V + (i/2)\u{03a9} is {min_eigenvalue:.6e}")]
    Unphysical { min_eigenvalue: f64 },

    /// The covariance matrix cannot be inverted.
    #[error("singular covariance matrix: det V = {det:.6e}")]
    SingularCovariance { det: f64 },

    /// Standard-form parameters outside the representable range.
    #[error("invalid standard form: {reason}")]
    InvalidStandardForm { reason: String },

    /// A 2x2 block submitted as a single-mode symplectic does not have
    /// determinant one.
    #[error("matrix block is not symplectic: det = {det} (want 1 within 1e-12)")]
    NotSymplectic { det: f64 },

    /// An argument to a sampler or scan was out of range.
    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    /// An intermediate quantity left its mathematically guaranteed domain,
    /// which signals that an unphysical input slipped through validation.
    #[error("numerical domain error in {context}: offending value {value:.6e}")]
    NumericalDomain { context: &'static str, value: f64 },

    /// Rejection sampling failed to produce a state within the attempt budget.
    #[error("sampler starved: {accepted} accepted after {attempts} attempts")]
    SamplerStarvation { accepted: u64, attempts: u64 },

    /// A verification pass found a point violating one of the inequalities it
    /// checks.
    #[error("inequality violated: {0}")]
    InequalityViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
