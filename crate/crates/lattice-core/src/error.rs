use thiserror::Error;

/// Errors produced by chain construction and spectral computations.
#[derive(Debug, Error)]
pub enum LatticeError {
    /// The periodic chain needs at least three particles.
    #[error("chain dimension must be at least 3, got {0}")]
    InvalidDimension(usize),

    /// Inverse masses must be positive finite reals.
    #[error("inverse mass a[{index}] = {value} is not positive and finite")]
    NonPositiveMass { index: usize, value: f64 },

    /// The eigensolver only accepts square matrices.
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// The eigensolver only accepts symmetric matrices.
    #[error("matrix is not symmetric: max |M - M^T| = {asymmetry:.3e} exceeds {tolerance:.3e}")]
    NotSymmetric { asymmetry: f64, tolerance: f64 },

    /// The Jacobi sweep limit was reached before the off-diagonal norm
    /// dropped below the convergence target.
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),

    /// A valid chain spectrum has exactly one near-zero eigenvalue.
    #[error("expected exactly one near-zero eigenvalue, found {0}")]
    ZeroModeCount(usize),

    /// The closed-form eigenvector formula divides by `2 - lambda/a_j`.
    #[error("eigenvector formula singular: lambda = {lambda} matches 2*a[{index}]")]
    SingularFormula { lambda: f64, index: usize },

    /// The closed-form eigenvector failed its residual check, so the
    /// requested value is not an eigenvalue of `A_4 C_4`.
    #[error("lambda = {lambda} is not an eigenvalue: residual {residual:.3e}")]
    NotAnEigenvalue { lambda: f64, residual: f64 },

    /// Vector arguments must match the chain dimension.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// Some operations are only defined for the four-particle chain.
    #[error("operation requires n = 4, got n = {0}")]
    RequiresFour(usize),
}
