use thiserror::Error;

/// Failures of the eigenmode construction.
#[derive(Debug, Error)]
pub enum TransformError {
    /// The curve parameter left the interval where the closed forms are
    /// real and the masses positive.
    #[error("{name} = {value} is outside the domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// Two eigenvalues coincide, so the eigenmode basis is not unique.
    #[error("eigenvalues {first} and {second} coincide within {tolerance}")]
    EigenvalueCollision {
        first: f64,
        second: f64,
        tolerance: f64,
    },

    /// The zero-mode column of the transform is not constant, so the
    /// matrix does not diagonalise a momentum-conserving chain.
    #[error(
        "zero-mode column varies by {residual:e} (tolerance {tolerance:e}); \
         the transform does not preserve total momentum"
    )]
    InconsistentTransform { residual: f64, tolerance: f64 },

    /// Underlying spectral computation failed.
    #[error(transparent)]
    Lattice(#[from] lattice_core::LatticeError),

    /// Underlying mass-curve evaluation failed.
    #[error(transparent)]
    Fiber(#[from] fiber_solver::FiberError),
}
