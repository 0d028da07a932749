use thiserror::Error;

/// Errors produced by the inverse (fiber) computations.
#[derive(Debug, Error)]
pub enum FiberError {
    /// Ratio components must be positive integers.
    #[error("ratio components must be positive, got {0}:{1}:{2}")]
    InvalidRatio(u32, u32, u32),

    /// A ratio string must look like `n1:n2:n3`.
    #[error("cannot parse {0:?} as a frequency ratio n1:n2:n3")]
    RatioParse(String),

    /// A scalar argument left its admissible range.
    #[error("{name} = {value} is outside the domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// On the line `eta = 4 xi + 3/16` the pair-sum/pair-product scheme
    /// does not determine the masses; the solver refuses these inputs
    /// instead of returning incomplete answers.
    #[error(
        "(xi, eta) = ({xi}, {eta}) lies on the line eta = 4 xi + 3/16 \
         where the solution scheme is incomplete"
    )]
    ExceptionalLine { xi: f64, eta: f64 },

    /// Spherical angles are undefined at the equal-mass centre where all
    /// ellipsoid coordinates vanish.
    #[error("spherical angles undefined: all ellipsoid coordinates are zero (equal masses)")]
    UndefinedAngles,

    /// Fiber points live on the hyperplane `2 sum(a) = 1`.
    #[error("point is not on the hyperplane 2 sum(a) = 1: got 2 sum(a) = {0}")]
    NotNormalized(f64),

    /// Errors bubbled up from the spectral routines.
    #[error(transparent)]
    Lattice(#[from] lattice_core::LatticeError),
}
