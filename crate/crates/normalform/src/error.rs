use thiserror::Error;

/// Failures of the averaged-system constructions.
#[derive(Debug, Error)]
pub enum NormalFormError {
    /// A parameter left the region where the construction is defined.
    #[error("{name} = {value} is outside the domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// An amplitude is too close to a coordinate plane, where the
    /// combination angles are undefined.
    #[error("amplitude r{index} = {value} lies on a coordinate plane")]
    CoordinatePlane { index: usize, value: f64 },

    /// The third normal mode is an invariant plane only when the
    /// `x3^2 x2` coupling vanishes.
    #[error("the third mode is not invariant when d9 = {d9} differs from zero")]
    ModeNotInvariant { d9: f64 },

    /// A coefficient that must be divided by is too close to zero.
    #[error("{name} = {value} is too close to zero")]
    DegenerateParameter { name: &'static str, value: f64 },

    /// The eigenvalue pattern fits none of the four stability classes.
    #[error("eigenvalues fit no stability class: {detail}")]
    UnclassifiedSpectrum { detail: String },

    /// Mode-coupling coefficients could not be evaluated.
    #[error(transparent)]
    Transform(#[from] eigenmode_transform::TransformError),
}
