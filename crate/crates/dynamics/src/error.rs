use thiserror::Error;

use crate::dopri5::Trajectory;

/// Errors raised while setting up or running an integration.
#[derive(Debug, Error)]
pub enum DynamicsError {
    /// A scalar parameter lies outside its admissible range.
    #[error("parameter {name} = {value} is outside its domain ({domain})")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A state vector does not have the length the system expects.
    #[error("state has length {got}, but the system is {expected}-dimensional")]
    DimensionMismatch { got: usize, expected: usize },

    /// Sample times must be finite and move monotonically from the
    /// initial time towards the final requested time.
    #[error("sample time {value} at index {index} breaks the monotone schedule starting at t0 = {t0}")]
    UnorderedSamples { t0: f64, index: usize, value: f64 },

    /// No preset is registered under the requested name.
    #[error("unknown preset {name:?}")]
    UnknownPreset { name: String },

    /// The error-controlled step size collapsed below the resolution of
    /// the time variable, which happens when the solution blows up in
    /// finite time.  The samples reached so far are retained.
    #[error("step size underflowed to {step:e} at t = {t}; {recorded} of {requested} samples were reached")]
    StepUnderflow {
        t: f64,
        step: f64,
        recorded: usize,
        requested: usize,
        partial: Trajectory,
    },

    /// The step budget ran out before the final time was reached.
    #[error("step budget of {max_steps} steps exhausted at t = {t}")]
    StepBudgetExhausted {
        t: f64,
        max_steps: usize,
        partial: Trajectory,
    },

    /// Failure while building an eigenmode transform for diagnostics.
    #[error(transparent)]
    Transform(#[from] eigenmode_transform::TransformError),
}
