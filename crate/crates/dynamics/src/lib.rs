//! Trajectory integration and diagnostics for the resonant lattice
//! systems.
//!
//! Four right-hand sides share one interface: the periodic nonlinear
//! chain itself, its exact modal form with the full set of ten cubic
//! couplings, the intermediate form that keeps only the two resonant
//! couplings, and an externally published 1:2:3 comparison system with
//! the opposite frequency ordering. All of them split their state into
//! positions followed by velocities.
//!
//! Two integrators are provided. The workhorse is an adaptive
//! Dormand-Prince 5(4) pair with dense output, so trajectories are
//! sampled on an exact user grid rather than on the adaptive steps. A
//! fixed-step velocity Verlet scheme serves as an independent
//! symplectic cross-check. Each sampled state is wrapped in a record
//! carrying the conserved quantities that make long-run accuracy
//! visible: total and quadratic energy, total momentum for the chain,
//! and the action of each normal mode.
//!
//! Deterministic Halton-sequence ensembles around the mode vertices of
//! an energy shell, projected onto the normalized action simplex,
//! reproduce the bundle and dispersal pictures that distinguish the
//! stable and unstable regimes of the resonance.

mod dopri5;
mod ensemble;
mod error;
mod leapfrog;
mod preset;
mod system;

pub use dopri5::{dopri5, sample_schedule, IntegratorOptions, Trajectory};
pub use ensemble::{
    default_spread, ensemble_simplex, ensemble_states, halton, simplex_of, EnsembleSpec,
    SimplexSnapshot,
};
pub use error::DynamicsError;
pub use leapfrog::leapfrog;
pub use preset::{preset, Preset, A_CASE0, PRESET_NAMES, U_CASE0, U_CASE1, U_CASE2};
pub use system::{
    chain_actions, integrate, trajectory_records, System, SystemSpec, TrajectoryRecord,
    COMPARISON_FREQUENCIES, MODAL_FREQUENCIES,
};
