//! Averaged dynamics of the `1:2:3` resonant eigenmode system.
//!
//! Along the resonant mass curve the three oscillators have frequencies
//! `(3, 2, 1)` after time rescaling, and the cubic coupling reduces to
//! the two resonant terms `14 eps (d6 x1 x2 x3 + d9 x3^2 x2)`.
//! Averaging over the fast linear flow leaves a Hamiltonian system for
//! the slow amplitude and phase deformations.  This crate works in two
//! charts of that averaged system:
//!
//! * co-moving pairs `(y1, y2, z1, z2, u1, u2)`, the `(x_i, v_i)` pairs
//!   frozen at time zero, turned by [`nf_comoving_rhs`]; and
//! * amplitude and combination-angle variables `(r1, r2, r3, chi1,
//!   chi2)` of [`PolarState`], turned by [`nf_polar_rhs`], in which the
//!   conserved quantities of [`nf_integrals`] are plain algebra.
//!
//! On each energy level the flow organises around distinguished
//! solutions, all constructed here:
//!
//! * the three normal modes, with transverse linearizations
//!   [`mode1_matrix`], [`mode2_matrix`], [`mode3_matrix`] classified by
//!   [`normal_mode_stability`];
//! * the [`edge_family`] interpolating between the first and third
//!   mode, with its six-dimensional linearization [`edge_matrix`];
//! * without the detuning coupling (`d9 = 0`), a curve of invariant
//!   2-tori from [`case0_torus`]; and
//! * with detuning, the four isolated periodic orbits in general
//!   position found by [`find_periodic_general`].
//!
//! The second mode is the delicate one: its doubled elliptic exponent
//! pair sits exactly at a Hamiltonian-Hopf configuration when `d9 = 0`
//! and splits into a complex quartet for any nonzero detuning, which
//! [`hopf_scan`] traces along the mass curve.

mod chart;
mod error;
mod periodic;
mod rhs;
mod stability;
mod tori;

pub use chart::{
    amplitudes, comoving_from_modal, comoving_to_polar, modal_from_comoving, mode1_comoving,
    mode2_comoving, mode3_comoving, nf_integrals, polar_to_comoving, NfIntegrals, PolarState,
    MODE_FREQUENCIES, PLANE_TOL, THIRD_INTEGRAL_TOL,
};
pub use error::NormalFormError;
pub use periodic::{edge_family, find_periodic_general, EdgeEquilibrium, PeriodicSolution};
pub use rhs::{comoving_jacobian, nf_comoving_rhs, nf_polar_rhs};
pub use stability::{
    classify, crosscheck_spectrum, edge_matrix, hopf_scan, mode1_matrix, mode2_lambda_squared,
    mode2_matrix, mode3_matrix, normal_mode_stability, spectrum_distance, Eigenvalue,
    HopfScanPoint, InvariantFamily, StabilityClass, StabilityReport,
};
pub use tori::{case0_torus, case0_torus_family, torus_residual, Case0Torus};
