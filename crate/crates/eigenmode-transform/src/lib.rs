//! Symplectic eigenmode coordinates for the four-particle cyclic chain.
//!
//! For a chain with inverse-mass matrix `A` and coupling matrix `C`, the
//! quadratic part of the Hamiltonian is `(1/2) p^T A p + (1/2) q^T C q`.
//! A matrix `K` with `K^T A K = I` whose columns span the eigenspaces of
//! `A C` turns the point transform
//!
//! ```text
//! x = K^T q,    y = L^T p,    L = A K
//! ```
//!
//! into a canonical change of coordinates in which the quadratic part
//! becomes a sum of decoupled oscillators,
//! `(1/2) sum_i (y_i^2 + lambda_i x_i^2)`, with `lambda_i` the
//! eigenvalues of `A C`.  The fourth mode has `lambda_4 = 0` and carries
//! the conserved total momentum; the interesting dynamics lives in the
//! first three modes.
//!
//! This crate provides the transform along two routes:
//!
//! * [`transform_numeric`] diagonalises `A^(1/2) C A^(1/2)` for any
//!   positive inverse masses with simple spectrum, and
//! * [`transform_closed_form`] evaluates the explicit matrix `L(u)`
//!   along the one-parameter mass curve of [`fiber_solver::fiber123`],
//!   where the positive eigenvalues are `9/14, 4/14, 1/14` and the
//!   linearised frequencies are in the ratio `3:2:1`.
//!
//! It also expands the chain's cubic interaction
//! `epsilon (alpha/3) sum_j (q_{j+1} - q_j)^3` in the eigenmode
//! coordinates, producing the ten coefficients of the cubic polynomial
//! in `(x_1, x_2, x_3)` that drive the resonant energy exchange:
//! [`cubic_from_transform`] extracts them from any transform matrix, and
//! [`cubic_from_table`] evaluates their closed forms along the mass
//! curve.

mod cubic;
mod error;
mod transform;

pub use cubic::{cubic_from_table, cubic_from_transform, CubicCoefficients};
pub use error::TransformError;
pub use transform::{transform_closed_form, transform_numeric, TransformPair};
