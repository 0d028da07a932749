//! Inverse problem for the four-particle ring: which inverse-mass vectors
//! realise a prescribed frequency ratio of the three nonzero modes?
//!
//! For a target ratio `n1:n2:n3` the positive eigenvalues of `A_4 C_4`
//! must be proportional to `(n1^2, n2^2, n3^2)`.  After scaling them to
//! sum to one, the two symmetric functions `xi = l1 l2 l3` and
//! `eta = l1 l2 + l2 l3 + l3 l1` pin the spectrum completely, and the set
//! of mass vectors realising it (the "fiber" of `(xi, eta)`) is a real
//! algebraic set in the hyperplane `2 (a1 + a2 + a3 + a4) = 1`.
//!
//! The solver walks the fiber with the one-parameter scheme in
//! pair sums and products: `eta2 = (a1 + a3)(a2 + a4)` parametrises the
//! fiber, and for each admissible `eta2` the four masses are recovered
//! from two quadratics.  Scanning `eta2` over `(0, 1/16)` classifies the
//! fiber into isolated points, open curves (a mass degenerates to zero at
//! an endpoint), or compact curves (the branches close up through the
//! discriminant loci), with bookkeeping for the dihedral symmetry `D_4`.
//!
//! The `1:2:3` resonance additionally has a closed-form branch
//! parametrised by `u` in `[0, u_1)`, implemented in [`fiber123`].

mod classify;
mod error;
mod fiber123;
mod point;
mod ratio;
mod region;
mod scheme;

pub use classify::{
    fiber_classify, EndpointKind, FiberBranch, FiberClassification, FiberKind, FiberTouch,
};
pub use error::FiberError;
pub use fiber123::{eta2_of_u, fiber123, u1, u_of_point};
pub use point::{spherical_coords, FiberPoint, SphericalCoords, Stabilizer};
pub use ratio::{target_spectrum, xi_eta, xi_eta_exact, Rational, ResonanceRatio, TargetSpectrum};
pub use region::{region_tests, region_tests_exact, t_invariant, t_invariant_exact, RegionReport};
pub use scheme::{solve_fiber_at, FiberParams};
