//! Matrices, spectra, and algebraic identities for a periodic chain of
//! `n` oscillators with position-dependent masses.
//!
//! The chain is described by the inverse masses `a_j = 1/m_j` collected in
//! the diagonal matrix `A_n` and by the cyclic coupling matrix `C_n` with
//! `2` on the diagonal and `-1` on the (cyclic) off-diagonals.  The product
//! `A_n C_n` governs the linearised dynamics; it has one zero eigenvalue
//! (uniform translation) and `n - 1` positive eigenvalues whose square
//! roots are the linear frequencies.
//!
//! Everything here is a pure function of its inputs.  Eigenvalue problems
//! are solved by a hand-rolled cyclic Jacobi iteration on the symmetric
//! conjugate `A^{1/2} C A^{1/2}`, which is exact enough for the small
//! dimensions (`n <= 8`) used throughout.

mod coupling;
mod eigen;
mod error;
mod masses;
mod spectrum;

pub use coupling::{build_coupling, CouplingMatrix};
pub use eigen::{symmetric_eigen, SymmetricEigenResult};
pub use error::LatticeError;
pub use masses::{char_poly_identities, dihedral_orbit, momentum, InverseMasses};
pub use spectrum::{eigenvector_closed_form, spectrum, Spectrum};

/// Serialises a matrix as nested row-major JSON arrays.
pub(crate) fn rows_of(m: &nalgebra::DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}
