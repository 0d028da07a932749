use nalgebra::DMatrix;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::LatticeError;

/// Maximum number of Jacobi sweeps before giving up.  For the dimensions
/// used here (`n <= 8`) convergence takes well under ten sweeps.
const MAX_SWEEPS: usize = 60;

/// Eigen-decomposition `M = U diag(lambda) U^T` of a symmetric matrix.
///
/// Eigenvalues are sorted in descending order; the columns of `U` are the
/// matching orthonormal eigenvectors with a canonical sign (first component
/// of visible magnitude is positive), so identical input yields identical
/// output.
#[derive(Debug, Clone)]
pub struct SymmetricEigenResult {
    /// Eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Orthogonal matrix whose columns pair with `eigenvalues`.
    pub u: DMatrix<f64>,
}

impl Serialize for SymmetricEigenResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SymmetricEigenResult", 2)?;
        s.serialize_field("eigenvalues", &self.eigenvalues)?;
        s.serialize_field("eigenvectors", &crate::rows_of(&self.u))?;
        s.end()
    }
}

/// Frobenius norm of the off-diagonal part.
fn off_diagonal_norm(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)] * m[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Applies one Jacobi rotation in the `(p, q)` plane, annihilating the
/// off-diagonal entry `a_pq`, and accumulates the rotation into `u`.
fn rotate(a: &mut DMatrix<f64>, u: &mut DMatrix<f64>, p: usize, q: usize) {
    let n = a.nrows();
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    let app = a[(p, p)];
    let aqq = a[(q, q)];
    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        a[(r, p)] = arp - s * (arq + tau * arp);
        a[(p, r)] = a[(r, p)];
        a[(r, q)] = arq + s * (arp - tau * arq);
        a[(q, r)] = a[(r, q)];
    }
    for r in 0..n {
        let urp = u[(r, p)];
        let urq = u[(r, q)];
        u[(r, p)] = urp - s * (urq + tau * urp);
        u[(r, q)] = urq + s * (urp - tau * urq);
    }
}

/// Flips each column of `u` so that its first component of visible
/// magnitude is positive.  This makes the decomposition canonical.
fn canonical_signs(u: &mut DMatrix<f64>) {
    let n = u.nrows();
    for j in 0..n {
        let mut lead = 0.0;
        for i in 0..n {
            if u[(i, j)].abs() > 1e-8 {
                lead = u[(i, j)];
                break;
            }
        }
        if lead < 0.0 {
            for i in 0..n {
                u[(i, j)] = -u[(i, j)];
            }
        }
    }
}

/// Diagonalises a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps run in fixed row-major order over the index pairs `p < q`.  The
/// first few sweeps skip entries below a threshold proportional to the
/// remaining off-diagonal mass, after which every nonzero entry is rotated
/// away.  Iteration stops when the off-diagonal Frobenius norm falls below
/// `1e-14` times the Frobenius norm of the input.
///
/// Returns eigenvalues sorted descending with canonically signed
/// orthonormal eigenvector columns.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> Result<SymmetricEigenResult, LatticeError> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return Err(LatticeError::NotSquare {
            rows: n,
            cols: m.ncols(),
        });
    }
    let scale = m.amax().max(1.0);
    let mut asymmetry = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            asymmetry = asymmetry.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    let sym_tol = 1e-12 * scale;
    if asymmetry > sym_tol {
        return Err(LatticeError::NotSymmetric {
            asymmetry,
            tolerance: sym_tol,
        });
    }

    let mut a = DMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let mut u = DMatrix::identity(n, n);
    let target = 1e-14 * a.norm();

    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= target {
            converged = true;
            break;
        }
        let threshold = if sweep < 3 {
            0.2 * off / ((n * n) as f64)
        } else {
            0.0
        };
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                if a[(p, q)].abs() > threshold {
                    rotate(&mut a, &mut u, p, q);
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(LatticeError::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].partial_cmp(&a[(i, i)]).expect("finite eigenvalues"));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut sorted_u = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        sorted_u.set_column(dst, &u.column(src));
    }
    canonical_signs(&mut sorted_u);

    Ok(SymmetricEigenResult {
        eigenvalues,
        u: sorted_u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    #[test]
    fn identity_is_fixed_point() {
        let m = DMatrix::identity(4, 4);
        let r = symmetric_eigen(&m).unwrap();
        assert_eq!(r.eigenvalues, vec![1.0; 4]);
        assert_eq!(r.u, DMatrix::identity(4, 4));
    }

    #[test]
    fn diagonal_matrix_sorts_descending() {
        let m = DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 1.0]);
        let r = symmetric_eigen(&m).unwrap();
        assert_eq!(r.eigenvalues, vec![3.0, 1.0]);
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]);
        assert!(matches!(
            symmetric_eigen(&m),
            Err(LatticeError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn coupling_ring_of_four() {
        let c = crate::build_coupling(4).unwrap();
        let r = symmetric_eigen(c.matrix()).unwrap();
        let expected = [4.0, 2.0, 2.0, 0.0];
        for (got, want) in r.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-13, "got {got}, want {want}");
        }
    }

    #[test]
    fn circulant_eigenvalues_match_cosine_formula() {
        for n in 3..=8 {
            let c = crate::build_coupling(n).unwrap();
            let r = symmetric_eigen(c.matrix()).unwrap();
            let mut expected: Vec<f64> = (0..n)
                .map(|k| 2.0 - 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
                .collect();
            expected.sort_by(|x, y| y.partial_cmp(x).unwrap());
            for (got, want) in r.eigenvalues.iter().zip(expected) {
                assert!((got - want).abs() < 1e-12, "n={n}: got {got}, want {want}");
            }
        }
    }

    #[test]
    fn reconstruction_and_orthogonality() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 3..=8 {
            for _ in 0..50 {
                let raw = DMatrix::from_fn(n, n, |_, _| rng.random_range(-2.0..2.0));
                let m = &raw * raw.transpose();
                let r = symmetric_eigen(&m).unwrap();
                let lam = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(
                    &r.eigenvalues,
                ));
                let rebuilt = &r.u * lam * r.u.transpose();
                let err = (&m - rebuilt).amax();
                assert!(err <= 1e-11 * m.amax(), "reconstruction error {err}");
                let gram = r.u.transpose() * &r.u;
                assert!((gram - DMatrix::identity(n, n)).amax() < 1e-12);
            }
        }
    }

    #[test]
    fn deterministic_output() {
        let c = crate::build_coupling(5).unwrap();
        let r1 = symmetric_eigen(c.matrix()).unwrap();
        let r2 = symmetric_eigen(c.matrix()).unwrap();
        assert_eq!(r1.eigenvalues, r2.eigenvalues);
        assert_eq!(r1.u, r2.u);
    }
}
