use nalgebra::{DMatrix, DVector};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::{build_coupling, symmetric_eigen, InverseMasses, LatticeError};

/// Relative tolerance below which the structural zero eigenvalue is
/// recognised and snapped to exactly `0`.
const ZERO_TOL: f64 = 1e-10;

/// Spectrum of `A_n C_n`: one zero eigenvalue (uniform translation) and
/// `n - 1` positive ones.
///
/// Eigenvalues are sorted descending with the zero mode last, matching the
/// convention `diag(lambda_1, ..., lambda_{n-1}, 0)`.  Eigenvector columns
/// are unit vectors of `A_n C_n` (not orthogonal in general, since
/// `A_n C_n` is not symmetric); the zero-mode column is proportional to
/// `(1, ..., 1)`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Eigenvalues sorted descending, `eigenvalues[zero_index] == 0`.
    pub eigenvalues: Vec<f64>,
    /// Unit eigenvector columns of `A_n C_n`, paired with `eigenvalues`.
    pub eigenvectors: DMatrix<f64>,
    /// Position of the zero eigenvalue (always `n - 1`).
    pub zero_index: usize,
}

impl Spectrum {
    /// The `n - 1` positive eigenvalues, descending.
    pub fn positive(&self) -> &[f64] {
        &self.eigenvalues[..self.zero_index]
    }

    /// Linear frequencies: square roots of the positive eigenvalues.
    pub fn frequencies(&self) -> Vec<f64> {
        self.positive().iter().map(|l| l.sqrt()).collect()
    }

    /// Chain dimension.
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Spectrum", 3)?;
        s.serialize_field("eigenvalues", &self.eigenvalues)?;
        s.serialize_field("eigenvectors", &crate::rows_of(&self.eigenvectors))?;
        s.serialize_field("zero_index", &self.zero_index)?;
        s.end()
    }
}

/// Computes the spectrum of `A_n C_n` for the given inverse masses.
///
/// The eigenvalue problem is transported to the symmetric conjugate
/// `S = A^{1/2} C A^{1/2}`, solved by Jacobi rotations, and mapped back:
/// if `S w = lambda w` then `v = A^{1/2} w` satisfies `A C v = lambda v`.
pub fn spectrum(a: &InverseMasses) -> Result<Spectrum, LatticeError> {
    let n = a.n();
    let c = build_coupling(n)?;
    let sqrt_a: Vec<f64> = a.values().iter().map(|&x| x.sqrt()).collect();
    let s = DMatrix::from_fn(n, n, |i, j| sqrt_a[i] * c.matrix()[(i, j)] * sqrt_a[j]);
    let eig = symmetric_eigen(&s)?;

    let max_abs = eig
        .eigenvalues
        .iter()
        .fold(0.0_f64, |acc, &l| acc.max(l.abs()));
    let tol = ZERO_TOL * max_abs;
    let near_zero: Vec<usize> = (0..n)
        .filter(|&i| eig.eigenvalues[i].abs() < tol)
        .collect();
    if near_zero.len() != 1 {
        return Err(LatticeError::ZeroModeCount(near_zero.len()));
    }
    let zero_pos = near_zero[0];

    let mut order: Vec<usize> = (0..n).filter(|&i| i != zero_pos).collect();
    order.push(zero_pos);
    let mut eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    eigenvalues[n - 1] = 0.0;

    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut v = DVector::from_fn(n, |i, _| sqrt_a[i] * eig.u[(i, src)]);
        let norm = v.norm();
        v /= norm;
        let lead = v.iter().copied().find(|x| x.abs() > 1e-8).unwrap_or(0.0);
        if lead < 0.0 {
            v = -v;
        }
        eigenvectors.set_column(dst, &v);
    }

    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        zero_index: n - 1,
    })
}

/// Closed-form eigenvector of `A_4 C_4` for a known eigenvalue `lambda`.
///
/// With `mu_j = 1 / (2 - lambda / a_j)` the vector
/// `(mu_1 (mu_2 + mu_4), mu_2, mu_3 (mu_2 + mu_4), mu_4)` is an eigenvector
/// whenever no denominator vanishes.  The formula degenerates when
/// `lambda = 2 a_j` for some `j`; that case is reported as an error and the
/// caller should fall back to [`spectrum`].
pub fn eigenvector_closed_form(a: &InverseMasses, lambda: f64) -> Result<[f64; 4], LatticeError> {
    if a.n() != 4 {
        return Err(LatticeError::RequiresFour(a.n()));
    }
    let av = a.values();
    let mut mu = [0.0_f64; 4];
    for j in 0..4 {
        let denom = 2.0 - lambda / av[j];
        if denom.abs() <= 1e-9 {
            return Err(LatticeError::SingularFormula { lambda, index: j });
        }
        mu[j] = 1.0 / denom;
    }
    let v = [
        mu[0] * (mu[1] + mu[3]),
        mu[1],
        mu[2] * (mu[1] + mu[3]),
        mu[3],
    ];

    let c = build_coupling(4)?;
    let vv = DVector::from_column_slice(&v);
    let acv = a.matrix() * c.matrix() * &vv;
    let residual = (acv - lambda * &vv).norm();
    let scale = vv.norm();
    if residual > 1e-9 * scale {
        return Err(LatticeError::NotAnEigenvalue { lambda, residual });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn equal_masses_give_circulant_spectrum() {
        let a = InverseMasses::new(vec![1.0; 4]).unwrap();
        let s = spectrum(&a).unwrap();
        let expected = [4.0, 2.0, 2.0, 0.0];
        for (got, want) in s.eigenvalues.iter().zip(expected) {
            assert!(close(*got, want, 1e-12), "got {got}, want {want}");
        }
        assert_eq!(s.zero_index, 3);
        let f = s.frequencies();
        assert!(close(f[1] / f[1], 1.0, 1e-12));
        assert!(close(f[0] / f[1], 2.0_f64.sqrt(), 1e-12));
    }

    #[test]
    fn three_mode_resonance_values() {
        // Inverse masses printed to six digits; cross-checked by
        // tools/oracles/modes_and_cubic.py.
        let a = InverseMasses::new(vec![0.0357143, 0.126804, 0.0357143, 0.301767]).unwrap();
        let s = spectrum(&a).unwrap();
        let expected = [9.0 / 14.0, 2.0 / 7.0, 1.0 / 14.0];
        for (got, want) in s.positive().iter().zip(expected) {
            // Six-digit input truncation leaves an absolute eigenvalue
            // error just under 1e-6 (and a relative error on the smallest
            // eigenvalue of about 1.5e-6).
            assert!((got - want).abs() < 1e-6, "got {got}, want {want}");
        }
    }

    #[test]
    fn mirror_symmetric_point_has_two_one_one_frequencies() {
        let s2 = 2.0_f64.sqrt();
        let a = InverseMasses::new(vec![
            1.0 / 12.0,
            (2.0 - s2) / 12.0,
            1.0 / 12.0,
            (2.0 + s2) / 12.0,
        ])
        .unwrap();
        let s = spectrum(&a).unwrap();
        let lam = s.positive();
        assert!(close(lam[0] / lam[1], 4.0, 1e-10));
        assert!(close(lam[1] / lam[2], 1.0, 1e-10));
    }

    #[test]
    fn zero_mode_is_uniform_translation() {
        let a = InverseMasses::new(vec![0.2, 0.5, 0.9, 1.4, 0.3]).unwrap();
        let s = spectrum(&a).unwrap();
        let col = s.eigenvectors.column(s.zero_index);
        let first = col[0];
        assert!(first > 0.0);
        for x in col.iter() {
            assert!(close(*x, first, 1e-12));
        }
        assert_eq!(s.eigenvalues[s.zero_index], 0.0);
    }

    #[test]
    fn eigenvector_columns_satisfy_eigen_equation() {
        let a = InverseMasses::new(vec![0.11, 0.35, 0.27, 0.41]).unwrap();
        let s = spectrum(&a).unwrap();
        let ac = a.matrix() * build_coupling(4).unwrap().matrix();
        for k in 0..4 {
            let v = s.eigenvectors.column(k).clone_owned();
            let res = (&ac * &v - s.eigenvalues[k] * &v).norm();
            assert!(res < 1e-10, "column {k} residual {res}");
        }
    }

    #[test]
    fn closed_form_alternating_vector() {
        let a = InverseMasses::new(vec![1.0; 4]).unwrap();
        let v = eigenvector_closed_form(&a, 4.0).unwrap();
        let scale = v[0];
        assert!(scale > 0.0);
        let direction: Vec<f64> = v.iter().map(|x| x / scale).collect();
        assert_eq!(direction, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn closed_form_residual_on_resonant_chain() {
        let a = InverseMasses::new(vec![0.0357143, 0.126804, 0.0357143, 0.301767]).unwrap();
        let s = spectrum(&a).unwrap();
        let v = eigenvector_closed_form(&a, s.eigenvalues[0]).unwrap();
        let vv = DVector::from_column_slice(&v);
        let ac = a.matrix() * build_coupling(4).unwrap().matrix();
        let res = (&ac * &vv - s.eigenvalues[0] * &vv).norm() / vv.norm();
        assert!(res < 1e-9);
    }

    #[test]
    fn closed_form_rejects_singular_lambda() {
        let a = InverseMasses::new(vec![0.0357143, 0.126804, 0.0357143, 0.301767]).unwrap();
        let lambda = 2.0 * a.values()[0];
        assert!(matches!(
            eigenvector_closed_form(&a, lambda),
            Err(LatticeError::SingularFormula { index: 0, .. })
        ));
    }

    #[test]
    fn closed_form_rejects_non_eigenvalue() {
        let a = InverseMasses::new(vec![1.0; 4]).unwrap();
        assert!(matches!(
            eigenvector_closed_form(&a, 3.3),
            Err(LatticeError::NotAnEigenvalue { .. })
        ));
    }

    #[test]
    fn spectrum_serializes_with_zero_index() {
        let a = InverseMasses::new(vec![1.0; 3]).unwrap();
        let s = spectrum(&a).unwrap();
        let json = serde_json::to_value(&s).unwrap();
        assert_eq!(json["zero_index"], 2);
        assert_eq!(json["eigenvalues"].as_array().unwrap().len(), 3);
        assert_eq!(json["eigenvectors"][0].as_array().unwrap().len(), 3);
    }
}
