use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::LatticeError;

/// Inverse masses `a_j = 1/m_j` of the `n` particles on the ring.
///
/// The inverse masses are the natural parameters of the chain: the
/// linearised dynamics is governed by `A_n C_n` with `A_n = diag(a)`.
/// All entries must be positive and `n >= 3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct InverseMasses {
    a: Vec<f64>,
}

impl InverseMasses {
    /// Builds the parameter vector, validating positivity and dimension.
    pub fn new(a: Vec<f64>) -> Result<Self, LatticeError> {
        if a.len() < 3 {
            return Err(LatticeError::InvalidDimension(a.len()));
        }
        for (index, &value) in a.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(LatticeError::NonPositiveMass { index, value });
            }
        }
        Ok(Self { a })
    }

    /// Builds from the masses `m_j` themselves, inverting each entry.
    pub fn from_masses(m: &[f64]) -> Result<Self, LatticeError> {
        if m.len() < 3 {
            return Err(LatticeError::InvalidDimension(m.len()));
        }
        for (index, &value) in m.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(LatticeError::NonPositiveMass { index, value });
            }
        }
        Self::new(m.iter().map(|&mj| 1.0 / mj).collect())
    }

    /// Number of particles on the ring.
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// The inverse-mass entries `a_1..a_n`.
    pub fn values(&self) -> &[f64] {
        &self.a
    }

    /// The masses `m_j = 1/a_j`.
    pub fn masses(&self) -> Vec<f64> {
        self.a.iter().map(|&aj| 1.0 / aj).collect()
    }

    /// The diagonal matrix `A_n = diag(a_1..a_n)`.
    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.a))
    }

    /// The positive square root `A_n^{1/2} = diag(sqrt(a_j))`.
    pub fn sqrt_matrix(&self) -> DMatrix<f64> {
        let sqrt: Vec<f64> = self.a.iter().map(|&aj| aj.sqrt()).collect();
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&sqrt))
    }

    /// Rescales so that `2 * sum(a_j) = 1`, the normalisation used by all
    /// fiber computations.  The spectrum scales by the same factor.
    pub fn normalized(&self) -> Self {
        let sum: f64 = self.a.iter().sum();
        let scale = 1.0 / (2.0 * sum);
        Self {
            a: self.a.iter().map(|&aj| aj * scale).collect(),
        }
    }
}

impl TryFrom<Vec<f64>> for InverseMasses {
    type Error = LatticeError;

    fn try_from(a: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(a)
    }
}

impl From<InverseMasses> for Vec<f64> {
    fn from(m: InverseMasses) -> Self {
        m.a
    }
}

/// Evaluates the two leading characteristic-polynomial coefficients of
/// `A_n C_n` directly from the inverse masses.
///
/// Returns `(p_{n-1}, p_{n-2})` with
/// `p_{n-1} = 2 * sum_j a_j` and
/// `p_{n-2} = sum_{i<j} c_{ij} a_i a_j`, where `c_{ij} = 3` for cyclically
/// adjacent index pairs and `4` otherwise.  These equal the first two
/// elementary symmetric functions of the positive eigenvalues.
pub fn char_poly_identities(a: &InverseMasses) -> (f64, f64) {
    let n = a.n();
    let v = a.values();
    let p_top = 2.0 * v.iter().sum::<f64>();
    let mut p_next = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j - i == 1 || j - i == n - 1;
            let c = if adjacent { 3.0 } else { 4.0 };
            p_next += c * v[i] * v[j];
        }
    }
    (p_top, p_next)
}

/// Total linear momentum `sum_j m_j qdot_j = sum_j qdot_j / a_j`, the
/// conserved quantity associated with uniform translation of the ring.
pub fn momentum(a: &InverseMasses, qdot: &[f64]) -> Result<f64, LatticeError> {
    if qdot.len() != a.n() {
        return Err(LatticeError::LengthMismatch {
            expected: a.n(),
            got: qdot.len(),
        });
    }
    Ok(a.values()
        .iter()
        .zip(qdot)
        .map(|(&aj, &vj)| vj / aj)
        .sum())
}

/// Orbit of the inverse-mass vector under the dihedral group `D_n`
/// (the `n` cyclic shifts and `n` reflections of the ring).
///
/// Duplicates are removed by exact bit equality, so the orbit size always
/// divides `2n`.  Callers that need fuzzy identification of numerically
/// perturbed orbits should round entries before calling.
pub fn dihedral_orbit(a: &InverseMasses) -> Vec<Vec<f64>> {
    let n = a.n();
    let v = a.values();
    let mut orbit: Vec<Vec<f64>> = Vec::with_capacity(2 * n);
    let mut push_unique = |candidate: Vec<f64>| {
        if !orbit.contains(&candidate) {
            orbit.push(candidate);
        }
    };
    for k in 0..n {
        push_unique((0..n).map(|i| v[(i + k) % n]).collect());
    }
    for k in 0..n {
        push_unique((0..n).map(|i| v[(k + n - i) % n]).collect());
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_and_nonpositive_input() {
        assert!(matches!(
            InverseMasses::new(vec![1.0, 2.0]),
            Err(LatticeError::InvalidDimension(2))
        ));
        assert!(matches!(
            InverseMasses::new(vec![1.0, -2.0, 1.0]),
            Err(LatticeError::NonPositiveMass { index: 1, .. })
        ));
        assert!(matches!(
            InverseMasses::new(vec![1.0, f64::NAN, 1.0]),
            Err(LatticeError::NonPositiveMass { .. })
        ));
    }

    #[test]
    fn masses_round_trip() {
        let a = InverseMasses::new(vec![0.5, 1.0, 4.0]).unwrap();
        assert_eq!(a.masses(), vec![2.0, 1.0, 0.25]);
        let back = InverseMasses::from_masses(&a.masses()).unwrap();
        assert_eq!(back.values(), a.values());
    }

    #[test]
    fn normalization_fixes_trace() {
        let a = InverseMasses::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap().normalized();
        let sum: f64 = a.values().iter().sum();
        assert!((2.0 * sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn char_poly_equal_masses() {
        let a = InverseMasses::new(vec![1.0; 4]).unwrap();
        let (p3, p2) = char_poly_identities(&a);
        assert_eq!(p3, 8.0);
        assert_eq!(p2, 3.0 * 4.0 + 4.0 * 2.0);
    }

    #[test]
    fn char_poly_center_point() {
        let a = InverseMasses::new(vec![0.125; 4]).unwrap();
        let (_, p2) = char_poly_identities(&a);
        assert!((p2 - 5.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn char_poly_three_particles_all_adjacent() {
        let a = InverseMasses::new(vec![1.0, 2.0, 3.0]).unwrap();
        let (p2, p1) = char_poly_identities(&a);
        assert_eq!(p2, 12.0);
        assert_eq!(p1, 3.0 * (2.0 + 6.0 + 3.0));
    }

    #[test]
    fn momentum_examples() {
        let a4 = InverseMasses::new(vec![1.0; 4]).unwrap();
        assert_eq!(momentum(&a4, &[0.0; 4]).unwrap(), 0.0);
        assert_eq!(momentum(&a4, &[1.0, -1.0, 1.0, -1.0]).unwrap(), 0.0);
        let a3 = InverseMasses::new(vec![0.5, 1.0, 1.0]).unwrap();
        assert_eq!(momentum(&a3, &[1.0, 1.0, 0.0]).unwrap(), 3.0);
        assert!(matches!(
            momentum(&a3, &[1.0, 1.0]),
            Err(LatticeError::LengthMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn orbit_size_divides_group_order() {
        let symmetric = InverseMasses::new(vec![1.0; 4]).unwrap();
        assert_eq!(dihedral_orbit(&symmetric).len(), 1);

        let s2 = 2.0_f64.sqrt();
        let mirror = InverseMasses::new(vec![
            1.0 / 12.0,
            (2.0 - s2) / 12.0,
            1.0 / 12.0,
            (2.0 + s2) / 12.0,
        ])
        .unwrap();
        assert_eq!(dihedral_orbit(&mirror).len(), 4);

        let generic = InverseMasses::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(dihedral_orbit(&generic).len(), 8);

        let generic5 = InverseMasses::new(vec![0.1, 0.2, 0.3, 0.4, 0.5]).unwrap();
        assert_eq!(dihedral_orbit(&generic5).len(), 10);
    }

    #[test]
    fn orbit_contains_reflections() {
        let a = InverseMasses::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let orbit = dihedral_orbit(&a);
        assert!(orbit.contains(&vec![0.2, 0.1, 0.4, 0.3]));
        assert!(orbit.contains(&vec![0.1, 0.4, 0.3, 0.2]));
    }

    #[test]
    fn serde_round_trip() {
        let a = InverseMasses::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        let back: InverseMasses = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<InverseMasses>("[1.0, -1.0, 1.0]").is_err());
    }
}
