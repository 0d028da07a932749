use nalgebra::DMatrix;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::LatticeError;

/// The cyclic coupling matrix `C_n` of the periodic chain.
///
/// `C_n` has `2` on the diagonal and `-1` at the positions `(i, i +/- 1 mod n)`,
/// so every row sums to zero and `(1, ..., 1)` spans its kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    n: usize,
    entries: DMatrix<f64>,
}

impl CouplingMatrix {
    /// Number of particles on the ring.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The matrix itself.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

impl Serialize for CouplingMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows = crate::rows_of(&self.entries);
        let mut seq = serializer.serialize_seq(Some(rows.len()))?;
        for row in rows {
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Builds the coupling matrix `C_n` for a ring of `n >= 3` particles.
pub fn build_coupling(n: usize) -> Result<CouplingMatrix, LatticeError> {
    if n < 3 {
        return Err(LatticeError::InvalidDimension(n));
    }
    let entries = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0
        } else if (i + 1) % n == j || (j + 1) % n == i {
            -1.0
        } else {
            0.0
        }
    });
    Ok(CouplingMatrix { n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_dimension() {
        assert!(matches!(build_coupling(2), Err(LatticeError::InvalidDimension(2))));
    }

    #[test]
    fn three_particle_ring_wraps_around() {
        let c = build_coupling(3).unwrap();
        let expected = DMatrix::from_row_slice(
            3,
            3,
            &[2.0, -1.0, -1.0, -1.0, 2.0, -1.0, -1.0, -1.0, 2.0],
        );
        assert_eq!(c.matrix(), &expected);
    }

    #[test]
    fn four_particle_first_row() {
        let c = build_coupling(4).unwrap();
        let row: Vec<f64> = c.matrix().row(0).iter().copied().collect();
        assert_eq!(row, vec![2.0, -1.0, 0.0, -1.0]);
    }

    #[test]
    fn five_particle_rows() {
        let c = build_coupling(5).unwrap();
        let first: Vec<f64> = c.matrix().row(0).iter().copied().collect();
        let second: Vec<f64> = c.matrix().row(1).iter().copied().collect();
        assert_eq!(first, vec![2.0, -1.0, 0.0, 0.0, -1.0]);
        assert_eq!(second, vec![-1.0, 2.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn rows_sum_to_zero_and_matrix_is_symmetric() {
        for n in 3..=8 {
            let c = build_coupling(n).unwrap();
            let m = c.matrix();
            assert_eq!(m.transpose(), *m);
            for i in 0..n {
                assert_eq!(m.row(i).sum(), 0.0);
            }
        }
    }

    #[test]
    fn serializes_as_row_major_arrays() {
        let c = build_coupling(3).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, "[[2.0,-1.0,-1.0],[-1.0,2.0,-1.0],[-1.0,-1.0,2.0]]");
    }
}
