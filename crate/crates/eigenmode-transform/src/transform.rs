use fiber_solver::{fiber123, u1, u_of_point};
use lattice_core::{spectrum, InverseMasses};
use serde::Serialize;

use crate::TransformError;

/// Positive eigenvalues of the resonant chain, zero mode last.
const RESONANT_LAMBDA: [f64; 4] = [9.0 / 14.0, 2.0 / 7.0, 1.0 / 14.0, 0.0];

/// Relative eigenvalue gap below which the basis is ill defined.
const COLLISION_TOL: f64 = 1e-8;

/// The symplectic eigenmode transform of a four-particle chain.
///
/// `q = L x` and `p = K y` map eigenmode coordinates back to chain
/// coordinates; `x = K^T q` and `y = L^T p` invert them.  The columns
/// are normalised so that `K^T A K = I` and
/// `L^T C L = diag(eigenvalues)`, with the zero mode in the last
/// column of both matrices (a constant column in `L`).
#[derive(Debug, Clone, Serialize)]
pub struct TransformPair {
    /// Mass-curve parameter, when the masses were recognised as lying
    /// on the closed-form resonant curve.
    pub u: Option<f64>,
    /// Inverse masses the transform diagonalises.
    pub a: [f64; 4],
    /// Eigenvalues of `A C`, descending, zero last.
    pub eigenvalues: [f64; 4],
    /// Coordinate matrix, `K = A^(-1) L`.
    pub k: [[f64; 4]; 4],
    /// Momentum matrix, columns proportional to eigenvectors of `A C`.
    pub l: [[f64; 4]; 4],
}

impl TransformPair {
    /// Eigenmode positions `x = K^T q`.
    pub fn x_from_q(&self, q: &[f64; 4]) -> [f64; 4] {
        transpose_apply(&self.k, q)
    }

    /// Eigenmode momenta `y = L^T p`.
    pub fn y_from_p(&self, p: &[f64; 4]) -> [f64; 4] {
        transpose_apply(&self.l, p)
    }

    /// Chain positions `q = L x`.
    pub fn q_from_x(&self, x: &[f64; 4]) -> [f64; 4] {
        apply(&self.l, x)
    }

    /// Chain momenta `p = K y`.
    pub fn p_from_y(&self, y: &[f64; 4]) -> [f64; 4] {
        apply(&self.k, y)
    }
}

fn apply(m: &[[f64; 4]; 4], v: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| (0..4).map(|j| m[i][j] * v[j]).sum())
}

fn transpose_apply(m: &[[f64; 4]; 4], v: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|j| (0..4).map(|i| m[i][j] * v[i]).sum())
}

/// Builds the eigenmode transform for arbitrary positive inverse
/// masses by diagonalising `A^(1/2) C A^(1/2)`.
///
/// Fails when two eigenvalues collide (relative gap below 1e-8), since
/// the mode basis is then not unique.  When the masses lie on the
/// closed-form resonant curve, the column signs are matched to
/// [`transform_closed_form`] and the recovered curve parameter is
/// recorded; otherwise the signs follow the deterministic convention
/// of [`lattice_core::symmetric_eigen`].
pub fn transform_numeric(a: &[f64; 4]) -> Result<TransformPair, TransformError> {
    let masses = InverseMasses::new(a.to_vec())?;
    let spec = spectrum(&masses)?;
    let lambda: [f64; 4] = std::array::from_fn(|i| spec.eigenvalues[i]);
    let max = lambda[0].abs();
    for i in 0..3 {
        let gap = lambda[i] - lambda[i + 1];
        if gap <= COLLISION_TOL * max {
            return Err(TransformError::EigenvalueCollision {
                first: lambda[i],
                second: lambda[i + 1],
                tolerance: COLLISION_TOL * max,
            });
        }
    }
    let mut l = [[0.0; 4]; 4];
    for j in 0..4 {
        let scale = (0..4)
            .map(|i| spec.eigenvectors[(i, j)].powi(2) / a[i])
            .sum::<f64>()
            .sqrt();
        for i in 0..4 {
            l[i][j] = spec.eigenvectors[(i, j)] / scale;
        }
    }

    let u = recognise_curve(a, &lambda);
    if let Some(u) = u {
        let reference = closed_form_l(u);
        for j in 0..4 {
            let dot: f64 = (0..4).map(|i| l[i][j] * reference[i][j]).sum();
            if dot < 0.0 {
                for row in l.iter_mut() {
                    row[j] = -row[j];
                }
            }
        }
    }

    let mut k = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            k[i][j] = l[i][j] / a[i];
        }
    }
    Ok(TransformPair {
        u,
        a: *a,
        eigenvalues: lambda,
        k,
        l,
    })
}

/// Recovers the curve parameter when `a` sits on the resonant mass
/// curve with the `9/14, 4/14, 1/14` spectrum.
fn recognise_curve(a: &[f64; 4], lambda: &[f64; 4]) -> Option<f64> {
    for i in 0..3 {
        if (lambda[i] - RESONANT_LAMBDA[i]).abs() > 1e-6 {
            return None;
        }
    }
    let mut u = u_of_point(a);
    if (-1e-9..0.0).contains(&u) {
        u = 0.0;
    }
    if !(0.0..u1()).contains(&u) {
        return None;
    }
    let reference = fiber123(u).ok()?;
    for i in 0..4 {
        if (a[i] - reference.a[i]).abs() > 1e-8 {
            return None;
        }
    }
    Some(u)
}

/// Evaluates the closed-form transform along the resonant mass curve.
///
/// The entries of `L(u)` are explicit algebraic functions of the curve
/// parameter `u` in `[0, u1)`; the corresponding masses are those of
/// [`fiber_solver::fiber123`] and the eigenvalues are exactly
/// `9/14, 4/14, 1/14, 0`.
pub fn transform_closed_form(u: f64) -> Result<TransformPair, TransformError> {
    if !(u >= 0.0 && u < u1()) {
        return Err(TransformError::OutOfDomain {
            name: "u",
            value: u,
            domain: "[0, u1)",
        });
    }
    let a = fiber123(u)?.a;
    let l = closed_form_l(u);
    let mut k = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            k[i][j] = l[i][j] / a[i];
        }
    }
    Ok(TransformPair {
        u: Some(u),
        a,
        eigenvalues: RESONANT_LAMBDA,
        k,
        l,
    })
}

/// The explicit matrix `L(u)`.
///
/// All sixteen entries share the structure
/// `sqrt(...) (sqrt(...) (...) +/- ... sqrt(...)) / den`, with
/// denominators proportional to `u - 5`.  The last column is the zero
/// mode; its radicand `1200 - u (3 (u - 22) u + 484)` is common to all
/// four rows, which is what makes the column constant and total
/// momentum a conserved eigenmode coordinate.
pub(crate) fn closed_form_l(u: f64) -> [[f64; 4]; 4] {
    let sq = f64::sqrt;
    let den1 = 192.0 * sq(35.0) * (u - 5.0);
    let den2 = 64.0 * sq(105.0) * (u - 5.0);
    let den3 = 64.0 * sq(21.0) * (u - 5.0);
    let den4 = 96.0 * sq(14.0) * (u - 5.0);
    let zero_mode = sq(1200.0 - u * (3.0 * (u - 22.0) * u + 484.0))
        * sq(40.0 - u * (3.0 * (u - 8.0) * u + 64.0));

    let mut l = [[0.0; 4]; 4];
    l[0][0] = sq(u + 6.0)
        * (sq(16.0 - u) * (20.0 - 3.0 * (u - 4.0) * u)
            - 18.0 * sq(2.0) * sq(5.0 - u) * sq(6.0 - u) * sq(u))
        / den1;
    l[0][1] = sq(4.0 - u)
        * (sq(2.0) * sq(6.0 - u) * (u * (3.0 * u - 22.0) - 20.0)
            + 16.0 * sq(5.0 - u) * sq((16.0 - u) * u))
        / den2;
    l[0][2] = sq(10.0 - u)
        * (sq(u) * ((28.0 - 3.0 * u) * u - 76.0)
            + 2.0 * sq(2.0) * sq(5.0 - u) * sq(6.0 - u) * sq(16.0 - u))
        / den3;
    l[0][3] = -zero_mode / den4;

    l[1][0] = sq(16.0 - u)
        * (sq(u + 6.0) * (-3.0 * (u - 16.0) * u - 160.0)
            + 18.0 * sq(8.0 - 2.0 * u) * sq(5.0 - u) * sq(10.0 - u))
        / den1;
    l[1][1] = sq(6.0 - u)
        * (sq(8.0 - 2.0 * u) * (u * (3.0 * u - 38.0) + 60.0)
            + 16.0 * sq(5.0 - u) * sq((10.0 - u) * (u + 6.0)))
        / den2;
    l[1][2] = -sq(u)
        * (sq(10.0 - u) * (u * (3.0 * u - 32.0) + 96.0)
            + 2.0 * sq(8.0 - 2.0 * u) * sq((5.0 - u) * (u + 6.0)))
        / den3;
    l[1][3] = -zero_mode / den4;

    l[2][0] = sq(u + 6.0)
        * (sq(16.0 - u) * (20.0 - 3.0 * (u - 4.0) * u)
            + 18.0 * sq(2.0) * sq(5.0 - u) * sq((6.0 - u) * u))
        / den1;
    l[2][1] = sq(4.0 - u)
        * (sq(2.0) * sq(6.0 - u) * (u * (3.0 * u - 22.0) - 20.0)
            - 16.0 * sq(5.0 - u) * sq((16.0 - u) * u))
        / den2;
    l[2][2] = -sq(10.0 - u)
        * (sq(u) * (u * (3.0 * u - 28.0) + 76.0)
            + 2.0 * sq(2.0) * sq(5.0 - u) * sq(6.0 - u) * sq(16.0 - u))
        / den3;
    l[2][3] = -zero_mode / den4;

    l[3][0] = -sq(16.0 - u)
        * (sq(u + 6.0) * (3.0 * (u - 16.0) * u + 160.0)
            + 18.0 * sq(8.0 - 2.0 * u) * sq(5.0 - u) * sq(10.0 - u))
        / den1;
    l[3][1] = sq(6.0 - u)
        * (sq(8.0 - 2.0 * u) * (u * (3.0 * u - 38.0) + 60.0)
            - 16.0 * sq(5.0 - u) * sq((10.0 - u) * (u + 6.0)))
        / den2;
    l[3][2] = sq(u)
        * (sq(10.0 - u) * ((32.0 - 3.0 * u) * u - 96.0)
            + 2.0 * sq(8.0 - 2.0 * u) * sq((5.0 - u) * (u + 6.0)))
        / den3;
    l[3][3] = -zero_mode / den4;
    l
}
