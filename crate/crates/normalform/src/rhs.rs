use crate::{NormalFormError, PolarState, PLANE_TOL};

/// Averaged vector field in co-moving coordinates
/// `(y1, y2, z1, z2, u1, u2)`.
///
/// This is the resonant cubic Hamiltonian `14 eps (d6 x1 x2 x3 +
/// d9 x3^2 x2)` averaged along the linear `3:2:1` flow and pushed to
/// the frame that co-rotates with it.  Every term carries the common
/// factor `7 eps / 2`.
pub fn nf_comoving_rhs(w: &[f64; 6], d6: f64, d9: f64, eps: f64) -> [f64; 6] {
    let [y1, y2, z1, z2, u1, u2] = *w;
    [
        eps * (7.0 / 6.0) * d6 * (z1 * u2 + 0.5 * z2 * u1),
        -eps * (7.0 / 2.0) * d6 * (z1 * u1 - 0.5 * z2 * u2),
        eps * (7.0 / 2.0) * (0.5 * d6 * (-y1 * u2 + y2 * u1 / 3.0) + d9 * u1 * u2),
        -eps * (7.0 / 2.0) * (d6 * (y1 * u1 + y2 * u2 / 3.0) + d9 * (u1 * u1 - u2 * u2)),
        eps * (7.0 / 2.0)
            * (d6 * (-0.5 * y1 * z2 + y2 * z1 / 3.0) + d9 * (-2.0 * z1 * u2 + z2 * u1)),
        -eps * (7.0 / 2.0) * (d6 * (y1 * z1 + y2 * z2 / 6.0) + d9 * (2.0 * z1 * u1 + z2 * u2)),
    ]
}

/// Averaged vector field in amplitude and combination-angle variables,
/// returned in the order `(r1', r2', r3', chi1', chi2')`.
///
/// Fails with [`NormalFormError::CoordinatePlane`] when any amplitude
/// is at most [`PLANE_TOL`], since the angle rates blow up there.
pub fn nf_polar_rhs(
    s: &PolarState,
    d6: f64,
    d9: f64,
    eps: f64,
) -> Result<[f64; 5], NormalFormError> {
    let [r1, r2, r3] = s.r;
    for (i, &ri) in s.r.iter().enumerate() {
        if ri <= PLANE_TOL {
            return Err(NormalFormError::CoordinatePlane {
                index: i + 1,
                value: ri,
            });
        }
    }
    let (s1, c1) = s.chi[0].sin_cos();
    let (s2, c2) = s.chi[1].sin_cos();
    let dr1 = eps * (7.0 / 6.0) * d6 * r2 * r3 * s1;
    let dr2 = -eps * (7.0 / 4.0) * (d6 * r1 * r3 * s1 + d9 * r3 * r3 * s2);
    let dr3 = -eps * (7.0 / 2.0) * (d6 * r1 * r2 * s1 - 2.0 * d9 * r2 * r3 * s2);
    let dchi1 = eps
        * (7.0 / 2.0)
        * (d6 * (c1 / (r1 * r2 * r3))
            * (r2 * r2 * r3 * r3 / 3.0 - r1 * r1 * r3 * r3 / 2.0 - r1 * r1 * r2 * r2)
            - d9 * (c2 / r2) * (0.5 * r3 * r3 + 2.0 * r2 * r2));
    let dchi2 = eps
        * (7.0 / 4.0)
        * (d6 * (r1 * c1 / (r2 * r3)) * (4.0 * r2 * r2 - r3 * r3)
            + d9 * (c2 / r2) * (8.0 * r2 * r2 - r3 * r3));
    Ok([dr1, dr2, dr3, dchi1, dchi2])
}

/// Central-difference Jacobian of the co-moving field at `w`.
///
/// The field is quadratic in the state, so central differences carry
/// no truncation error, only roundoff.
pub fn comoving_jacobian(w: &[f64; 6], d6: f64, d9: f64, eps: f64) -> [[f64; 6]; 6] {
    let h = 1e-3;
    let mut jac = [[0.0; 6]; 6];
    for col in 0..6 {
        let mut wp = *w;
        let mut wm = *w;
        wp[col] += h;
        wm[col] -= h;
        let fp = nf_comoving_rhs(&wp, d6, d9, eps);
        let fm = nf_comoving_rhs(&wm, d6, d9, eps);
        for row in 0..6 {
            jac[row][col] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    jac
}
