use serde::{Deserialize, Serialize};

use crate::NormalFormError;

/// Linear frequencies (3, 2, 1) of the eigenmodes on the resonant curve,
/// in the time scale where the slowest mode has frequency 1.
pub const MODE_FREQUENCIES: [f64; 3] = [3.0, 2.0, 1.0];

/// Amplitudes at or below this level count as lying on a coordinate
/// plane, where the phase of that mode is undefined.
pub const PLANE_TOL: f64 = 1e-8;

/// `|d9|` at or below this level keeps the detuning combination
/// `2 r2^2 - r3^2` among the conserved quantities.
pub const THIRD_INTEGRAL_TOL: f64 = 1e-12;

/// Amplitude and combination-angle coordinates of the averaged system.
///
/// Writing each mode as `x_i(t) = r_i cos(omega_i t + psi_i)` with
/// `omega = (3, 2, 1)`, the averaged flow moves the amplitudes `r_i`
/// and only the two resonant angle combinations
///
/// ```text
/// chi1 = psi1 - psi2 - psi3,    chi2 = 2 psi3 - psi2,
/// ```
///
/// while the remaining overall phase drifts freely.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarState {
    /// Mode amplitudes `(r1, r2, r3)`, positive away from the planes.
    pub r: [f64; 3],
    /// Combination angles `(chi1, chi2)`.
    pub chi: [f64; 2],
}

/// Reorders a modal state `(x1, x2, x3, v1, v2, v3)` into the co-moving
/// layout `(y1, y2, z1, z2, u1, u2)`.
///
/// The co-moving pairs are `(x_i, v_i)` frozen at `t = 0`; under the
/// bare linear flow they would stay constant, so their motion is purely
/// the slow resonant exchange.
pub fn comoving_from_modal(s: &[f64; 6]) -> [f64; 6] {
    [s[0], s[3], s[1], s[4], s[2], s[5]]
}

/// Inverse of [`comoving_from_modal`].
pub fn modal_from_comoving(w: &[f64; 6]) -> [f64; 6] {
    [w[0], w[2], w[4], w[1], w[3], w[5]]
}

/// Mode amplitudes `(r1, r2, r3)` of a co-moving state.
///
/// The pairs scale as `y = (r1 cos psi1, -3 r1 sin psi1)`,
/// `z = (r2 cos psi2, -2 r2 sin psi2)` and
/// `u = (r3 cos psi3, -r3 sin psi3)`.
pub fn amplitudes(w: &[f64; 6]) -> [f64; 3] {
    [
        (w[0] * w[0] + w[1] * w[1] / 9.0).sqrt(),
        (w[2] * w[2] + w[3] * w[3] / 4.0).sqrt(),
        (w[4] * w[4] + w[5] * w[5]).sqrt(),
    ]
}

/// Converts a co-moving state to amplitudes and combination angles.
///
/// Fails with [`NormalFormError::CoordinatePlane`] when any amplitude
/// is at most [`PLANE_TOL`], since the angles degenerate there.
pub fn comoving_to_polar(w: &[f64; 6]) -> Result<PolarState, NormalFormError> {
    let r = amplitudes(w);
    for (i, &ri) in r.iter().enumerate() {
        if ri <= PLANE_TOL {
            return Err(NormalFormError::CoordinatePlane {
                index: i + 1,
                value: ri,
            });
        }
    }
    let psi1 = (-w[1] / 3.0).atan2(w[0]);
    let psi2 = (-w[3] / 2.0).atan2(w[2]);
    let psi3 = (-w[5]).atan2(w[4]);
    Ok(PolarState {
        r,
        chi: [psi1 - psi2 - psi3, 2.0 * psi3 - psi2],
    })
}

/// Reconstructs a co-moving state from amplitudes and angles.
///
/// The combination angles leave one overall phase free; `psi3` fixes
/// it.  Any choice yields the same amplitudes and the same values of
/// `chi1` and `chi2`.
pub fn polar_to_comoving(s: &PolarState, psi3: f64) -> [f64; 6] {
    let psi2 = 2.0 * psi3 - s.chi[1];
    let psi1 = s.chi[0] + psi2 + psi3;
    [
        s.r[0] * psi1.cos(),
        -3.0 * s.r[0] * psi1.sin(),
        s.r[1] * psi2.cos(),
        -2.0 * s.r[1] * psi2.sin(),
        s.r[2] * psi3.cos(),
        -s.r[2] * psi3.sin(),
    ]
}

/// Co-moving state of the pure first mode `x1 = a cos 3t + b sin 3t`.
pub fn mode1_comoving(a: f64, b: f64) -> [f64; 6] {
    [a, 3.0 * b, 0.0, 0.0, 0.0, 0.0]
}

/// Co-moving state of the pure second mode `x2 = a cos 2t + b sin 2t`.
pub fn mode2_comoving(a: f64, b: f64) -> [f64; 6] {
    [0.0, 0.0, a, 2.0 * b, 0.0, 0.0]
}

/// Co-moving state of the pure third mode `x3 = a cos t + b sin t`.
pub fn mode3_comoving(a: f64, b: f64) -> [f64; 6] {
    [0.0, 0.0, 0.0, 0.0, a, b]
}

/// Conserved quantities of the averaged flow at a co-moving state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NfIntegrals {
    /// Quadratic energy `(9 r1^2 + 4 r2^2 + r3^2) / 2`.
    pub h2: f64,
    /// Detuning combination `2 r2^2 - r3^2`, present only while
    /// `|d9|` stays within [`THIRD_INTEGRAL_TOL`].
    pub third: Option<f64>,
}

/// Evaluates the conserved quantities of the averaged flow.
///
/// The quadratic energy is conserved for every coupling; the detuning
/// combination survives only without the `x3^2 x2` term, so it is
/// reported only when `d9` vanishes to within [`THIRD_INTEGRAL_TOL`].
pub fn nf_integrals(w: &[f64; 6], d9: f64) -> NfIntegrals {
    let r = amplitudes(w);
    let (r1s, r2s, r3s) = (r[0] * r[0], r[1] * r[1], r[2] * r[2]);
    NfIntegrals {
        h2: 0.5 * (9.0 * r1s + 4.0 * r2s + r3s),
        third: (d9.abs() <= THIRD_INTEGRAL_TOL).then(|| 2.0 * r2s - r3s),
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn wrap_angle(x: f64) -> f64 {
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut y = x % two_pi;
        if y > std::f64::consts::PI {
            y -= two_pi;
        }
        if y < -std::f64::consts::PI {
            y += two_pi;
        }
        y
    }

    #[test]
    fn polar_round_trip_preserves_amplitudes_and_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let s = PolarState {
                r: [
                    rng.random_range(0.2..2.0),
                    rng.random_range(0.2..2.0),
                    rng.random_range(0.2..2.0),
                ],
                chi: [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)],
            };
            let psi3 = rng.random_range(-3.0..3.0);
            let w = polar_to_comoving(&s, psi3);
            let back = comoving_to_polar(&w).unwrap();
            for i in 0..3 {
                assert!((back.r[i] - s.r[i]).abs() < 1e-12);
            }
            for i in 0..2 {
                assert!(wrap_angle(back.chi[i] - s.chi[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn modal_reordering_is_an_involution_pair() {
        let s = [0.1, -0.2, 0.3, 0.4, -0.5, 0.6];
        let w = comoving_from_modal(&s);
        assert_eq!(w, [0.1, 0.4, -0.2, -0.5, 0.3, 0.6]);
        assert_eq!(modal_from_comoving(&w), s);
    }

    #[test]
    fn coordinate_planes_are_rejected() {
        let w = [0.5, 0.1, 0.0, 0.0, 0.3, 0.2];
        match comoving_to_polar(&w) {
            Err(NormalFormError::CoordinatePlane { index: 2, .. }) => {}
            other => panic!("expected a coordinate-plane error, got {other:?}"),
        }
    }

    #[test]
    fn integrals_report_the_detuning_combination_only_without_d9() {
        let w = [0.4, -0.9, 1.1, 0.3, -0.7, 0.2];
        let r = amplitudes(&w);
        let with = nf_integrals(&w, 0.0);
        let without = nf_integrals(&w, 1e-3);
        let h2 = 0.5 * (9.0 * r[0] * r[0] + 4.0 * r[1] * r[1] + r[2] * r[2]);
        assert!((with.h2 - h2).abs() < 1e-15);
        assert_eq!(
            with.third,
            Some(2.0 * r[1] * r[1] - r[2] * r[2])
        );
        assert_eq!(without.third, None);
    }

    #[test]
    fn mode_embeddings_have_a_single_nonzero_amplitude() {
        let r1 = amplitudes(&mode1_comoving(0.6, -0.8));
        assert!((r1[0] - 1.0).abs() < 1e-15 && r1[1] == 0.0 && r1[2] == 0.0);
        let r2 = amplitudes(&mode2_comoving(0.6, -0.8));
        assert!((r2[1] - 1.0).abs() < 1e-15 && r2[0] == 0.0 && r2[2] == 0.0);
        let r3 = amplitudes(&mode3_comoving(0.6, -0.8));
        assert!((r3[2] - 1.0).abs() < 1e-15 && r3[0] == 0.0 && r3[1] == 0.0);
    }
}
