use serde::Serialize;

use crate::NormalFormError;

/// Residual of the invariant-tori relation of the detuning-free
/// averaged system,
///
/// ```text
/// 2 r2^2 r3^2 + (4/3) r2^4 + (1/6) r3^4 - (E0/3) (2 r2^2 + r3^2).
/// ```
///
/// Zero picks out the amplitude curve on the energy level `E0` along
/// which all three amplitudes are frozen while the free angles rotate,
/// so each point carries an invariant 2-torus.
pub fn torus_residual(r2: f64, r3: f64, e0: f64) -> f64 {
    2.0 * r2 * r2 * r3 * r3 + (4.0 / 3.0) * r2.powi(4) + (1.0 / 6.0) * r3.powi(4)
        - (e0 / 3.0) * (2.0 * r2 * r2 + r3 * r3)
}

/// One member of the invariant-tori family of the detuning-free system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Case0Torus {
    /// Squared third amplitude, the parameter along the family.
    pub r3_squared: f64,
    /// Amplitudes `(r1, r2, r3)` frozen on the torus.
    pub r: [f64; 3],
}

/// Solves the tori relation on the energy level `E0` for a prescribed
/// squared third amplitude.
///
/// The family spans `r3^2` in the open interval `(0, 2 E0)`; at the
/// ends it collapses onto the second and third coordinate planes.
pub fn case0_torus(e0: f64, r3_squared: f64) -> Result<Case0Torus, NormalFormError> {
    if !(e0 > 0.0) {
        return Err(NormalFormError::OutOfDomain {
            name: "e0",
            value: e0,
            domain: "(0, inf)",
        });
    }
    let t = r3_squared;
    if !(t > 0.0 && t < 2.0 * e0) {
        return Err(NormalFormError::OutOfDomain {
            name: "r3_squared",
            value: t,
            domain: "(0, 2 E0)",
        });
    }
    let s = ((e0 - 3.0 * t) + (7.0 * t * t - 2.0 * e0 * t + e0 * e0).sqrt()) / 4.0;
    let mut r1s = (2.0 * e0 - 4.0 * s - t) / 9.0;
    if r1s < 0.0 {
        if r1s < -1e-12 * e0 {
            return Err(NormalFormError::OutOfDomain {
                name: "r3_squared",
                value: t,
                domain: "(0, 2 E0)",
            });
        }
        r1s = 0.0;
    }
    Ok(Case0Torus {
        r3_squared: t,
        r: [r1s.sqrt(), s.sqrt(), t.sqrt()],
    })
}

/// Samples `count` interior members of the tori family on the energy
/// level `E0`, at `r3^2 = 2 E0 k / (count + 1)`.
pub fn case0_torus_family(e0: f64, count: usize) -> Result<Vec<Case0Torus>, NormalFormError> {
    (1..=count)
        .map(|k| case0_torus(e0, 2.0 * e0 * k as f64 / (count + 1) as f64))
        .collect()
}
