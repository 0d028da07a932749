use fiber_solver::u1;
use serde::Serialize;

use crate::{TransformError, TransformPair};

/// Zero-mode leakage above this fraction of the matrix norm means the
/// transform cannot come from a momentum-conserving chain.
const ZERO_MODE_TOL: f64 = 1e-10;

/// The ten coefficients of the chain's cubic interaction expressed in
/// eigenmode coordinates.
///
/// Substituting `q = L x` into `(alpha/3) sum_j (q_{j+1} - q_j)^3`
/// (cyclic indices, zero mode dropping out) yields a cubic polynomial
/// in `(x_1, x_2, x_3)` whose coefficients are stored in the order
///
/// ```text
/// d1 x1^3, d2 x1^2 x2, d3 x1^2 x3, d4 x2^2 x1, d5 x3^2 x1,
/// d6 x1 x2 x3, d7 x2^3, d8 x3^3, d9 x3^2 x2, d10 x2^2 x3
/// ```
///
/// On the `3:2:1` resonant curve only `d6` and `d9` multiply resonant
/// monomials; they alone survive normal-form averaging.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CubicCoefficients {
    /// Coefficients `(d1, ..., d10)` in the monomial order above.
    pub d: [f64; 10],
}

impl CubicCoefficients {
    /// The resonant `x1 x2 x3` coefficient.
    pub fn d6(&self) -> f64 {
        self.d[5]
    }

    /// The resonant `x3^2 x2` coefficient.
    pub fn d9(&self) -> f64 {
        self.d[8]
    }
}

/// Expands the cubic interaction through an explicit transform matrix.
///
/// The expansion uses the row differences `Delta_j = L_{j+1,.} - L_{j,.}`
/// of consecutive rows (cyclic), which are the coefficients of the bond
/// elongations `z_j = q_{j+1} - q_j` in eigenmode coordinates.  The
/// zero-mode components of all `Delta_j` must vanish; a transform
/// violating that is rejected, since its cubic would couple the centre
/// of mass to the oscillating modes.
pub fn cubic_from_transform(
    transform: &TransformPair,
    alpha: f64,
) -> Result<CubicCoefficients, TransformError> {
    let l = &transform.l;
    let norm = l
        .iter()
        .flatten()
        .fold(0.0_f64, |acc, &x| acc.max(x.abs()));
    let mut delta = [[0.0; 4]; 4];
    for j in 0..4 {
        for i in 0..4 {
            delta[j][i] = l[(j + 1) % 4][i] - l[j][i];
        }
    }
    let leakage = delta.iter().fold(0.0_f64, |acc, row| acc.max(row[3].abs()));
    if leakage > ZERO_MODE_TOL * norm {
        return Err(TransformError::InconsistentTransform {
            residual: leakage,
            tolerance: ZERO_MODE_TOL * norm,
        });
    }

    let cube = |i: usize| delta.iter().map(|row| row[i].powi(3)).sum::<f64>() / 3.0;
    let square = |i: usize, k: usize| {
        delta
            .iter()
            .map(|row| row[i] * row[i] * row[k])
            .sum::<f64>()
    };
    let triple = 2.0
        * delta
            .iter()
            .map(|row| row[0] * row[1] * row[2])
            .sum::<f64>();
    let d = [
        cube(0),
        square(0, 1),
        square(0, 2),
        square(1, 0),
        square(2, 0),
        triple,
        cube(1),
        cube(2),
        square(2, 1),
        square(1, 2),
    ]
    .map(|c| alpha * c);
    Ok(CubicCoefficients { d })
}

/// Evaluates the closed-form cubic coefficients along the resonant
/// mass curve.
///
/// Each coefficient is an algebraic function of the curve parameter
/// `u`; at `u = 0` all but `d3`, `d6` and `d10` vanish and the
/// surviving three reduce to `-9 sqrt(21)/490`, `-3 sqrt(14)/490` and
/// `2 sqrt(21)/245`.
pub fn cubic_from_table(u: f64, alpha: f64) -> Result<CubicCoefficients, TransformError> {
    if !(u >= 0.0 && u < u1()) {
        return Err(TransformError::OutOfDomain {
            name: "u",
            value: u,
            domain: "[0, u1)",
        });
    }
    let sq = f64::sqrt;
    let g = 5.0 - u;
    let mut d = [0.0; 10];
    d[0] = sq(u) * 27.0 * sq(4.0 - u) * sq(6.0 - u) * sq(10.0 - u) * (16.0 - u) * (u + 6.0)
        / (35840.0 * sq(35.0) * g);
    d[1] = -sq(u) * 3.0 * sq(3.0) * sq(10.0 - u) * sq(16.0 - u) * sq(u + 6.0)
        * (3.0 * u * u - 30.0 * u + 52.0)
        / (4480.0 * sq(70.0) * g);
    d[2] = -3.0 * sq(3.0) * sq(4.0 - u) * sq(6.0 - u) * sq(16.0 - u) * sq(u + 6.0)
        * (3.0 * u * u - 30.0 * u + 160.0)
        / (35840.0 * sq(7.0) * g);
    d[3] = -sq(u) * sq(4.0 - u) * sq(6.0 - u) * sq(10.0 - u)
        * (-3.0 * u * u + 30.0 * u + 68.0)
        / (1120.0 * sq(35.0) * g);
    d[4] = -sq(u) * sq(4.0 - u) * sq(6.0 - u) * sq(10.0 - u)
        * (3.0 * u * u - 30.0 * u + 64.0)
        / (7168.0 * sq(35.0) * g);
    d[5] = -(-3.0 * u.powi(4) + 60.0 * u.powi(3) - 352.0 * u * u + 520.0 * u + 960.0)
        / (2240.0 * sq(14.0) * g);
    d[6] = sq(u) * sq(10.0 - u) * sq(16.0 - u) * (6.0 - u) * (4.0 - u) * sq(u + 6.0)
        / (420.0 * sq(210.0) * g);
    d[7] = u * sq(4.0 - u) * sq(6.0 - u) * sq(16.0 - u) * (10.0 - u) * sq(u + 6.0)
        / (21504.0 * sq(21.0) * g);
    d[8] = -sq(u) * sq(10.0 - u) * sq(16.0 - u) * sq(u + 6.0) * (u * u - 10.0 * u + 28.0)
        / (896.0 * sq(210.0) * g);
    d[9] = sq(4.0 - u) * sq(6.0 - u) * sq(16.0 - u) * sq(u + 6.0) * (u * u - 10.0 * u + 20.0)
        / (1120.0 * sq(21.0) * g);
    Ok(CubicCoefficients {
        d: d.map(|c| alpha * c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{transform_closed_form, transform_numeric};

    // Reference vectors: tools/oracles/modes_and_cubic.py
    const D_AT_0: [f64; 10] = [
        0.0,
        0.0,
        -0.08416975766245416,
        0.0,
        0.0,
        -0.02290810644963621,
        0.0,
        0.0,
        0.0,
        0.03740878118331297,
    ];
    const D_AT_0_534105: [f64; 10] = [
        0.02819985698511688,
        -0.02584366514410049,
        -0.07775740704383548,
        -0.02750583249025566,
        -0.00252349420580836,
        -0.03062292208153298,
        0.01575375136507962,
        0.00050265481378942,
        -0.00894379517446523,
        0.02852698980956495,
    ];
    const D_AT_0_826713: [f64; 10] = [
        0.03526571089181723,
        -0.02723157449307198,
        -0.0743154879860916,
        -0.03661837662150061,
        -0.00260064280856387,
        -0.03378773723033789,
        0.01811441310755321,
        0.00076042470571203,
        -0.01056007933143469,
        0.02390400930305186,
    ];

    #[test]
    fn table_matches_reference_values() {
        let cases = [
            (0.0, D_AT_0),
            (0.534105, D_AT_0_534105),
            (0.826713, D_AT_0_826713),
        ];
        for (u, expected) in cases {
            let d = cubic_from_table(u, 1.0).unwrap().d;
            for (i, (got, want)) in d.iter().zip(expected).enumerate() {
                assert!(
                    (got - want).abs() < 1e-14,
                    "u = {u}, d{}: {got} vs {want}",
                    i + 1
                );
            }
        }
    }

    #[test]
    fn table_and_transform_agree_along_the_curve() {
        for k in 0..=50 {
            let u = 0.85 * k as f64 / 50.0;
            let t = transform_closed_form(u).unwrap();
            let from_t = cubic_from_transform(&t, 1.0).unwrap().d;
            let from_table = cubic_from_table(u, 1.0).unwrap().d;
            for i in 0..10 {
                assert!(
                    (from_t[i] - from_table[i]).abs() < 1e-12,
                    "u = {u}, d{}: {} vs {}",
                    i + 1,
                    from_t[i],
                    from_table[i]
                );
            }
        }
    }

    #[test]
    fn numeric_transform_reproduces_the_table() {
        for u in [0.0, 0.25, 0.534105, 0.826713] {
            let a = transform_closed_form(u).unwrap().a;
            let t = transform_numeric(&a).unwrap();
            let from_t = cubic_from_transform(&t, 1.0).unwrap().d;
            let from_table = cubic_from_table(u, 1.0).unwrap().d;
            for i in 0..10 {
                assert!(
                    (from_t[i] - from_table[i]).abs() < 1e-11,
                    "u = {u}, d{}",
                    i + 1
                );
            }
        }
    }

    #[test]
    fn alpha_scales_every_coefficient() {
        let d1 = cubic_from_table(0.5, 1.0).unwrap().d;
        let d2 = cubic_from_table(0.5, 2.5).unwrap().d;
        for i in 0..10 {
            assert!((d2[i] - 2.5 * d1[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn leaky_zero_mode_is_rejected() {
        let mut t = transform_closed_form(0.3).unwrap();
        t.l[0][3] += 1e-3;
        assert!(matches!(
            cubic_from_transform(&t, 1.0),
            Err(TransformError::InconsistentTransform { .. })
        ));
    }

    #[test]
    fn resonant_coefficients_are_the_sixth_and_ninth() {
        let c = cubic_from_table(0.534105, 1.0).unwrap();
        assert_eq!(c.d6(), c.d[5]);
        assert_eq!(c.d9(), c.d[8]);
        assert!(c.d6() < 0.0 && c.d9() < 0.0);
    }
}
