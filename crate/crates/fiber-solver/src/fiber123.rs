use crate::{FiberError, FiberPoint};

/// Upper end of the parameter range of the closed-form branch,
/// `u1 = 8/3 - (2/3) 19^(1/3)`.  As `u` approaches this value the
/// smallest inverse mass `a1` goes to zero, so the chain degenerates.
pub fn u1() -> f64 {
    8.0 / 3.0 - 2.0 / 3.0 * 19.0_f64.cbrt()
}

/// The level coordinate `eta2 = (a1 + a3)(a2 + a4)` along the branch,
/// `eta2(u) = (24 + 10 u - u^2)/784`.
pub fn eta2_of_u(u: f64) -> f64 {
    (24.0 + 10.0 * u - u * u) / 784.0
}

/// Recovers the branch parameter from a mass vector via
/// `u = 28 (a1 + a3) - 2`.
pub fn u_of_point(a: &[f64; 4]) -> f64 {
    28.0 * (a[0] + a[2]) - 2.0
}

/// Closed-form parametrisation of the fiber over the `1:2:3` resonance.
///
/// For `u` in `[0, u1)` the inverse masses are
///
/// ```text
/// a1, a3 = (2 + u)/56  -/+ (sqrt(2)/112) sqrt(u (6 - u)(16 - u)/(5 - u))
/// a2, a4 = (12 - u)/56 -/+ (1/(56 sqrt(2))) sqrt((6 + u)(4 - u)(10 - u)/(5 - u))
/// ```
///
/// so that `a1 <= a3`, `a2 <= a4`, `2 sum(a) = 1`, and the positive
/// spectrum of the chain is `(9/14, 4/14, 1/14)`.  At `u = 0` the pair
/// `a1 = a3` coincides; at `u = u1` the point leaves the positive cone.
pub fn fiber123(u: f64) -> Result<FiberPoint, FiberError> {
    if !(u >= 0.0 && u < u1()) {
        return Err(FiberError::OutOfDomain {
            name: "u",
            value: u,
            domain: "[0, u1)",
        });
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let m13 = (2.0 + u) / 56.0;
    let m24 = (12.0 - u) / 56.0;
    let r13 = sqrt2 / 112.0 * (u * (6.0 - u) * (16.0 - u) / (5.0 - u)).sqrt();
    let r24 = 1.0 / (56.0 * sqrt2) * ((6.0 + u) * (4.0 - u) * (10.0 - u) / (5.0 - u)).sqrt();
    FiberPoint::from_a([m13 - r13, m24 - r24, m13 + r13, m24 + r24], u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{solve_fiber_at, target_spectrum, ResonanceRatio, Stabilizer};
    use lattice_core::{spectrum, InverseMasses};

    #[test]
    fn branch_endpoint_value() {
        assert!((u1() - 0.88773223418537).abs() < 1e-13);
    }

    // Reference vectors: tools/oracles/modes_and_cubic.py
    #[test]
    fn branch_points_match_reference_values() {
        let cases = [
            (
                0.0,
                [
                    0.03571428571428571,
                    0.12680393775774362,
                    0.03571428571428571,
                    0.3017674908136849,
                ],
            ),
            (
                0.534105,
                [
                    0.00510292294988574,
                    0.11726499400743665,
                    0.08540082705011427,
                    0.2922312559925634,
                ],
            ),
            (
                0.826713,
                [
                    0.00068515727839675,
                    0.11239034903308533,
                    0.10026887843588897,
                    0.286655615252629,
                ],
            ),
        ];
        for (u, expected) in cases {
            let point = fiber123(u).unwrap();
            for (got, want) in point.a.iter().zip(expected) {
                assert!((got - want).abs() < 1e-14, "u = {u}: {got} vs {want}");
            }
        }
        assert_eq!(fiber123(0.0).unwrap().stabilizer, Stabilizer::Reflection13);
        assert_eq!(fiber123(0.5).unwrap().stabilizer, Stabilizer::Trivial);
    }

    #[test]
    fn branch_realises_the_one_two_three_spectrum() {
        let target = [9.0 / 14.0, 4.0 / 14.0, 1.0 / 14.0];
        for k in 0..=50 {
            let u = 0.85 * k as f64 / 50.0;
            let point = fiber123(u).unwrap();
            let masses = InverseMasses::new(point.a.to_vec()).unwrap();
            let spec = spectrum(&masses).unwrap();
            for (got, want) in spec.positive().iter().zip(target) {
                assert!((got - want).abs() <= 1e-10 * want, "u = {u}");
            }
            assert!((u_of_point(&point.a) - u).abs() < 1e-12);
        }
    }

    #[test]
    fn branch_agrees_with_the_level_solver() {
        let t = target_spectrum(&ResonanceRatio::new(1, 2, 3).unwrap());
        for u in [0.1, 0.3, 0.534105, 0.7, 0.826713] {
            let from_branch = fiber123(u).unwrap();
            let from_scheme = solve_fiber_at(&t, eta2_of_u(u)).unwrap();
            let matched = from_scheme.iter().any(|p| {
                p.a.iter()
                    .zip(from_branch.a)
                    .all(|(x, y)| (x - y).abs() < 1e-12)
            });
            assert!(matched, "no level solution matches the branch at u = {u}");
        }
    }

    #[test]
    fn parameter_domain_is_enforced() {
        for bad in [-0.1, u1(), 2.0, f64::NAN] {
            assert!(matches!(
                fiber123(bad),
                Err(FiberError::OutOfDomain { .. })
            ));
        }
    }
}
