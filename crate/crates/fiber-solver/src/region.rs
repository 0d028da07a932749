use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{FiberError, Rational};

/// Membership report for a point `(xi, eta)` of the symmetric-function
/// plane.
///
/// `in_image` says whether some real symmetric matrix conjugate realises
/// the spectrum at all; `nonempty` whether a positive mass vector does;
/// `compact` whether the fiber is additionally bounded away from zero
/// masses; `on_exceptional_line` flags the line `eta = 4 xi + 3/16` where
/// the pair-sum scheme is incomplete.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub in_image: bool,
    pub nonempty: bool,
    pub compact: bool,
    pub on_exceptional_line: bool,
    /// Value of the discriminant invariant `T` at the point.
    pub t_invariant: f64,
}

/// The discriminant invariant
/// `T(xi, eta) = 27 xi^2 + 4 eta^3 - 18 xi eta - eta^2 + 4 xi`,
/// nonpositive exactly on the image of the spectrum map.
pub fn t_invariant(xi: f64, eta: f64) -> f64 {
    27.0 * xi * xi + 4.0 * eta * eta * eta - 18.0 * xi * eta - eta * eta + 4.0 * xi
}

/// Exact rational evaluation of the discriminant invariant `T`.
pub fn t_invariant_exact(xi: Rational, eta: Rational) -> Rational {
    let r = |n: i128| Rational::from_integer(n);
    r(27) * xi * xi + r(4) * eta * eta * eta - r(18) * xi * eta - eta * eta + r(4) * xi
}

/// Polynomial whose nonpositivity (inside the box
/// `(0, 1/32) x (0, 5/16)`) marks fibers that reach a zero mass and are
/// therefore not compact.
fn noncompact_poly(xi: f64, eta: f64) -> f64 {
    8.0 * xi * xi + eta * eta * eta - 5.0 * xi * eta - eta * eta / 4.0 + 9.0 / 8.0 * xi
}

fn noncompact_poly_exact(xi: Rational, eta: Rational) -> Rational {
    let r = Rational::new;
    r(8, 1) * xi * xi + eta * eta * eta - r(5, 1) * xi * eta - eta * eta * r(1, 4)
        + r(9, 8) * xi
}

/// Classifies `(xi, eta)` against the image, positivity, and compactness
/// regions in floating point.
///
/// The boundaries are algebraic curves; points within about `1e-12` of a
/// boundary should use [`region_tests_exact`] instead.
pub fn region_tests(xi: f64, eta: f64) -> Result<RegionReport, FiberError> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(FiberError::OutOfDomain {
            name: "xi",
            value: xi,
            domain: "(0, inf)",
        });
    }
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(FiberError::OutOfDomain {
            name: "eta",
            value: eta,
            domain: "(0, inf)",
        });
    }
    let t = t_invariant(xi, eta);
    let in_image = xi <= 1.0 / 27.0 && eta <= 1.0 / 3.0 && t <= 0.0;
    let nonempty = xi <= 1.0 / 32.0 && eta <= 2.0 * xi + 0.25 && t <= 0.0;
    let in_box = xi < 1.0 / 32.0 && eta < 5.0 / 16.0;
    let noncompact = in_box && noncompact_poly(xi, eta) <= 0.0;
    Ok(RegionReport {
        in_image,
        nonempty,
        compact: nonempty && !noncompact,
        on_exceptional_line: (eta - 4.0 * xi - 3.0 / 16.0).abs() < 1e-12,
        t_invariant: t,
    })
}

/// Exact rational version of [`region_tests`]: every comparison is an
/// exact comparison of rationals, so boundary points (such as the cusp
/// `(1/27, 1/3)` where `T` vanishes identically) are classified without
/// rounding error.
pub fn region_tests_exact(xi: Rational, eta: Rational) -> Result<RegionReport, FiberError> {
    let zero = Rational::zero();
    if xi <= zero || eta <= zero {
        return Err(FiberError::OutOfDomain {
            name: "xi or eta",
            value: 0.0,
            domain: "(0, inf)",
        });
    }
    let t = t_invariant_exact(xi, eta);
    let in_image = xi <= Rational::new(1, 27) && eta <= Rational::new(1, 3) && t <= zero;
    let nonempty = xi <= Rational::new(1, 32)
        && eta <= Rational::new(2, 1) * xi + Rational::new(1, 4)
        && t <= zero;
    let in_box = xi < Rational::new(1, 32) && eta < Rational::new(5, 16);
    let noncompact = in_box && noncompact_poly_exact(xi, eta) <= zero;
    let on_line = eta - Rational::new(4, 1) * xi - Rational::new(3, 16) == zero;
    Ok(RegionReport {
        in_image,
        nonempty,
        compact: nonempty && !noncompact,
        on_exceptional_line: on_line,
        t_invariant: rational_to_f64(t),
    })
}

fn rational_to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{xi_eta_exact, ResonanceRatio};

    fn exact_of(ratio: &str) -> (Rational, Rational) {
        xi_eta_exact(&ratio.parse::<ResonanceRatio>().unwrap())
    }

    #[test]
    fn cusp_is_an_exact_zero_of_t() {
        let t = t_invariant_exact(Rational::new(1, 27), Rational::new(1, 3));
        assert!(t.is_zero());
        let report = region_tests_exact(Rational::new(1, 27), Rational::new(1, 3)).unwrap();
        assert!(report.in_image);
    }

    #[test]
    fn one_one_two_sits_exactly_on_t_zero() {
        let (xi, eta) = exact_of("1:1:2");
        assert_eq!((xi, eta), (Rational::new(1, 54), Rational::new(1, 4)));
        assert!(t_invariant_exact(xi, eta).is_zero());
        assert!(region_tests_exact(xi, eta).unwrap().nonempty);
    }

    #[test]
    fn one_two_two_fails_the_positivity_cut() {
        let (xi, eta) = exact_of("1:2:2");
        let report = region_tests_exact(xi, eta).unwrap();
        assert!(report.in_image);
        assert!(!report.nonempty);
        assert!(eta > Rational::new(2, 1) * xi + Rational::new(1, 4));
    }

    #[test]
    fn one_two_three_is_noncompact() {
        let (xi, eta) = exact_of("1:2:3");
        let report = region_tests_exact(xi, eta).unwrap();
        assert!(report.nonempty);
        assert!(!report.compact);
        let approx = region_tests(1.0 / 686.0 * 9.0, 0.25).unwrap();
        assert!(approx.nonempty && !approx.compact);
    }

    #[test]
    fn two_three_four_is_compact() {
        let (xi, eta) = exact_of("2:3:4");
        let report = region_tests_exact(xi, eta).unwrap();
        assert!(report.nonempty);
        assert!(report.compact);
    }

    #[test]
    fn classical_point_lies_on_exceptional_line() {
        let report =
            region_tests_exact(Rational::new(1, 32), Rational::new(5, 16)).unwrap();
        assert!(report.on_exceptional_line);
        let approx = region_tests(1.0 / 32.0, 5.0 / 16.0).unwrap();
        assert!(approx.on_exceptional_line);
    }

    #[test]
    fn rejects_nonpositive_input() {
        assert!(region_tests(-0.1, 0.2).is_err());
        assert!(region_tests(0.01, 0.0).is_err());
        assert!(region_tests(f64::NAN, 0.2).is_err());
    }
}
