use serde::{Deserialize, Serialize};

use crate::FiberError;

/// Tolerance used to recognise coordinate coincidences (`a1 = a3` and so
/// on) when attaching a stabiliser label to a point.
const SYMMETRY_TOL: f64 = 1e-10;

/// Subgroup of the dihedral group `D_4` fixing a mass vector.
///
/// Only the subgroups that actually occur as stabilisers of fiber points
/// are distinguished: the reflection swapping positions 1 and 3, the one
/// swapping 2 and 4, the Klein group containing both, and the full group
/// at the equal-mass centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stabilizer {
    Trivial,
    Reflection13,
    Reflection24,
    Klein,
    Full,
}

impl Stabilizer {
    /// Determines the stabiliser of `a` from coordinate coincidences.
    pub fn of(a: &[f64; 4]) -> Self {
        let eq = |x: f64, y: f64| (x - y).abs() <= SYMMETRY_TOL;
        let all_equal = eq(a[0], a[1]) && eq(a[1], a[2]) && eq(a[2], a[3]);
        if all_equal {
            return Stabilizer::Full;
        }
        match (eq(a[0], a[2]), eq(a[1], a[3])) {
            (true, true) => Stabilizer::Klein,
            (true, false) => Stabilizer::Reflection13,
            (false, true) => Stabilizer::Reflection24,
            (false, false) => Stabilizer::Trivial,
        }
    }

    /// Order of the subgroup.
    pub fn order(&self) -> usize {
        match self {
            Stabilizer::Trivial => 1,
            Stabilizer::Reflection13 | Stabilizer::Reflection24 => 2,
            Stabilizer::Klein => 4,
            Stabilizer::Full => 8,
        }
    }

    /// Size of the `D_4` orbit of a point with this stabiliser.
    pub fn orbit_size(&self) -> usize {
        8 / self.order()
    }
}

/// A single solution of the inverse problem: a positive mass vector on
/// the hyperplane `2 sum(a) = 1` realising the target spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberPoint {
    /// Inverse masses `(a1, a2, a3, a4)`.
    pub a: [f64; 4],
    /// Value of the branch parameter at which the point was produced
    /// (`eta2` for scheme solutions, `u` for the closed-form branch).
    pub parameter: f64,
    /// Subgroup of `D_4` fixing the point.
    pub stabilizer: Stabilizer,
}

impl FiberPoint {
    /// Wraps a mass vector, validating positivity and attaching its
    /// stabiliser label.
    pub fn from_a(a: [f64; 4], parameter: f64) -> Result<Self, FiberError> {
        for (index, &value) in a.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(FiberError::Lattice(
                    lattice_core::LatticeError::NonPositiveMass { index, value },
                ));
            }
        }
        Ok(Self {
            a,
            parameter,
            stabilizer: Stabilizer::of(&a),
        })
    }

    /// The inverse masses as an [`lattice_core::InverseMasses`] value.
    pub fn masses(&self) -> Result<lattice_core::InverseMasses, FiberError> {
        Ok(lattice_core::InverseMasses::new(self.a.to_vec())?)
    }
}

/// Spherical coordinates of a fiber point on the ellipsoid
/// `x1^2 + 2 x2^2 + 2 x3^2 = 5/16 - eta` inside the trace hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalCoords {
    /// Azimuth in `[-pi, pi]`, measured in the `(x2, x3)` plane.
    pub phi: f64,
    /// Inclination in `[-pi/2, pi/2]`, from `x1 = rho sin(psi)`.
    pub psi: f64,
    /// Ellipsoid radius `sqrt(x1^2 + 2 x2^2 + 2 x3^2)`.
    pub rho: f64,
    /// The underlying hyperplane coordinates `(x1, x2, x3)`.
    pub x: [f64; 3],
}

/// Maps a fiber point to spherical coordinates on its ellipsoid.
///
/// The hyperplane coordinates are
/// `x1 = (-a1 + a2 - a3 + a4)/2`, `x2 = (a4 - a2)/sqrt(2)`,
/// `x3 = (a3 - a1)/sqrt(2)`; the angles satisfy `x1 = rho sin(psi)`,
/// `x2 = (rho/sqrt(2)) cos(psi) cos(phi)`,
/// `x3 = (rho/sqrt(2)) cos(psi) sin(phi)`.
/// The equal-mass centre maps to `x = 0` where no angles exist.
pub fn spherical_coords(p: &FiberPoint) -> Result<SphericalCoords, FiberError> {
    let a = p.a;
    let trace = 2.0 * a.iter().sum::<f64>();
    if (trace - 1.0).abs() > 1e-9 {
        return Err(FiberError::NotNormalized(trace));
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let x1 = (-a[0] + a[1] - a[2] + a[3]) / 2.0;
    let x2 = (a[3] - a[1]) / sqrt2;
    let x3 = (a[2] - a[0]) / sqrt2;
    let rho = (x1 * x1 + 2.0 * x2 * x2 + 2.0 * x3 * x3).sqrt();
    if rho < 1e-12 {
        return Err(FiberError::UndefinedAngles);
    }
    let psi = (x1 / rho).clamp(-1.0, 1.0).asin();
    let phi = x3.atan2(x2);
    Ok(SphericalCoords {
        phi,
        psi,
        rho,
        x: [x1, x2, x3],
    })
}
