use serde::Serialize;

use crate::{FiberError, FiberPoint, TargetSpectrum};

/// Discriminants closer to zero than this are snapped to an exact double
/// root.  The square root doubles the relative error of its argument's
/// distance from zero, so without the snap a tangency known to within
/// 1e-17 would scatter the two roots by about 3e-9.
const DISCRIMINANT_SNAP: f64 = 1e-12;

/// Distance from the line `eta = 4 xi + 3/16` below which the reduction
/// to a quadratic scheme breaks down.
const EXCEPTIONAL_LINE_TOL: f64 = 1e-12;

/// Intermediate quantities of the pair-sum reduction at a fixed value of
/// the product `eta2 = (a1 + a3)(a2 + a4)`.
///
/// On the hyperplane `a1 + a2 + a3 + a4 = 1/2` the two pair sums are the
/// roots of `s^2 - s/2 + eta2`, and the pair products follow linearly
/// from the invariants `eta` and `xi` of the target spectrum.  The four
/// masses are then roots of two quadratics with discriminants `d13` and
/// `d24`.  A mass vector exists exactly when all five constraint values
/// (`eta1`, `p13`, `p24`, `d13`, `d24`) are nonnegative, with the first
/// three strictly positive.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FiberParams {
    /// The fixed pair-sum product, the coordinate along the fiber.
    pub eta2: f64,
    /// Smaller pair sum `a1 + a3`.
    pub s13: f64,
    /// Larger pair sum `a2 + a4`.
    pub s24: f64,
    /// Sum of the pair products, `p13 + p24 = (eta - 3 eta2)/4`.
    pub eta1: f64,
    /// Pair product `a1 a3`.
    pub p13: f64,
    /// Pair product `a2 a4`.
    pub p24: f64,
    /// Discriminant `s13^2 - 4 p13` of the (1,3) quadratic.
    pub d13: f64,
    /// Discriminant `s24^2 - 4 p24` of the (2,4) quadratic.
    pub d24: f64,
}

impl FiberParams {
    /// Evaluates the reduction for `target` at the coordinate `eta2`.
    ///
    /// Fails when `eta2` leaves the open interval `(0, 1/16)` or when
    /// the target lies on the line `eta = 4 xi + 3/16`, where the linear
    /// solve for the pair products is singular for every `eta2`.
    pub fn evaluate(target: &TargetSpectrum, eta2: f64) -> Result<Self, FiberError> {
        Self::evaluate_xi_eta(target.xi(), target.eta(), eta2)
    }

    /// Same as [`FiberParams::evaluate`], but taking the symmetric
    /// functions directly.
    pub fn evaluate_xi_eta(xi: f64, eta: f64, eta2: f64) -> Result<Self, FiberError> {
        if (eta - 4.0 * xi - 3.0 / 16.0).abs() < EXCEPTIONAL_LINE_TOL {
            return Err(FiberError::ExceptionalLine { xi, eta });
        }
        if !(eta2 > 0.0 && eta2 < 1.0 / 16.0) {
            return Err(FiberError::OutOfDomain {
                name: "eta2",
                value: eta2,
                domain: "(0, 1/16)",
            });
        }
        let root = (1.0 - 16.0 * eta2).sqrt();
        let s13 = (1.0 - root) / 4.0;
        let s24 = (1.0 + root) / 4.0;
        let eta1 = (eta - 3.0 * eta2) / 4.0;
        let p13 = (xi / 4.0 - s13 * eta1) / (root / 2.0);
        let p24 = eta1 - p13;
        let d13 = s13 * s13 - 4.0 * p13;
        let d24 = s24 * s24 - 4.0 * p24;
        Ok(Self {
            eta2,
            s13,
            s24,
            eta1,
            p13,
            p24,
            d13,
            d24,
        })
    }

    /// Smallest of the five constraint values.  The fiber meets this
    /// `eta2` level exactly when the margin is positive (or zero, at a
    /// tangency of one of the discriminants).
    pub fn margin(&self) -> f64 {
        self.eta1
            .min(self.p13)
            .min(self.p24)
            .min(self.d13)
            .min(self.d24)
    }

    /// Produces the mass vectors on this `eta2` level that lie in the
    /// fundamental domain `a1 <= a3`, `a2 <= a4`.
    ///
    /// Returns an empty list when a constraint is violated, one point
    /// when the two solutions coincide, and otherwise the pair related
    /// by exchanging the diagonals, `(a1, a2, a3, a4)` and
    /// `(a2, a1, a4, a3)`.
    pub fn points(&self) -> Vec<FiberPoint> {
        let snap = |d: f64| if d.abs() < DISCRIMINANT_SNAP { 0.0 } else { d };
        let d13 = snap(self.d13);
        let d24 = snap(self.d24);
        if self.eta1 <= 0.0 || self.p13 <= 0.0 || self.p24 <= 0.0 || d13 < 0.0 || d24 < 0.0 {
            return Vec::new();
        }
        let r13 = d13.sqrt();
        let r24 = d24.sqrt();
        let a1 = (self.s13 - r13) / 2.0;
        let a3 = (self.s13 + r13) / 2.0;
        let a2 = (self.s24 - r24) / 2.0;
        let a4 = (self.s24 + r24) / 2.0;
        let primary = [a1, a2, a3, a4];
        let swapped = [a2, a1, a4, a3];
        let mut out = Vec::with_capacity(2);
        if let Ok(p) = FiberPoint::from_a(primary, self.eta2) {
            out.push(p);
        }
        if swapped != primary {
            if let Ok(p) = FiberPoint::from_a(swapped, self.eta2) {
                out.push(p);
            }
        }
        out
    }
}

/// Solves the inverse problem on one `eta2` level of the fiber of
/// `target`.
///
/// The returned points all satisfy `2 sum(a) = 1`, have the prescribed
/// positive spectrum, and lie in the fundamental domain `a1 <= a3`,
/// `a2 <= a4`.  An empty list means the fiber does not reach this level;
/// errors are reserved for invalid input (coordinate outside `(0, 1/16)`
/// or a target on the singular line `eta = 4 xi + 3/16`).
pub fn solve_fiber_at(target: &TargetSpectrum, eta2: f64) -> Result<Vec<FiberPoint>, FiberError> {
    Ok(FiberParams::evaluate(target, eta2)?.points())
}
