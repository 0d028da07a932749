use std::fmt;

use serde::Serialize;

use crate::{region_tests, FiberError, FiberParams, FiberPoint, TargetSpectrum};

/// Width target of the bisection refining interval boundaries.
const BOUNDARY_TOL: f64 = 1e-12;

/// Grid maxima of the margin above this level are candidate tangencies.
const TOUCH_PREFILTER: f64 = -1e-6;

/// A refined tangency is accepted when the margin maximum reaches this.
const TOUCH_ACCEPT: f64 = -1e-9;

/// Refined intervals thinner than this are tangencies seen twice.
const MIN_INTERVAL_WIDTH: f64 = 1e-8;

/// Which of the five constraint values vanishes at an interval end.
///
/// `D13` and `D24` ends are interior to the positive cone (two masses
/// collide there and the curve continues on a mirror image); the other
/// three kinds lie on the cone boundary, where a mass reaches zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EndpointKind {
    Eta1,
    P13,
    P24,
    D13,
    D24,
}

impl EndpointKind {
    /// The constraint closest to zero, which is the one that vanishes
    /// at a refined boundary.
    fn active(params: &FiberParams) -> Self {
        let pairs = [
            (params.eta1, EndpointKind::Eta1),
            (params.p13, EndpointKind::P13),
            (params.p24, EndpointKind::P24),
            (params.d13, EndpointKind::D13),
            (params.d24, EndpointKind::D24),
        ];
        pairs
            .into_iter()
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
            .unwrap()
            .1
    }

    /// Whether the curve closes up at this end by gluing to a mirror
    /// image instead of running out of the positive cone.
    pub fn is_gluing(&self) -> bool {
        matches!(self, EndpointKind::D13 | EndpointKind::D24)
    }
}

/// A maximal interval of `eta2` levels met by the fiber.
///
/// Over the interior of the interval each level carries eight points
/// (the dihedral orbit of the fundamental-domain pair); the arcs they
/// trace are glued pairwise at every `D13` or `D24` end, so the number
/// of connected components is eight divided by the order of the group
/// generated by the gluing reflections.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FiberBranch {
    /// Lower interval end.
    pub eta2_lo: f64,
    /// Upper interval end.
    pub eta2_hi: f64,
    /// Constraint vanishing at the lower end.
    pub left: EndpointKind,
    /// Constraint vanishing at the upper end.
    pub right: EndpointKind,
    /// Number of connected components this interval contributes.
    pub components: usize,
    /// True when the components are open curves reaching the boundary
    /// of the positive cone.
    pub open: bool,
    /// Eigenvalue product of the underlying target.
    pub xi: f64,
    /// Second symmetric function of the underlying target.
    pub eta: f64,
}

impl FiberBranch {
    /// Midpoint of the interval, a convenient sampling level.
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.eta2_lo + self.eta2_hi)
    }

    /// Solves the inverse problem at a level inside this interval.
    pub fn sample(&self, eta2: f64) -> Result<Vec<FiberPoint>, FiberError> {
        if !(eta2 >= self.eta2_lo && eta2 <= self.eta2_hi) {
            return Err(FiberError::OutOfDomain {
                name: "eta2",
                value: eta2,
                domain: "branch interval",
            });
        }
        Ok(FiberParams::evaluate_xi_eta(self.xi, self.eta, eta2)?.points())
    }
}

/// An isolated level where the fiber touches the constraint set in a
/// single dihedral orbit of points.
#[derive(Debug, Clone, Serialize)]
pub struct FiberTouch {
    /// Level of the tangency.
    pub eta2: f64,
    /// Margin maximum reached there (zero up to roundoff).
    pub margin: f64,
    /// Fundamental-domain representative of the orbit.
    pub point: FiberPoint,
    /// Orbit size, the number of mass vectors the tangency contributes.
    pub orbit: usize,
}

/// Topological type of a fiber, with the component count.
///
/// When curve components and isolated points coexist the dominant kind
/// is reported, with precedence open curves, then compact curves, then
/// points; the `branches` and `touches` lists keep the full detail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "count")]
pub enum FiberKind {
    Empty,
    FinitePoints(usize),
    CompactCurves(usize),
    OpenCurves(usize),
}

impl fmt::Display for FiberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberKind::Empty => write!(f, "empty"),
            FiberKind::FinitePoints(n) => write!(f, "{n} point{}", plural(*n)),
            FiberKind::CompactCurves(n) => {
                write!(f, "{n} compact curve{}", plural(*n))
            }
            FiberKind::OpenCurves(n) => write!(f, "{n} open curve{}", plural(*n)),
        }
    }
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

/// Full description of the set of mass vectors realising a target
/// spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct FiberClassification {
    /// Eigenvalue product of the target.
    pub xi: f64,
    /// Second symmetric function of the target.
    pub eta: f64,
    /// Dominant topological type with its component count.
    pub kind: FiberKind,
    /// Maximal `eta2` intervals met by the fiber.
    pub branches: Vec<FiberBranch>,
    /// Isolated tangency levels.
    pub touches: Vec<FiberTouch>,
    /// Number of grid levels scanned.
    pub grid: usize,
}

/// Classifies the fiber over `target` by scanning the margin of the
/// pair-sum reduction over `grid` interior levels of `eta2`.
///
/// Interval boundaries are refined by bisection to 1e-12 and labelled
/// by their vanishing constraint; tangencies are refined by a ternary
/// search followed by parabola-vertex iterations.  The equal-mass
/// spectrum, which lies on the singular line of the reduction, is
/// recognised and returns its one-point fiber directly; all other
/// targets on that line are rejected.
pub fn fiber_classify(
    target: &TargetSpectrum,
    grid: usize,
) -> Result<FiberClassification, FiberError> {
    let xi = target.xi();
    let eta = target.eta();
    let report = region_tests(xi, eta)?;
    if grid < 10 {
        return Err(FiberError::OutOfDomain {
            name: "grid",
            value: grid as f64,
            domain: "[10, inf)",
        });
    }
    if report.on_exceptional_line {
        if (xi - 1.0 / 32.0).abs() < 1e-9 {
            let point = FiberPoint::from_a([0.125; 4], 1.0 / 16.0)?;
            return Ok(FiberClassification {
                xi,
                eta,
                kind: FiberKind::FinitePoints(1),
                branches: Vec::new(),
                touches: vec![FiberTouch {
                    eta2: 1.0 / 16.0,
                    margin: 0.0,
                    point,
                    orbit: 1,
                }],
                grid,
            });
        }
        return Err(FiberError::ExceptionalLine { xi, eta });
    }

    let margin = |eta2: f64| -> f64 {
        FiberParams::evaluate_xi_eta(xi, eta, eta2)
            .map(|p| p.margin())
            .unwrap_or(f64::NEG_INFINITY)
    };
    let step = (1.0 / 16.0) / (grid as f64 + 1.0);
    let level = |i: usize| (i as f64 + 1.0) * step;
    let margins: Vec<f64> = (0..grid).map(|i| margin(level(i))).collect();

    let mut branches = Vec::new();
    let mut touches = Vec::new();

    let mut i = 0;
    while i < grid {
        if margins[i] <= 0.0 {
            i += 1;
            continue;
        }
        let start = i;
        while i < grid && margins[i] > 0.0 {
            i += 1;
        }
        let end = i - 1;
        let lo_outer = if start == 0 { step * 1e-9 } else { level(start - 1) };
        let hi_outer = if end == grid - 1 {
            1.0 / 16.0 - 1e-14
        } else {
            level(end + 1)
        };
        let eta2_lo = bisect_boundary(&margin, lo_outer, level(start));
        let eta2_hi = bisect_boundary(&margin, hi_outer, level(end));
        if eta2_hi - eta2_lo < MIN_INTERVAL_WIDTH {
            if let Some(touch) = refine_touch(xi, eta, &margin, eta2_lo, eta2_hi) {
                touches.push(touch);
            }
            continue;
        }
        let left = EndpointKind::active(&FiberParams::evaluate_xi_eta(xi, eta, eta2_lo)?);
        let right = EndpointKind::active(&FiberParams::evaluate_xi_eta(xi, eta, eta2_hi)?);
        let glue13 = left == EndpointKind::D13 || right == EndpointKind::D13;
        let glue24 = left == EndpointKind::D24 || right == EndpointKind::D24;
        let glue_order = match (glue13, glue24) {
            (false, false) => 1,
            (true, true) => 4,
            _ => 2,
        };
        branches.push(FiberBranch {
            eta2_lo,
            eta2_hi,
            left,
            right,
            components: 8 / glue_order,
            open: !(left.is_gluing() && right.is_gluing()),
            xi,
            eta,
        });
    }

    for i in 1..grid.saturating_sub(1) {
        let m = margins[i];
        if m > 0.0 || m <= TOUCH_PREFILTER {
            continue;
        }
        if !(m >= margins[i - 1] && m > margins[i + 1]) {
            continue;
        }
        if margins[i - 1] > 0.0 || margins[i + 1] > 0.0 {
            continue;
        }
        if let Some(touch) = refine_touch(xi, eta, &margin, level(i - 1), level(i + 1)) {
            touches.push(touch);
        }
    }

    touches.sort_by(|a, b| a.eta2.partial_cmp(&b.eta2).unwrap());

    let open_total: usize = branches.iter().filter(|b| b.open).map(|b| b.components).sum();
    let compact_total: usize = branches
        .iter()
        .filter(|b| !b.open)
        .map(|b| b.components)
        .sum();
    let point_total: usize = touches.iter().map(|t| t.orbit).sum();
    let kind = if open_total > 0 {
        FiberKind::OpenCurves(open_total)
    } else if compact_total > 0 {
        FiberKind::CompactCurves(compact_total)
    } else if point_total > 0 {
        FiberKind::FinitePoints(point_total)
    } else {
        FiberKind::Empty
    };

    Ok(FiberClassification {
        xi,
        eta,
        kind,
        branches,
        touches,
        grid,
    })
}

/// Locates the sign change of the margin between `outside`
/// (nonpositive margin) and `inside` (positive margin).
fn bisect_boundary(margin: &dyn Fn(f64) -> f64, mut outside: f64, mut inside: f64) -> f64 {
    for _ in 0..200 {
        if (inside - outside).abs() < BOUNDARY_TOL {
            break;
        }
        let mid = 0.5 * (outside + inside);
        if margin(mid) > 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    0.5 * (outside + inside)
}

/// Refines a candidate tangency inside `[a, b]` and converts it into a
/// touch record when the margin maximum is zero up to roundoff.
///
/// A ternary search shrinks the bracket to 1e-8; parabola-vertex
/// steps with shrinking stencils then place the maximum to about
/// 1e-11, which the margin's curvature (of order ten) turns into mass
/// coordinates accurate to well below 1e-10.
fn refine_touch(
    xi: f64,
    eta: f64,
    margin: &dyn Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
) -> Option<FiberTouch> {
    for _ in 0..120 {
        if b - a < 1e-8 {
            break;
        }
        let third = (b - a) / 3.0;
        if margin(a + third) < margin(b - third) {
            a += third;
        } else {
            b -= third;
        }
    }
    let mut center = 0.5 * (a + b);
    for h in [1e-5, 1e-6, 1e-7] {
        let f1 = margin(center - h);
        let f2 = margin(center);
        let f3 = margin(center + h);
        let denom = f1 - 2.0 * f2 + f3;
        if denom.abs() < 1e-300 {
            continue;
        }
        let shift = 0.5 * h * (f1 - f3) / denom;
        if shift.abs() < 2.0 * h {
            center += shift;
        }
    }
    let peak = margin(center);
    if peak < TOUCH_ACCEPT {
        return None;
    }
    let params = FiberParams::evaluate_xi_eta(xi, eta, center).ok()?;
    let point = params.points().into_iter().next()?;
    let orbit = point.stabilizer.orbit_size();
    Some(FiberTouch {
        eta2: center,
        margin: peak,
        point,
        orbit,
    })
}
