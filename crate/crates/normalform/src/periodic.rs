use serde::Serialize;

use crate::{nf_polar_rhs, NormalFormError, PolarState, PLANE_TOL};

/// Multistart roots closer than this in every amplitude are duplicates.
const DEDUPE_TOL: f64 = 1e-7;

/// Largest admissible residual of the two reduced equations at a root.
const ROOT_TOL: f64 = 1e-11;

/// Amplitudes must exceed this for a root to count as general position.
const AMPLITUDE_FLOOR: f64 = 1e-6;

/// A relative equilibrium of the averaged flow away from the coordinate
/// planes, carrying a periodic orbit of the full resonant system.
///
/// All amplitudes are frozen and both combination angles sit at `0` or
/// `pi`, so every mode oscillates with a locked phase.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PeriodicSolution {
    /// Amplitudes `(r1, r2, r3)`.
    pub r: [f64; 3],
    /// Combination angles `(chi1, chi2)`, each `0` or `pi`.
    pub chi: [f64; 2],
    /// Sign `cos(chi1) cos(chi2)` entering the amplitude equations.
    pub sigma: f64,
    /// Largest component of the polar field at the solution (`eps = 1`).
    pub residual: f64,
}

/// First amplitude slaved to `(r2, r3)` by the stationarity of `chi2`.
fn r1_from(r2: f64, r3: f64, q: f64, sigma: f64) -> Option<f64> {
    let den = 4.0 * r2 * r2 - r3 * r3;
    if den.abs() < 1e-14 {
        return None;
    }
    Some(sigma * q * r3 * (r3 * r3 - 8.0 * r2 * r2) / den)
}

/// Stationarity of `chi1` and the energy level, the two equations left
/// after eliminating `r1`.
fn residuals(r2: f64, r3: f64, q: f64, sigma: f64, e0: f64) -> Option<[f64; 2]> {
    let r1 = r1_from(r2, r3, q, sigma)?;
    let c1 = r2 * r2 * r3 * r3 / 3.0
        - r1 * r1 * r3 * r3 / 2.0
        - r1 * r1 * r2 * r2
        - sigma * q * r1 * r3 * (r3 * r3 / 2.0 + 2.0 * r2 * r2);
    let h2 = 9.0 * r1 * r1 + 4.0 * r2 * r2 + r3 * r3 - 2.0 * e0;
    Some([c1, h2])
}

/// Damped Newton iteration on the two reduced equations.
fn newton(mut r2: f64, mut r3: f64, q: f64, sigma: f64, e0: f64) -> Option<[f64; 2]> {
    let norm = |v: [f64; 2]| v[0].abs().max(v[1].abs());
    let mut res = residuals(r2, r3, q, sigma, e0)?;
    for _ in 0..80 {
        if norm(res) <= 1e-13 {
            break;
        }
        let h2 = 1e-7 * (1.0 + r2.abs());
        let h3 = 1e-7 * (1.0 + r3.abs());
        let rp2 = residuals(r2 + h2, r3, q, sigma, e0)?;
        let rm2 = residuals(r2 - h2, r3, q, sigma, e0)?;
        let rp3 = residuals(r2, r3 + h3, q, sigma, e0)?;
        let rm3 = residuals(r2, r3 - h3, q, sigma, e0)?;
        let j = [
            [(rp2[0] - rm2[0]) / (2.0 * h2), (rp3[0] - rm3[0]) / (2.0 * h3)],
            [(rp2[1] - rm2[1]) / (2.0 * h2), (rp3[1] - rm3[1]) / (2.0 * h3)],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 {
            return None;
        }
        let step = [
            (res[0] * j[1][1] - res[1] * j[0][1]) / det,
            (res[1] * j[0][0] - res[0] * j[1][0]) / det,
        ];
        let mut lambda = 1.0;
        let mut accepted = false;
        while lambda > 1e-4 {
            let cand2 = r2 - lambda * step[0];
            let cand3 = r3 - lambda * step[1];
            if let Some(cand) = residuals(cand2, cand3, q, sigma, e0) {
                if norm(cand) < norm(res) {
                    r2 = cand2;
                    r3 = cand3;
                    res = cand;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (norm(res) <= ROOT_TOL).then_some([r2, r3])
}

/// Finds every relative equilibrium with all three amplitudes away from
/// the coordinate planes on the energy level `E0`.
///
/// Stationary angles satisfy `sin(chi1) = sin(chi2) = 0`, leaving the
/// sign `sigma = cos(chi1) cos(chi2)` and two amplitude equations that
/// are solved from a `grid x grid` multistart per sign.  Each amplitude
/// root is reported once per angle assignment realising its sign, so
/// the returned solutions are the individual periodic orbits.
pub fn find_periodic_general(
    d6: f64,
    d9: f64,
    e0: f64,
    grid: usize,
) -> Result<Vec<PeriodicSolution>, NormalFormError> {
    if d6.abs() <= 1e-12 {
        return Err(NormalFormError::DegenerateParameter {
            name: "d6",
            value: d6,
        });
    }
    if !(e0 > 0.0) {
        return Err(NormalFormError::OutOfDomain {
            name: "e0",
            value: e0,
            domain: "(0, inf)",
        });
    }
    if grid < 2 {
        return Err(NormalFormError::OutOfDomain {
            name: "grid",
            value: grid as f64,
            domain: "[2, inf)",
        });
    }
    let q = d9 / d6;
    let rmax2 = (e0 / 2.0).sqrt();
    let rmax3 = (2.0 * e0).sqrt();
    let mut roots: Vec<(f64, f64, f64, f64)> = Vec::new();
    for sigma in [1.0, -1.0] {
        for i in 0..grid {
            let start2 = 1e-3 + (rmax2 - 1e-3) * i as f64 / (grid - 1) as f64;
            for k in 0..grid {
                let start3 = 1e-3 + (rmax3 - 1e-3) * k as f64 / (grid - 1) as f64;
                let Some([r2, r3]) = newton(start2, start3, q, sigma, e0) else {
                    continue;
                };
                let Some(r1) = r1_from(r2, r3, q, sigma) else {
                    continue;
                };
                if !(r1 > AMPLITUDE_FLOOR && r2 > AMPLITUDE_FLOOR && r3 > AMPLITUDE_FLOOR) {
                    continue;
                }
                if roots.iter().any(|s| {
                    (r1 - s.0).abs() < DEDUPE_TOL
                        && (r2 - s.1).abs() < DEDUPE_TOL
                        && (r3 - s.2).abs() < DEDUPE_TOL
                        && sigma == s.3
                }) {
                    continue;
                }
                roots.push((r1, r2, r3, sigma));
            }
        }
    }
    roots.sort_by(|a, b| {
        (a.3, a.1, a.2)
            .partial_cmp(&(b.3, b.1, b.2))
            .expect("amplitudes are finite")
    });

    let pi = std::f64::consts::PI;
    let mut solutions = Vec::new();
    for (r1, r2, r3, sigma) in roots {
        let pairs: [[f64; 2]; 2] = if sigma > 0.0 {
            [[0.0, 0.0], [pi, pi]]
        } else {
            [[0.0, pi], [pi, 0.0]]
        };
        for chi in pairs {
            let state = PolarState { r: [r1, r2, r3], chi };
            let rate = nf_polar_rhs(&state, d6, d9, 1.0)?;
            let residual = rate.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            solutions.push(PeriodicSolution {
                r: [r1, r2, r3],
                chi,
                sigma,
                residual,
            });
        }
    }
    Ok(solutions)
}

/// Relative equilibrium with the second mode switched off and the first
/// mode slaved to the third.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EdgeEquilibrium {
    /// First-mode coefficients of `x1 = c cos 3t + d sin 3t`.
    pub c: f64,
    pub d: f64,
    /// Co-moving state `(c, 3d, 0, 0, a, b)`.
    pub state: [f64; 6],
}

/// Builds the edge equilibrium over a third-mode amplitude pair
/// `x3 = a cos t + b sin t`.
///
/// Requiring the second-mode pair to stay at rest forces
///
/// ```text
/// c = q a (3 b^2 - a^2) / (a^2 + b^2),
/// d = -q b (3 a^2 - b^2) / (a^2 + b^2),      q = d9 / d6,
/// ```
///
/// which degenerates to the bare third mode when `d9 = 0`.
pub fn edge_family(
    d6: f64,
    d9: f64,
    a: f64,
    b: f64,
) -> Result<EdgeEquilibrium, NormalFormError> {
    if d6.abs() <= 1e-12 {
        return Err(NormalFormError::DegenerateParameter {
            name: "d6",
            value: d6,
        });
    }
    let s = a * a + b * b;
    if s <= PLANE_TOL * PLANE_TOL {
        return Err(NormalFormError::DegenerateParameter {
            name: "a^2 + b^2",
            value: s,
        });
    }
    let q = d9 / d6;
    let c = q * a * (3.0 * b * b - a * a) / s;
    let d = -q * b * (3.0 * a * a - b * b) / s;
    Ok(EdgeEquilibrium {
        c,
        d,
        state: [c, 3.0 * d, 0.0, 0.0, a, b],
    })
}
