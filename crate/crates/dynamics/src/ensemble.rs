use serde::{Deserialize, Serialize};

use crate::dopri5::{dopri5, IntegratorOptions};
use crate::error::DynamicsError;
use crate::system::System;

/// Radical-inverse (van der Corput) value of `index` in `base`; the
/// coordinates of a Halton point are the values in coprime bases.
pub fn halton(index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let mut i = index;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Default perturbation radius: 5% of the amplitude scale
/// `sqrt(2 E0)` of the target shell.
pub fn default_spread(energy: f64) -> f64 {
    0.05 * (2.0 * energy).sqrt()
}

/// Deterministic cloud of initial states around a mode vertex of a
/// fixed quadratic-energy shell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    /// Vertex (1, 2, or 3) the cloud surrounds.
    pub center_mode: usize,
    /// Quadratic energy of the shell the members are projected onto.
    pub energy: f64,
    /// Number of members.
    pub count: usize,
    /// Radius of the ball of transverse perturbations.
    pub spread: f64,
    /// Offset into the low-discrepancy sequence; same seed, same cloud.
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(
        center_mode: usize,
        energy: f64,
        count: usize,
        spread: f64,
        seed: u64,
    ) -> Result<Self, DynamicsError> {
        if !(1..=3).contains(&center_mode) {
            return Err(DynamicsError::OutOfDomain {
                name: "center_mode",
                value: center_mode as f64,
                domain: "a mode index 1, 2, or 3",
            });
        }
        if !(energy.is_finite() && energy > 0.0) {
            return Err(DynamicsError::OutOfDomain {
                name: "energy",
                value: energy,
                domain: "positive reals",
            });
        }
        if count == 0 {
            return Err(DynamicsError::OutOfDomain {
                name: "count",
                value: 0.0,
                domain: "at least one member",
            });
        }
        if !(spread.is_finite() && spread > 0.0) {
            return Err(DynamicsError::OutOfDomain {
                name: "spread",
                value: spread,
                domain: "positive reals",
            });
        }
        Ok(Self {
            center_mode,
            energy,
            count,
            spread,
            seed,
        })
    }

    /// The published cloud: 98 members around a vertex of the
    /// `H2 = 4.5` shell at the default spread.
    pub fn standard(center_mode: usize) -> Result<Self, DynamicsError> {
        Self::new(center_mode, 4.5, 98, default_spread(4.5), 0)
    }
}

/// Generates the members of the cloud in ensemble order.
///
/// A Halton point in bases (2, 3, 5, 7) yields a perturbation of the
/// four coordinates transverse to the center mode; points outside the
/// ball of radius `spread` are rejected, and the center-mode amplitude
/// is then chosen to land the state exactly on the `H2 = energy`
/// shell.
pub fn ensemble_states(spec: &EnsembleSpec) -> Result<Vec<[f64; 6]>, DynamicsError> {
    let e0 = spec.energy;
    let mut states = Vec::with_capacity(spec.count);
    let mut index = spec.seed + 1;
    while states.len() < spec.count {
        let u: [f64; 4] = std::array::from_fn(|k| halton(index, [2, 3, 5, 7][k]));
        index += 1;
        let p: [f64; 4] = std::array::from_fn(|k| (2.0 * u[k] - 1.0) * spec.spread);
        if p.iter().map(|&x| x * x).sum::<f64>() > spec.spread * spec.spread {
            continue;
        }
        let mut x = [0.0; 6];
        let transverse = match spec.center_mode {
            1 => {
                x[1] = p[0];
                x[4] = p[1];
                x[2] = p[2];
                x[5] = p[3];
                0.5 * (x[4] * x[4] + 4.0 * x[1] * x[1]) + 0.5 * (x[5] * x[5] + x[2] * x[2])
            }
            2 => {
                x[0] = p[0];
                x[3] = p[1];
                x[2] = p[2];
                x[5] = p[3];
                0.5 * (x[3] * x[3] + 9.0 * x[0] * x[0]) + 0.5 * (x[5] * x[5] + x[2] * x[2])
            }
            3 => {
                x[0] = p[0];
                x[3] = p[1];
                x[1] = p[2];
                x[4] = p[3];
                0.5 * (x[3] * x[3] + 9.0 * x[0] * x[0]) + 0.5 * (x[4] * x[4] + 4.0 * x[1] * x[1])
            }
            _ => unreachable!("validated in EnsembleSpec::new"),
        };
        if transverse >= e0 {
            return Err(DynamicsError::OutOfDomain {
                name: "spread",
                value: spec.spread,
                domain: "small enough to leave energy for the center mode",
            });
        }
        let omega_squared = [9.0, 4.0, 1.0][spec.center_mode - 1];
        x[spec.center_mode - 1] = (2.0 * (e0 - transverse) / omega_squared).sqrt();
        states.push(x);
    }
    Ok(states)
}

/// Normalized action triple `(9 r1^2, 4 r2^2, r3^2) / (2 h2)` of a
/// modal state; the entries are nonnegative and sum to one, placing
/// the state on the action simplex with the normal modes at the
/// vertices.
pub fn simplex_of(state: &[f64]) -> [f64; 3] {
    assert_eq!(state.len(), 6);
    let t1 = 9.0 * state[0] * state[0] + state[3] * state[3];
    let t2 = 4.0 * state[1] * state[1] + state[4] * state[4];
    let t3 = state[2] * state[2] + state[5] * state[5];
    let h2_doubled = t1 + t2 + t3;
    [t1 / h2_doubled, t2 / h2_doubled, t3 / h2_doubled]
}

/// The simplex positions of every ensemble member at one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexSnapshot {
    pub t: f64,
    /// One normalized action triple per member, in ensemble order.
    pub points: Vec<[f64; 3]>,
}

/// Integrates the whole cloud and projects it onto the action simplex
/// at each requested time.
///
/// Members are processed in ensemble order, so the `points` of every
/// snapshot line up across times.
pub fn ensemble_simplex(
    system: &System,
    spec: &EnsembleSpec,
    times: &[f64],
    options: &IntegratorOptions,
) -> Result<Vec<SimplexSnapshot>, DynamicsError> {
    if system.dim() != 6 {
        return Err(DynamicsError::DimensionMismatch {
            got: system.dim(),
            expected: 6,
        });
    }
    let states = ensemble_states(spec)?;
    let mut snapshots: Vec<SimplexSnapshot> = times
        .iter()
        .map(|&t| SimplexSnapshot {
            t,
            points: Vec::with_capacity(spec.count),
        })
        .collect();
    for state in &states {
        let trajectory = dopri5(|_t, y, dy| system.fill_rhs(y, dy), 0.0, state, times, options)?;
        for (snapshot, sampled) in snapshots.iter_mut().zip(&trajectory.states) {
            snapshot.points.push(simplex_of(sampled));
        }
    }
    Ok(snapshots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::SystemSpec;

    #[test]
    fn halton_matches_the_radical_inverse() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(2, 2), 0.25);
        assert_eq!(halton(3, 2), 0.75);
        assert_eq!(halton(4, 2), 0.125);
        assert!((halton(1, 3) - 1.0 / 3.0).abs() < 1e-15);
        assert!((halton(5, 3) - 7.0 / 9.0).abs() < 1e-15);
        assert_eq!(halton(0, 2), 0.0);
    }

    #[test]
    fn members_sit_exactly_on_the_energy_shell() {
        let system = System::new(SystemSpec::Modal { d: [0.0; 10] }, 0.2).unwrap();
        for mode in 1..=3 {
            let spec = EnsembleSpec::standard(mode).unwrap();
            let states = ensemble_states(&spec).unwrap();
            assert_eq!(states.len(), 98);
            for state in &states {
                let h2 = system.quadratic_energy(state);
                assert!((h2 - 4.5).abs() < 1e-12, "mode {mode}: h2 = {h2}");
                assert!(state[mode - 1] > 0.0);
            }
        }
    }

    #[test]
    fn the_cloud_is_deterministic_in_the_seed() {
        let spec = EnsembleSpec::standard(2).unwrap();
        assert_eq!(
            ensemble_states(&spec).unwrap(),
            ensemble_states(&spec).unwrap()
        );
        let shifted = EnsembleSpec::new(2, 4.5, 98, spec.spread, 7).unwrap();
        assert_ne!(
            ensemble_states(&spec).unwrap(),
            ensemble_states(&shifted).unwrap()
        );
    }

    #[test]
    fn perturbations_stay_inside_the_requested_ball() {
        let spec = EnsembleSpec::standard(2).unwrap();
        for state in ensemble_states(&spec).unwrap() {
            let transverse =
                state[0] * state[0] + state[3] * state[3] + state[2] * state[2] + state[5] * state[5];
            assert!(transverse.sqrt() <= spec.spread + 1e-15);
        }
    }

    #[test]
    fn simplex_points_are_barycentric() {
        let s = simplex_of(&[0.3, -0.2, 0.5, 0.1, 0.7, -0.4]);
        assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(s.iter().all(|&c| c >= 0.0));
        assert_eq!(simplex_of(&[0.0, 1.5, 0.0, 0.0, 0.0, 0.0]), [0.0, 1.0, 0.0]);
    }

    #[test]
    fn snapshots_line_up_across_times() {
        let system = System::new(SystemSpec::Modal { d: [0.0; 10] }, 0.0).unwrap();
        let spec = EnsembleSpec::new(2, 4.5, 5, 0.15, 0).unwrap();
        let snapshots = ensemble_simplex(
            &system,
            &spec,
            &[0.0, 1.0],
            &IntegratorOptions::default(),
        )
        .unwrap();
        assert_eq!(snapshots.len(), 2);
        assert_eq!(snapshots[0].points.len(), 5);
        let initial = ensemble_states(&spec).unwrap();
        for (point, state) in snapshots[0].points.iter().zip(&initial) {
            assert_eq!(*point, simplex_of(state));
        }
        for (p0, p1) in snapshots[0].points.iter().zip(&snapshots[1].points) {
            let drift: f64 = p0
                .iter()
                .zip(p1)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(drift < 1e-9, "uncoupled actions are constant");
        }
    }

    #[test]
    fn infeasible_clouds_are_rejected() {
        assert!(matches!(
            EnsembleSpec::new(0, 4.5, 98, 0.15, 0),
            Err(DynamicsError::OutOfDomain {
                name: "center_mode",
                ..
            })
        ));
        assert!(matches!(
            EnsembleSpec::new(2, -1.0, 98, 0.15, 0),
            Err(DynamicsError::OutOfDomain { name: "energy", .. })
        ));
        assert!(matches!(
            EnsembleSpec::new(2, 4.5, 0, 0.15, 0),
            Err(DynamicsError::OutOfDomain { name: "count", .. })
        ));
        let wide = EnsembleSpec::new(2, 0.01, 98, 1.0, 0).unwrap();
        assert!(matches!(
            ensemble_states(&wide),
            Err(DynamicsError::OutOfDomain { name: "spread", .. })
        ));

        let chain = System::new(
            SystemSpec::FullChain {
                inverse_masses: crate::preset::A_CASE0.to_vec(),
                alpha: 1.0,
            },
            0.5,
        )
        .unwrap();
        let spec = EnsembleSpec::standard(2).unwrap();
        assert!(matches!(
            ensemble_simplex(&chain, &spec, &[0.0], &IntegratorOptions::default()),
            Err(DynamicsError::DimensionMismatch { .. })
        ));
    }
}
