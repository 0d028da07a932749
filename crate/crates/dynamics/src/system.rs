use eigenmode_transform::{transform_numeric, TransformPair};
use serde::{Deserialize, Serialize};

use crate::dopri5::{dopri5, sample_schedule, IntegratorOptions, Trajectory};
use crate::error::DynamicsError;

/// Frequencies (3, 2, 1) of the rescaled eigenmode systems.
pub const MODAL_FREQUENCIES: [f64; 3] = [3.0, 2.0, 1.0];

/// Frequencies (1, 2, 3) of the comparison Hamiltonian.
pub const COMPARISON_FREQUENCIES: [f64; 3] = [1.0, 2.0, 3.0];

/// Right-hand-side selector for the four integrable-versus-chaotic
/// test beds.  States are flat vectors `(positions..., velocities...)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SystemSpec {
    /// Periodic chain of `n` particles; `inverse_masses[j] = 1/m_j`
    /// multiplies the force on particle `j`, and `alpha` scales the
    /// cubic term of the bond potential.
    FullChain {
        inverse_masses: Vec<f64>,
        alpha: f64,
    },
    /// The three oscillating eigenmodes in rescaled time, frequencies
    /// (3, 2, 1), coupled through the complete cubic form `d1..d10`.
    Modal { d: [f64; 10] },
    /// Modal system truncated to the resonant couplings
    /// `d6 x1 x2 x3` and `d9 x2 x3^2`.
    IntermediateNf { d6: f64, d9: f64 },
    /// Oscillators with frequencies (1, 2, 3) and independently chosen
    /// cubic couplings `a2 x1^2 x2`, `a3 x1^2 x3`, `b x1 x2 x3`; a
    /// comparison system that does not come from a chain.
    ComparisonHhc { a2: f64, a3: f64, b: f64 },
}

/// A vector field instance: a [`SystemSpec`] together with the
/// perturbation strength `epsilon` multiplying every cubic term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct System {
    pub spec: SystemSpec,
    pub epsilon: f64,
}

impl System {
    /// Validates the parameters: `epsilon >= 0`, chain inverse masses
    /// positive with at least three particles, all couplings finite.
    pub fn new(spec: SystemSpec, epsilon: f64) -> Result<Self, DynamicsError> {
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(DynamicsError::OutOfDomain {
                name: "epsilon",
                value: epsilon,
                domain: "nonnegative reals",
            });
        }
        let finite = |name: &'static str, value: f64| {
            if value.is_finite() {
                Ok(())
            } else {
                Err(DynamicsError::OutOfDomain {
                    name,
                    value,
                    domain: "finite reals",
                })
            }
        };
        match &spec {
            SystemSpec::FullChain {
                inverse_masses,
                alpha,
            } => {
                if inverse_masses.len() < 3 {
                    return Err(DynamicsError::OutOfDomain {
                        name: "chain length",
                        value: inverse_masses.len() as f64,
                        domain: "at least three particles",
                    });
                }
                for &a in inverse_masses {
                    if !(a.is_finite() && a > 0.0) {
                        return Err(DynamicsError::OutOfDomain {
                            name: "inverse mass",
                            value: a,
                            domain: "positive reals",
                        });
                    }
                }
                finite("alpha", *alpha)?;
            }
            SystemSpec::Modal { d } => {
                for &c in d {
                    finite("cubic coefficient", c)?;
                }
            }
            SystemSpec::IntermediateNf { d6, d9 } => {
                finite("d6", *d6)?;
                finite("d9", *d9)?;
            }
            SystemSpec::ComparisonHhc { a2, a3, b } => {
                finite("a2", *a2)?;
                finite("a3", *a3)?;
                finite("b", *b)?;
            }
        }
        Ok(Self { spec, epsilon })
    }

    /// Phase-space dimension of the states this system acts on.
    pub fn dim(&self) -> usize {
        match &self.spec {
            SystemSpec::FullChain { inverse_masses, .. } => 2 * inverse_masses.len(),
            _ => 6,
        }
    }

    /// Time derivative of `state`, checked for the right length.
    pub fn rhs(&self, state: &[f64]) -> Result<Vec<f64>, DynamicsError> {
        if state.len() != self.dim() {
            return Err(DynamicsError::DimensionMismatch {
                got: state.len(),
                expected: self.dim(),
            });
        }
        let mut out = vec![0.0; state.len()];
        self.fill_rhs(state, &mut out);
        Ok(out)
    }

    /// Writes the time derivative of `state` into `out`.
    ///
    /// # Panics
    /// When `state` or `out` do not match [`System::dim`].
    pub fn fill_rhs(&self, state: &[f64], out: &mut [f64]) {
        assert_eq!(state.len(), self.dim());
        assert_eq!(out.len(), self.dim());
        let eps = self.epsilon;
        match &self.spec {
            SystemSpec::FullChain {
                inverse_masses,
                alpha,
            } => {
                let n = inverse_masses.len();
                let (q, v) = state.split_at(n);
                out[..n].copy_from_slice(v);
                for i in 0..n {
                    let ip = (i + 1) % n;
                    let im = (i + n - 1) % n;
                    let lin = -2.0 * q[i] + q[ip] + q[im];
                    let non = (q[i] - q[im]).powi(2) - (q[ip] - q[i]).powi(2);
                    out[n + i] = (lin - eps * alpha * non) * inverse_masses[i];
                }
            }
            SystemSpec::Modal { d } => {
                let [x1, x2, x3, v1, v2, v3] = six(state);
                let [d1, d2, d3, d4, d5, d6, d7, d8, d9, d10] = *d;
                let g1 = 3.0 * d1 * x1 * x1
                    + 2.0 * d2 * x1 * x2
                    + 2.0 * d3 * x1 * x3
                    + d4 * x2 * x2
                    + d5 * x3 * x3
                    + d6 * x2 * x3;
                let g2 = d2 * x1 * x1
                    + 2.0 * d4 * x2 * x1
                    + d6 * x1 * x3
                    + 3.0 * d7 * x2 * x2
                    + d9 * x3 * x3
                    + 2.0 * d10 * x2 * x3;
                let g3 = d3 * x1 * x1
                    + 2.0 * d5 * x3 * x1
                    + d6 * x1 * x2
                    + 3.0 * d8 * x3 * x3
                    + 2.0 * d9 * x2 * x3
                    + d10 * x2 * x2;
                out.copy_from_slice(&[
                    v1,
                    v2,
                    v3,
                    -9.0 * x1 - eps * 14.0 * g1,
                    -4.0 * x2 - eps * 14.0 * g2,
                    -x3 - eps * 14.0 * g3,
                ]);
            }
            SystemSpec::IntermediateNf { d6, d9 } => {
                let [x1, x2, x3, v1, v2, v3] = six(state);
                out.copy_from_slice(&[
                    v1,
                    v2,
                    v3,
                    -9.0 * x1 - eps * 14.0 * d6 * x2 * x3,
                    -4.0 * x2 - eps * 14.0 * (d6 * x1 * x3 + d9 * x3 * x3),
                    -x3 - eps * 14.0 * (d6 * x1 * x2 + 2.0 * d9 * x2 * x3),
                ]);
            }
            SystemSpec::ComparisonHhc { a2, a3, b } => {
                let [x1, x2, x3, v1, v2, v3] = six(state);
                out.copy_from_slice(&[
                    v1,
                    v2,
                    v3,
                    -x1 + 2.0 * eps * x1 * (a2 * x2 + a3 * x3) + eps * b * x2 * x3,
                    -4.0 * x2 + 2.0 * eps * (a2 * x1 * x1 + b * x1 * x3),
                    -9.0 * x3 + 3.0 * eps * (a3 * x1 * x1 + b * x1 * x2),
                ]);
            }
        }
    }

    /// Quadratic part of the energy (the harmonic Hamiltonian).
    pub fn quadratic_energy(&self, state: &[f64]) -> f64 {
        assert_eq!(state.len(), self.dim());
        match &self.spec {
            SystemSpec::FullChain { inverse_masses, .. } => {
                let n = inverse_masses.len();
                let (q, v) = state.split_at(n);
                let kinetic: f64 = (0..n).map(|i| v[i] * v[i] / (2.0 * inverse_masses[i])).sum();
                let potential: f64 = (0..n)
                    .map(|i| {
                        let z = q[(i + 1) % n] - q[i];
                        0.5 * z * z
                    })
                    .sum();
                kinetic + potential
            }
            SystemSpec::Modal { .. } | SystemSpec::IntermediateNf { .. } => {
                let [x1, x2, x3, v1, v2, v3] = six(state);
                0.5 * (v1 * v1
                    + v2 * v2
                    + v3 * v3
                    + 9.0 * x1 * x1
                    + 4.0 * x2 * x2
                    + x3 * x3)
            }
            SystemSpec::ComparisonHhc { .. } => {
                let [x1, x2, x3, v1, v2, v3] = six(state);
                0.5 * (v1 * v1 + x1 * x1)
                    + 0.25 * v2 * v2
                    + x2 * x2
                    + v3 * v3 / 6.0
                    + 1.5 * x3 * x3
            }
        }
    }

    /// Full conserved energy, quadratic part plus the cubic terms.
    pub fn energy(&self, state: &[f64]) -> f64 {
        let eps = self.epsilon;
        let h2 = self.quadratic_energy(state);
        match &self.spec {
            SystemSpec::FullChain {
                inverse_masses,
                alpha,
            } => {
                let n = inverse_masses.len();
                let q = &state[..n];
                let cubic: f64 = (0..n)
                    .map(|i| {
                        let z = q[(i + 1) % n] - q[i];
                        z * z * z
                    })
                    .sum();
                h2 + eps * alpha / 3.0 * cubic
            }
            SystemSpec::Modal { d } => {
                let [x1, x2, x3, ..] = six(state);
                let [d1, d2, d3, d4, d5, d6, d7, d8, d9, d10] = *d;
                let h3 = d1 * x1.powi(3)
                    + d2 * x1 * x1 * x2
                    + d3 * x1 * x1 * x3
                    + d4 * x2 * x2 * x1
                    + d5 * x3 * x3 * x1
                    + d6 * x1 * x2 * x3
                    + d7 * x2.powi(3)
                    + d8 * x3.powi(3)
                    + d9 * x3 * x3 * x2
                    + d10 * x2 * x2 * x3;
                h2 + 14.0 * eps * h3
            }
            SystemSpec::IntermediateNf { d6, d9 } => {
                let [x1, x2, x3, ..] = six(state);
                h2 + 14.0 * eps * (d6 * x1 * x2 * x3 + d9 * x2 * x3 * x3)
            }
            SystemSpec::ComparisonHhc { a2, a3, b } => {
                let [x1, x2, x3, ..] = six(state);
                h2 - eps * x1 * x1 * (a2 * x2 + a3 * x3) - eps * b * x1 * x2 * x3
            }
        }
    }

    /// Total momentum `sum_j v_j / a_j` of a chain state; the other
    /// systems have no translation symmetry.
    pub fn momentum(&self, state: &[f64]) -> Option<f64> {
        match &self.spec {
            SystemSpec::FullChain { inverse_masses, .. } => {
                assert_eq!(state.len(), self.dim());
                let n = inverse_masses.len();
                Some((0..n).map(|i| state[n + i] / inverse_masses[i]).sum())
            }
            _ => None,
        }
    }

    /// Oscillator actions `tau_i = (omega_i/2) (x_i^2 + (v_i/omega_i)^2)`
    /// for the three-oscillator systems; `None` for the chain, whose
    /// mode actions need an eigenmode transform ([`chain_actions`]).
    pub fn actions(&self, state: &[f64]) -> Option<[f64; 3]> {
        let omega = match &self.spec {
            SystemSpec::FullChain { .. } => return None,
            SystemSpec::Modal { .. } | SystemSpec::IntermediateNf { .. } => MODAL_FREQUENCIES,
            SystemSpec::ComparisonHhc { .. } => COMPARISON_FREQUENCIES,
        };
        assert_eq!(state.len(), 6);
        Some(std::array::from_fn(|i| {
            let x = state[i];
            let v = state[i + 3];
            0.5 * omega[i] * (x * x + (v / omega[i]).powi(2))
        }))
    }
}

fn six(state: &[f64]) -> [f64; 6] {
    state.try_into().expect("three-oscillator state")
}

/// Actions of the three oscillating eigenmodes of a four-particle
/// chain state: with `x = K^T q`, `y = L^T p`, momenta `p_j = v_j/a_j`,
/// and eigenvalue `lambda_i`, the action of mode `i` is
/// `tau_i = sqrt(lambda_i)/2 * (x_i^2 + y_i^2/lambda_i)`.
pub fn chain_actions(q: &[f64; 4], v: &[f64; 4], pair: &TransformPair) -> [f64; 3] {
    let p: [f64; 4] = std::array::from_fn(|j| v[j] / pair.a[j]);
    let x = pair.x_from_q(q);
    let y = pair.y_from_p(&p);
    std::array::from_fn(|i| {
        let lambda = pair.eigenvalues[i];
        0.5 * lambda.sqrt() * (x[i] * x[i] + y[i] * y[i] / lambda)
    })
}

/// One sampled instant of a run, with the conserved-quantity
/// diagnostics evaluated on the sampled state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub t: f64,
    pub state: Vec<f64>,
    /// Full energy of the state.
    pub h: f64,
    /// Quadratic energy of the state.
    pub h2: f64,
    /// Chain momentum; absent for the three-oscillator systems.
    pub momentum: Option<f64>,
    /// Mode actions `(tau1, tau2, tau3)`; absent for chains whose
    /// eigenmode transform is unavailable.
    pub actions: Option<[f64; 3]>,
}

/// Evaluates the diagnostics on every sample of a raw trajectory.
///
/// Four-particle chains get their mode actions through the numeric
/// eigenmode transform; when that fails (colliding eigenvalues) or the
/// chain has a different length, the actions are left out.
pub fn trajectory_records(system: &System, trajectory: &Trajectory) -> Vec<TrajectoryRecord> {
    let chain_pair = match &system.spec {
        SystemSpec::FullChain { inverse_masses, .. } if inverse_masses.len() == 4 => {
            let a: [f64; 4] = inverse_masses[..].try_into().expect("length checked");
            transform_numeric(&a).ok()
        }
        _ => None,
    };
    trajectory
        .times
        .iter()
        .zip(&trajectory.states)
        .map(|(&t, state)| {
            let actions = match (&system.spec, &chain_pair) {
                (SystemSpec::FullChain { .. }, Some(pair)) => {
                    let q: [f64; 4] = state[..4].try_into().expect("four-chain state");
                    let v: [f64; 4] = state[4..].try_into().expect("four-chain state");
                    Some(chain_actions(&q, &v, pair))
                }
                (SystemSpec::FullChain { .. }, None) => None,
                _ => system.actions(state),
            };
            TrajectoryRecord {
                t,
                state: state.clone(),
                h: system.energy(state),
                h2: system.quadratic_energy(state),
                momentum: system.momentum(state),
                actions,
            }
        })
        .collect()
}

/// Integrates the system from `state0` over `[0, t_final]` and returns
/// diagnostic records at `t = 0, sample_dt, ..., t_final`.
///
/// On step-size underflow the returned error carries the raw partial
/// trajectory; [`trajectory_records`] converts it for reporting.
pub fn integrate(
    system: &System,
    state0: &[f64],
    t_final: f64,
    sample_dt: f64,
    options: &IntegratorOptions,
) -> Result<Vec<TrajectoryRecord>, DynamicsError> {
    if state0.len() != system.dim() {
        return Err(DynamicsError::DimensionMismatch {
            got: state0.len(),
            expected: system.dim(),
        });
    }
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(DynamicsError::OutOfDomain {
            name: "t_final",
            value: t_final,
            domain: "positive reals",
        });
    }
    let samples = sample_schedule(0.0, t_final, sample_dt)?;
    let trajectory = dopri5(
        |_t, y, dy| system.fill_rhs(y, dy),
        0.0,
        state0,
        &samples,
        options,
    )?;
    Ok(trajectory_records(system, &trajectory))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_case0() -> System {
        System::new(
            SystemSpec::FullChain {
                inverse_masses: crate::preset::A_CASE0.to_vec(),
                alpha: 1.0,
            },
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn zero_coupling_decouples_the_modal_oscillators() {
        let system = System::new(SystemSpec::IntermediateNf { d6: -0.4, d9: 0.2 }, 0.0).unwrap();
        let state = [0.3, -0.5, 0.8, 0.1, 0.2, -0.7];
        let dy = system.rhs(&state).unwrap();
        assert_eq!(dy, vec![0.1, 0.2, -0.7, -9.0 * 0.3, -4.0 * -0.5, -0.8]);
    }

    #[test]
    fn the_third_mode_plane_is_exactly_invariant_without_d9() {
        let system = System::new(
            SystemSpec::IntermediateNf {
                d6: -0.0229,
                d9: 0.0,
            },
            0.5,
        )
        .unwrap();
        let state = [0.0, 0.0, 0.9, 0.0, 0.0, -0.4];
        let dy = system.rhs(&state).unwrap();
        assert_eq!(dy, vec![0.0, 0.0, -0.4, 0.0, 0.0, -0.9]);

        let with_d9 = System::new(
            SystemSpec::IntermediateNf {
                d6: -0.0229,
                d9: -0.01,
            },
            0.5,
        )
        .unwrap();
        let dy = with_d9.rhs(&state).unwrap();
        assert!(dy[4] != 0.0, "d9 pushes the flow off the plane");
    }

    #[test]
    fn modal_quadratic_energy_of_the_first_mode_vertex() {
        let system = System::new(SystemSpec::Modal { d: [0.0; 10] }, 0.2).unwrap();
        assert_eq!(
            system.quadratic_energy(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            4.5
        );
    }

    #[test]
    fn rigid_translation_of_the_chain_carries_no_potential_energy() {
        let system = chain_case0();
        let state = [0.7, 0.7, 0.7, 0.7, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(system.quadratic_energy(&state), 0.0);
        assert_eq!(system.energy(&state), 0.0);
    }

    #[test]
    fn chain_momentum_sums_velocity_over_inverse_mass() {
        let system = chain_case0();
        let state = [0.0, 0.0, 0.0, 0.0, 0.1, -0.2, 0.3, 0.05];
        let a = crate::preset::A_CASE0;
        let expected = 0.1 / a[0] - 0.2 / a[1] + 0.3 / a[2] + 0.05 / a[3];
        assert_eq!(system.momentum(&state), Some(expected));

        let modal = System::new(SystemSpec::Modal { d: [0.0; 10] }, 0.0).unwrap();
        assert_eq!(modal.momentum(&[0.0; 6]), None);
    }

    #[test]
    fn pure_mode_states_have_one_nonzero_action() {
        let modal = System::new(SystemSpec::Modal { d: [0.0; 10] }, 0.0).unwrap();
        let tau = modal.actions(&[0.0, 0.7, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(tau[0], 0.0);
        assert!((tau[1] - 0.49).abs() < 1e-15);
        assert_eq!(tau[2], 0.0);

        let tau = modal.actions(&[0.0, 0.0, 0.0, 0.6, 0.0, 0.0]).unwrap();
        assert!((tau[0] - 0.5 * 3.0 * (0.6f64 / 3.0).powi(2)).abs() < 1e-15);

        let hhc = System::new(
            SystemSpec::ComparisonHhc {
                a2: 3.0,
                a3: 1.0,
                b: 1.0,
            },
            0.5,
        )
        .unwrap();
        let tau = hhc.actions(&[0.0, 0.0, 0.5, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(tau, [0.0, 0.0, 1.5 * 0.25]);
    }

    #[test]
    fn chain_actions_split_the_quadratic_energy_between_the_modes() {
        let system = chain_case0();
        let a = crate::preset::A_CASE0;
        let pair = transform_numeric(&a).unwrap();
        let q = [0.04, -0.03, 0.02, 0.01];
        let v = [0.02, 0.01, -0.015, 0.005];
        let state: Vec<f64> = q.iter().chain(v.iter()).copied().collect();

        let tau = chain_actions(&q, &v, &pair);
        assert!(tau.iter().all(|&t| t >= 0.0));

        let p: [f64; 4] = std::array::from_fn(|j| v[j] / a[j]);
        let y = pair.y_from_p(&p);
        let modal_energy: f64 = (0..3)
            .map(|i| pair.eigenvalues[i].sqrt() * tau[i])
            .sum::<f64>()
            + 0.5 * y[3] * y[3];
        assert!((modal_energy - system.quadratic_energy(&state)).abs() < 1e-14);
    }

    #[test]
    fn chain_energy_is_constant_along_a_short_arc() {
        let system = chain_case0();
        let state0 = [0.08, -0.05, 0.03, 0.01, 0.05, -0.02, 0.04, 0.01];
        let records = integrate(
            &system,
            &state0,
            10.0,
            0.5,
            &IntegratorOptions::default(),
        )
        .unwrap();
        let h0 = records[0].h;
        for record in &records {
            let drift = (record.h / h0 - 1.0).abs();
            assert!(drift < 5e-9, "energy drift {drift:e} at t = {}", record.t);
        }
    }

    #[test]
    fn records_carry_the_diagnostics_of_the_sampled_states() {
        let system = System::new(
            SystemSpec::IntermediateNf {
                d6: -0.0229,
                d9: 0.0,
            },
            0.5,
        )
        .unwrap();
        let records = integrate(
            &system,
            &[1.0, 0.1, 0.1, 0.0, 0.0, 0.0],
            5.0,
            0.5,
            &IntegratorOptions::default(),
        )
        .unwrap();
        assert_eq!(records.len(), 11);
        assert_eq!(records[0].t, 0.0);
        assert_eq!(records[10].t, 5.0);
        for record in &records {
            assert_eq!(record.h, system.energy(&record.state));
            assert_eq!(record.h2, system.quadratic_energy(&record.state));
            assert_eq!(record.momentum, None);
            let tau = record.actions.unwrap();
            assert!(tau.iter().all(|&t| t >= 0.0));
        }

        let chain = chain_case0();
        let records = integrate(
            &chain,
            &[0.01, 0.0, -0.01, 0.0, 0.0, 0.0, 0.0, 0.0],
            1.0,
            0.5,
            &IntegratorOptions::default(),
        )
        .unwrap();
        assert!(records[0].momentum.is_some());
        assert!(records[0].actions.is_some());
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(matches!(
            System::new(SystemSpec::Modal { d: [0.0; 10] }, -0.1),
            Err(DynamicsError::OutOfDomain { name: "epsilon", .. })
        ));
        assert!(matches!(
            System::new(
                SystemSpec::FullChain {
                    inverse_masses: vec![1.0, 2.0],
                    alpha: 1.0
                },
                0.0
            ),
            Err(DynamicsError::OutOfDomain { .. })
        ));
        assert!(matches!(
            System::new(
                SystemSpec::FullChain {
                    inverse_masses: vec![1.0, -2.0, 1.0, 1.0],
                    alpha: 1.0
                },
                0.0
            ),
            Err(DynamicsError::OutOfDomain { .. })
        ));
        assert!(matches!(
            System::new(
                SystemSpec::IntermediateNf {
                    d6: f64::NAN,
                    d9: 0.0
                },
                0.0
            ),
            Err(DynamicsError::OutOfDomain { .. })
        ));

        let system = System::new(SystemSpec::Modal { d: [0.0; 10] }, 0.0).unwrap();
        assert!(matches!(
            system.rhs(&[0.0; 5]),
            Err(DynamicsError::DimensionMismatch {
                got: 5,
                expected: 6
            })
        ));
        assert!(matches!(
            integrate(&system, &[0.0; 6], -1.0, 0.1, &IntegratorOptions::default()),
            Err(DynamicsError::OutOfDomain { name: "t_final", .. })
        ));
    }
}
