use eigenmode_transform::cubic_from_table;

use crate::error::DynamicsError;
use crate::system::{System, SystemSpec};

/// Inverse masses of the `u = 0` point of the 1:2:3 resonance curve,
/// normalized to `2 sum a_j = 1`; the chain whose normal form has
/// `d9 = 0`.
pub const A_CASE0: [f64; 4] = [
    0.035714285714285712,
    0.12680393775774362,
    0.035714285714285712,
    0.30176749081368492,
];

/// Curve parameters of the three published mass cases.
pub const U_CASE0: f64 = 0.0;
pub const U_CASE1: f64 = 0.534105;
pub const U_CASE2: f64 = 0.826713;

/// A ready-to-run configuration: system, initial state, and the time
/// window the published series covers.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub system: System,
    pub initial_state: Vec<f64>,
    pub time_span: f64,
    pub sample_dt: f64,
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: [&str; 9] = [
    "case0",
    "case1",
    "case2",
    "case0_modal",
    "case1_modal",
    "case2_modal",
    "fullchain",
    "hhc_left",
    "hhc_right",
];

/// Looks up a published configuration by name.
///
/// The `case*` presets run the resonant truncation with the published
/// six-figure couplings (case 0 keeps its closed form `-3 sqrt(14)/490`)
/// at `epsilon = 0.5` from `x = (1, 0.1, 0.1)`, the window of the
/// energy-series figures.  The `case*_modal` presets carry the complete
/// cubic at `epsilon = 0.2` from the second mode vertex of the
/// `H2 = 4.5` shell, the window of the simplex figures.  `fullchain`
/// is a zero-momentum chain state for the conservation suite, and the
/// `hhc_*` presets are the two published comparison-Hamiltonian runs.
pub fn preset(name: &str) -> Result<Preset, DynamicsError> {
    let energy_series_state = vec![1.0, 0.1, 0.1, 0.0, 0.0, 0.0];
    let mode2_vertex = vec![0.0, 1.5, 0.0, 0.0, 0.0, 0.0];
    let (system, initial_state, time_span, sample_dt) = match name {
        "case0" => (
            System::new(
                SystemSpec::IntermediateNf {
                    d6: -3.0 * f64::sqrt(14.0) / 490.0,
                    d9: 0.0,
                },
                0.5,
            )?,
            energy_series_state,
            1000.0,
            0.25,
        ),
        "case1" => (
            System::new(
                SystemSpec::IntermediateNf {
                    d6: -0.0306229,
                    d9: -0.0089438,
                },
                0.5,
            )?,
            energy_series_state,
            1000.0,
            0.25,
        ),
        "case2" => (
            System::new(
                SystemSpec::IntermediateNf {
                    d6: -0.0337877,
                    d9: -0.0105601,
                },
                0.5,
            )?,
            energy_series_state,
            1000.0,
            0.25,
        ),
        "case0_modal" => (
            System::new(
                SystemSpec::Modal {
                    d: cubic_from_table(U_CASE0, 1.0)?.d,
                },
                0.2,
            )?,
            mode2_vertex,
            450.0,
            0.25,
        ),
        "case1_modal" => (
            System::new(
                SystemSpec::Modal {
                    d: cubic_from_table(U_CASE1, 1.0)?.d,
                },
                0.2,
            )?,
            mode2_vertex,
            450.0,
            0.25,
        ),
        "case2_modal" => (
            System::new(
                SystemSpec::Modal {
                    d: cubic_from_table(U_CASE2, 1.0)?.d,
                },
                0.2,
            )?,
            mode2_vertex,
            450.0,
            0.25,
        ),
        "fullchain" => {
            let a = A_CASE0;
            let v = [0.05, -0.02, 0.04];
            let v3 = -a[3] * (v[0] / a[0] + v[1] / a[1] + v[2] / a[2]);
            (
                System::new(
                    SystemSpec::FullChain {
                        inverse_masses: a.to_vec(),
                        alpha: 1.0,
                    },
                    0.5,
                )?,
                vec![0.08, -0.05, 0.03, 0.01, v[0], v[1], v[2], v3],
                1000.0,
                0.5,
            )
        }
        "hhc_left" => (
            hhc_system()?,
            vec![0.1, 1.0, 0.5, 0.0, 0.0, 0.0],
            500.0,
            0.25,
        ),
        "hhc_right" => (
            hhc_system()?,
            vec![2.0, 1.0, -0.05, 0.0, 0.0, 0.0],
            500.0,
            0.25,
        ),
        _ => {
            return Err(DynamicsError::UnknownPreset {
                name: name.to_string(),
            })
        }
    };
    let name = PRESET_NAMES
        .iter()
        .find(|&&n| n == name)
        .expect("matched above");
    Ok(Preset {
        name,
        system,
        initial_state,
        time_span,
        sample_dt,
    })
}

fn hhc_system() -> Result<System, DynamicsError> {
    System::new(
        SystemSpec::ComparisonHhc {
            a2: 3.0,
            a3: 1.0,
            b: 1.0,
        },
        0.5,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use eigenmode_transform::transform_closed_form;

    #[test]
    fn every_registered_name_loads_and_matches_its_system_dimension() {
        for name in PRESET_NAMES {
            let p = preset(name).unwrap();
            assert_eq!(p.name, name);
            assert_eq!(p.initial_state.len(), p.system.dim());
            assert!(p.time_span > 0.0);
            assert!(p.sample_dt > 0.0);
        }
        assert!(matches!(
            preset("case3"),
            Err(DynamicsError::UnknownPreset { .. })
        ));
    }

    #[test]
    fn the_case_presets_carry_the_published_couplings() {
        let p = preset("case1").unwrap();
        match p.system.spec {
            SystemSpec::IntermediateNf { d6, d9 } => {
                assert_eq!(d6, -0.0306229);
                assert_eq!(d9, -0.0089438);
            }
            _ => panic!("case1 is a resonant truncation"),
        }
        assert_eq!(p.system.epsilon, 0.5);
        assert_eq!(p.initial_state, vec![1.0, 0.1, 0.1, 0.0, 0.0, 0.0]);

        let p = preset("case0").unwrap();
        match p.system.spec {
            SystemSpec::IntermediateNf { d6, d9 } => {
                let table = cubic_from_table(0.0, 1.0).unwrap();
                assert!((d6 - table.d6()).abs() < 1e-15);
                assert_eq!(d9, 0.0);
            }
            _ => panic!("case0 is a resonant truncation"),
        }
    }

    #[test]
    fn the_chain_preset_starts_with_zero_momentum() {
        let p = preset("fullchain").unwrap();
        let momentum = p.system.momentum(&p.initial_state).unwrap();
        assert!(momentum.abs() < 1e-15, "momentum {momentum:e}");
    }

    #[test]
    fn the_case0_masses_sit_on_the_resonance_curve() {
        let pair = transform_closed_form(0.0).unwrap();
        for (ours, exact) in A_CASE0.iter().zip(pair.a) {
            assert!((ours - exact).abs() < 1e-15);
        }
    }

    #[test]
    fn the_comparison_presets_use_the_published_states() {
        let left = preset("hhc_left").unwrap();
        assert_eq!(left.initial_state[..3], [0.1, 1.0, 0.5]);
        let right = preset("hhc_right").unwrap();
        assert_eq!(right.initial_state[..3], [2.0, 1.0, -0.05]);
        match right.system.spec {
            SystemSpec::ComparisonHhc { a2, a3, b } => {
                assert_eq!((a2, a3, b), (3.0, 1.0, 1.0))
            }
            _ => panic!("hhc presets use the comparison Hamiltonian"),
        }
        assert_eq!(right.system.epsilon, 0.5);
    }
}
