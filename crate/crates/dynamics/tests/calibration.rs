//! Long-horizon conservation checks and ensemble statistics, frozen
//! against tools/oracles/calibrate_dynamics.py.

use dynamics::{
    dopri5, ensemble_simplex, integrate, preset, DynamicsError, EnsembleSpec, IntegratorOptions,
    System, SystemSpec, U_CASE0, U_CASE2,
};
use eigenmode_transform::cubic_from_table;

fn modal_system(u: f64, epsilon: f64) -> System {
    let d = cubic_from_table(u, 1.0).unwrap().d;
    System::new(SystemSpec::Modal { d }, epsilon).unwrap()
}

fn h2_range(records: &[dynamics::TrajectoryRecord]) -> (f64, f64) {
    records.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
        (lo.min(r.h2), hi.max(r.h2))
    })
}

fn max_energy_drift(records: &[dynamics::TrajectoryRecord]) -> f64 {
    let h0 = records[0].h;
    records
        .iter()
        .map(|r| (r.h / h0 - 1.0).abs())
        .fold(0.0, f64::max)
}

#[test]
fn quadratic_energy_stays_in_the_published_bands() {
    // Band edges and the t = 0 value come from
    // tools/oracles/calibrate_dynamics.py.
    let case0 = preset("case0").unwrap();
    let case1 = preset("case1").unwrap();
    let vertex_ic = vec![0.1, 1.5, 0.1, 0.0, 0.0, 0.0];
    let rows: [(&System, &[f64], (f64, f64)); 4] = [
        (&case0.system, &case0.initial_state, (4.25, 4.75)),
        (&case1.system, &case1.initial_state, (4.25, 4.75)),
        (&case0.system, &vertex_ic, (4.4, 4.65)),
        (&case1.system, &vertex_ic, (4.3, 4.8)),
    ];
    for (row, (system, ic, band)) in rows.into_iter().enumerate() {
        let records = integrate(system, ic, 1000.0, 0.25, &IntegratorOptions::default()).unwrap();
        assert_eq!(records.len(), 4001);
        if row == 0 {
            assert!((records[0].h2 - 4.525).abs() < 1e-12);
        }
        let (lo, hi) = h2_range(&records);
        assert!(
            band.0 <= lo && hi <= band.1,
            "row {row}: H2 range [{lo}, {hi}] escapes the band {band:?}"
        );
        // A fifth-order pair at tolerances 1e-10 accumulates about 2e-7
        // relative H drift over T = 1000 at these amplitudes; scipy's
        // RK45 measures 2.5e-7 on the identical run.
        let drift = max_energy_drift(&records);
        assert!(drift < 5e-7, "row {row}: energy drift {drift:e}");
    }
}

#[test]
fn the_chain_preset_conserves_its_invariants_over_the_long_run() {
    let chain = preset("fullchain").unwrap();
    let records = integrate(
        &chain.system,
        &chain.initial_state,
        chain.time_span,
        chain.sample_dt,
        &IntegratorOptions::default(),
    )
    .unwrap();
    assert_eq!(records.len(), 2001);
    let drift = max_energy_drift(&records);
    assert!(drift < 1e-7, "energy drift {drift:e}");
    let momentum = records
        .iter()
        .map(|r| r.momentum.unwrap().abs())
        .fold(0.0, f64::max);
    assert!(momentum < 1e-10, "momentum {momentum:e}");
    for record in &records {
        let actions = record.actions.unwrap();
        assert!(actions.iter().all(|&tau| tau >= 0.0));
    }
}

#[test]
fn the_chain_flow_retraces_itself_under_time_reversal() {
    let chain = preset("fullchain").unwrap();
    let options = IntegratorOptions::default();
    let there = dopri5(
        |_t, y, dy| chain.system.fill_rhs(y, dy),
        0.0,
        &chain.initial_state,
        &[100.0],
        &options,
    )
    .unwrap();
    let turnaround = there.states.last().unwrap().clone();
    let back = dopri5(
        |_t, y, dy| chain.system.fill_rhs(y, dy),
        100.0,
        &turnaround,
        &[0.0],
        &options,
    )
    .unwrap();
    let gap = back
        .states
        .last()
        .unwrap()
        .iter()
        .zip(&chain.initial_state)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(gap < 1e-6, "there-and-back gap {gap:e}");
}

#[test]
fn the_comparison_presets_escape_at_full_coupling() {
    for name in ["hhc_left", "hhc_right"] {
        let p = preset(name).unwrap();
        let result = integrate(
            &p.system,
            &p.initial_state,
            p.time_span,
            p.sample_dt,
            &IntegratorOptions::default(),
        );
        match result {
            Err(DynamicsError::StepUnderflow {
                t,
                recorded,
                partial,
                ..
            }) => {
                assert!(recorded >= 1, "{name}: no samples before the blow-up");
                assert!(t > 0.0 && t < p.time_span, "{name}: stops at t = {t}");
                assert_eq!(partial.states.len(), recorded);
            }
            other => panic!("{name}: expected a step underflow, got {other:?}"),
        }
    }
}

#[test]
fn the_comparison_system_is_bounded_at_small_coupling() {
    // The window and drift bound come from
    // tools/oracles/calibrate_dynamics.py.
    let p = preset("hhc_left").unwrap();
    let spec = p.system.spec.clone();
    let system = System::new(spec, 0.05).unwrap();
    let records = integrate(
        &system,
        &p.initial_state,
        500.0,
        0.25,
        &IntegratorOptions::default(),
    )
    .unwrap();
    let (lo, hi) = h2_range(&records);
    assert!(lo >= 1.27 && hi <= 1.49, "H2 range [{lo}, {hi}]");
    let drift = max_energy_drift(&records);
    assert!(drift < 1e-7, "energy drift {drift:e}");
}

#[test]
fn truncating_to_the_resonant_couplings_costs_a_linear_energy_gap() {
    // Gap sizes frozen from tools/oracles/calibrate_dynamics.py.
    let ic = [0.5, 0.5, 0.5, 0.0, 0.0, 0.0];
    let mut gaps = [0.0; 2];
    for (slot, eps) in [0.1, 0.05].into_iter().enumerate() {
        let modal = modal_system(U_CASE0, eps);
        let d6 = cubic_from_table(U_CASE0, 1.0).unwrap().d6();
        let inter = System::new(SystemSpec::IntermediateNf { d6, d9: 0.0 }, eps).unwrap();
        let horizon = 1.0 / eps;
        let dt = horizon / 1199.0;
        let full = integrate(&modal, &ic, horizon, dt, &IntegratorOptions::default()).unwrap();
        let truncated = integrate(&inter, &ic, horizon, dt, &IntegratorOptions::default()).unwrap();
        gaps[slot] = full
            .iter()
            .zip(&truncated)
            .map(|(a, b)| (a.h2 - b.h2).abs())
            .fold(0.0, f64::max);
        assert!(
            gaps[slot] <= 0.25 * eps,
            "eps = {eps}: H2 gap {} above the linear bound",
            gaps[slot]
        );
    }
    assert!((gaps[0] - 0.015952).abs() < 1e-4, "gap at 0.1: {}", gaps[0]);
    assert!((gaps[1] - 0.008078).abs() < 1e-4, "gap at 0.05: {}", gaps[1]);
    let ratio = gaps[1] / gaps[0];
    assert!(
        (0.3..=0.7).contains(&ratio),
        "halving the coupling scales the gap by {ratio}"
    );
}

fn vertex_distance(point: &[f64; 3], vertex: &[f64; 3]) -> f64 {
    point
        .iter()
        .zip(vertex)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

fn diameter(points: &[[f64; 3]]) -> f64 {
    let mut widest = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            widest = widest.max(vertex_distance(p, q));
        }
    }
    widest
}

#[test]
fn the_stable_vertex_holds_its_ensemble_together() {
    // Containment radius frozen from tools/oracles/calibrate_dynamics.py.
    let system = modal_system(U_CASE0, 0.2);
    let spec = EnsembleSpec::new(2, 4.5, 98, 0.15, 0).unwrap();
    let snapshots = ensemble_simplex(
        &system,
        &spec,
        &[0.0, 225.0, 450.0],
        &IntegratorOptions::default(),
    )
    .unwrap();
    let vertex = [0.0, 1.0, 0.0];
    let worst = snapshots
        .iter()
        .flat_map(|snap| snap.points.iter())
        .map(|p| vertex_distance(p, &vertex))
        .fold(0.0, f64::max);
    assert!(worst < 0.1, "max vertex distance {worst}");
    assert!((worst - 0.0317).abs() < 0.005, "max vertex distance {worst}");
}

#[test]
fn the_complex_unstable_vertex_disperses_its_ensemble() {
    let system = modal_system(U_CASE2, 0.2);
    let spec = EnsembleSpec::new(2, 4.5, 98, 0.15, 0).unwrap();
    let snapshots = ensemble_simplex(
        &system,
        &spec,
        &[0.0, 450.0],
        &IntegratorOptions::default(),
    )
    .unwrap();
    let ratio = diameter(&snapshots[1].points) / diameter(&snapshots[0].points);
    assert!(ratio > 5.0, "dispersal ratio {ratio}");
}

#[test]
fn the_unstable_mode_one_ensemble_spreads_along_the_conserved_line() {
    // Band width frozen from tools/oracles/calibrate_dynamics.py.
    let system = modal_system(U_CASE0, 0.2);
    let spec = EnsembleSpec::new(1, 4.5, 98, 0.15, 0).unwrap();
    let members = dynamics::ensemble_states(&spec).unwrap();
    let snapshots = ensemble_simplex(
        &system,
        &spec,
        &[0.0, 450.0],
        &IntegratorOptions::default(),
    )
    .unwrap();
    let mut worst = 0.0f64;
    for (state, point) in members.iter().zip(&snapshots[1].points) {
        let r2s = state[1] * state[1] + state[3] * state[3] / 4.0;
        let r3s = state[2] * state[2] + state[5] * state[5];
        let third0 = 2.0 * r2s - r3s;
        worst = worst.max((point[1] / 2.0 - point[2] - third0 / 9.0).abs());
    }
    assert!(worst < 0.05, "line deviation {worst}");
    assert!((worst - 0.0337).abs() < 0.005, "line deviation {worst}");
}
