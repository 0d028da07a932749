use crate::dopri5::Trajectory;
use crate::error::DynamicsError;
use crate::system::System;

/// Fixed-step velocity Verlet (kick, drift, kick) integrator.
///
/// Every supported system splits its state into positions followed by
/// velocities, with accelerations that depend on positions alone, so
/// the scheme is symplectic and time reversible. It serves as an
/// independent cross-check of the adaptive integrator: energies agree
/// up to the `O(dt^2)` bias of the method instead of sharing one code
/// path.
///
/// Runs `steps` steps of size `dt` from `state0`, recording the state
/// every `record_every` steps plus the final one. Recorded times are
/// computed as `i * dt`, not accumulated.
pub fn leapfrog(
    system: &System,
    state0: &[f64],
    steps: usize,
    dt: f64,
    record_every: usize,
) -> Result<Trajectory, DynamicsError> {
    let dim = system.dim();
    if state0.len() != dim {
        return Err(DynamicsError::DimensionMismatch {
            got: state0.len(),
            expected: dim,
        });
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(DynamicsError::OutOfDomain {
            name: "dt",
            value: dt,
            domain: "positive reals",
        });
    }
    if steps == 0 {
        return Err(DynamicsError::OutOfDomain {
            name: "steps",
            value: 0.0,
            domain: "at least one step",
        });
    }
    if record_every == 0 {
        return Err(DynamicsError::OutOfDomain {
            name: "record_every",
            value: 0.0,
            domain: "at least one step between records",
        });
    }
    let n = dim / 2;
    let mut q = state0[..n].to_vec();
    let mut v = state0[n..].to_vec();
    let mut derivative = vec![0.0; dim];
    let mut scratch = vec![0.0; dim];

    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut record = |step: usize, q: &[f64], v: &[f64]| {
        times.push(step as f64 * dt);
        let mut state = Vec::with_capacity(dim);
        state.extend_from_slice(q);
        state.extend_from_slice(v);
        states.push(state);
    };
    record(0, &q, &v);

    scratch[..n].copy_from_slice(&q);
    system.fill_rhs(&scratch, &mut derivative);
    let mut rhs_evaluations = 1;
    for step in 1..=steps {
        for j in 0..n {
            v[j] += 0.5 * dt * derivative[n + j];
            q[j] += dt * v[j];
        }
        scratch[..n].copy_from_slice(&q);
        system.fill_rhs(&scratch, &mut derivative);
        rhs_evaluations += 1;
        for j in 0..n {
            v[j] += 0.5 * dt * derivative[n + j];
        }
        if step % record_every == 0 || step == steps {
            record(step, &q, &v);
        }
    }

    Ok(Trajectory {
        times,
        states,
        accepted_steps: steps,
        rejected_steps: 0,
        rhs_evaluations,
    })
}
