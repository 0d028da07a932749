use serde::{Deserialize, Serialize};

use crate::error::DynamicsError;

/// Butcher matrix of the Dormand-Prince 5(4) pair; row `s` holds the
/// weights of `k_1, ..., k_{s+1}` entering stage `s + 2`.  The last row
/// doubles as the fifth-order solution weights, so the seventh stage
/// evaluates the field at the accepted end point (first-same-as-last).
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

/// Stage abscissae `c_2, ..., c_7` as fractions of the step.
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

/// Difference between the fifth- and the embedded fourth-order weights;
/// contracted with the stages it yields the local error estimate.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Stage weights of the highest dense-output coefficient, completing
/// the quartic interpolant that is fourth-order accurate on the step.
const DENSE: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

const SAFETY: f64 = 0.9;
/// PI stabilisation weight of the previous error in the controller.
const BETA: f64 = 0.04;
const STEP_EXPONENT: f64 = 0.2 - 0.75 * BETA;
/// A step may shrink at most to a fifth and grow at most tenfold.
const MAX_SHRINK: f64 = 0.2;
const MAX_GROWTH: f64 = 10.0;

/// Tolerances and budget for the adaptive integrator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntegratorOptions {
    /// Relative tolerance entering the error norm weights.
    pub rtol: f64,
    /// Absolute tolerance entering the error norm weights.
    pub atol: f64,
    /// Upper bound on accepted plus rejected steps.
    pub max_steps: usize,
    /// Magnitude of the first trial step; estimated from the field when
    /// absent.
    pub initial_step: Option<f64>,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-10,
            max_steps: 10_000_000,
            initial_step: None,
        }
    }
}

/// Solution samples together with step-control statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Sample instants, exactly as requested.
    pub times: Vec<f64>,
    /// State vector at each sample instant.
    pub states: Vec<Vec<f64>>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub rhs_evaluations: usize,
}

impl Trajectory {
    fn with_capacity(samples: usize) -> Self {
        Self {
            times: Vec::with_capacity(samples),
            states: Vec::with_capacity(samples),
            accepted_steps: 0,
            rejected_steps: 0,
            rhs_evaluations: 0,
        }
    }
}

/// Builds the sample schedule `t0, t0 + dt, ...` up to and including
/// `t_final`, which is appended even when the span is not a multiple of
/// `dt`.  Works for both time directions.
pub fn sample_schedule(t0: f64, t_final: f64, dt: f64) -> Result<Vec<f64>, DynamicsError> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(DynamicsError::OutOfDomain {
            name: "sample_dt",
            value: dt,
            domain: "positive reals",
        });
    }
    if !t0.is_finite() || !t_final.is_finite() {
        return Err(DynamicsError::OutOfDomain {
            name: "t_final",
            value: t_final,
            domain: "finite reals",
        });
    }
    let span = t_final - t0;
    let dir = if span < 0.0 { -1.0 } else { 1.0 };
    let mut times = vec![t0];
    let mut k = 1u64;
    loop {
        let t = t0 + dir * dt * k as f64;
        if (t - t_final) * dir >= 0.0 {
            break;
        }
        times.push(t);
        k += 1;
    }
    if span != 0.0 {
        times.push(t_final);
    }
    Ok(times)
}

/// Integrates `dy/dt = rhs(t, y)` with the Dormand-Prince 5(4) pair,
/// PI step-size control, and dense output, recording the solution at
/// the requested sample instants.
///
/// The schedule fixes the direction of time: integration runs from
/// `t0` to the last entry of `samples`, forwards or backwards, and the
/// samples must advance monotonically that way.  Sampling is done by
/// the quartic interpolant of each accepted step, so the cost is set by
/// the error control, not by the sampling density.
///
/// When the controlled step collapses (finite-time blow-up of the
/// solution) the error carries the samples reached so far.
pub fn dopri5<F>(
    mut rhs: F,
    t0: f64,
    y0: &[f64],
    samples: &[f64],
    options: &IntegratorOptions,
) -> Result<Trajectory, DynamicsError>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    validate_setup(t0, y0, samples, options)?;
    let n = y0.len();
    let t_end = *samples.last().expect("samples verified nonempty");

    if t_end == t0 {
        for (index, &s) in samples.iter().enumerate() {
            if s != t0 {
                return Err(DynamicsError::UnorderedSamples {
                    t0,
                    index,
                    value: s,
                });
            }
        }
        let mut trajectory = Trajectory::with_capacity(samples.len());
        for &s in samples {
            trajectory.times.push(s);
            trajectory.states.push(y0.to_vec());
        }
        return Ok(trajectory);
    }

    let span = t_end - t0;
    let dir = span.signum();
    for (index, window) in samples.windows(2).enumerate() {
        if (window[1] - window[0]) * dir < 0.0 {
            return Err(DynamicsError::UnorderedSamples {
                t0,
                index: index + 1,
                value: window[1],
            });
        }
    }
    if (samples[0] - t0) * dir < 0.0 {
        return Err(DynamicsError::UnorderedSamples {
            t0,
            index: 0,
            value: samples[0],
        });
    }

    let mut trajectory = Trajectory::with_capacity(samples.len());
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut y_new = vec![0.0; n];
    let mut y_stage = vec![0.0; n];
    let mut k: Vec<Vec<f64>> = (0..7).map(|_| vec![0.0; n]).collect();
    let mut cont: Vec<Vec<f64>> = (0..5).map(|_| vec![0.0; n]).collect();

    rhs(t, &y, &mut k[0]);
    trajectory.rhs_evaluations = 1;

    let mut h = match options.initial_step {
        Some(h0) => h0.abs().min(span.abs()) * dir,
        None => {
            trajectory.rhs_evaluations += 1;
            initial_step(&mut rhs, t, &y, &k[0], dir, span.abs(), options, &mut y_stage)
        }
    };

    let mut si = 0usize;
    let mut facold = 1e-4f64;
    let mut rejected_last = false;
    let mut last = false;

    loop {
        if trajectory.accepted_steps + trajectory.rejected_steps >= options.max_steps {
            return Err(DynamicsError::StepBudgetExhausted {
                t,
                max_steps: options.max_steps,
                partial: trajectory,
            });
        }
        if h == 0.0 || 0.1 * h.abs() <= t.abs() * f64::EPSILON {
            let recorded = trajectory.times.len();
            return Err(DynamicsError::StepUnderflow {
                t,
                step: h,
                recorded,
                requested: samples.len(),
                partial: trajectory,
            });
        }
        if (t + 1.01 * h - t_end) * dir > 0.0 {
            h = t_end - t;
            last = true;
        }

        for s in 0..6 {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().take(s + 1).enumerate() {
                    acc += A[s][j] * kj[i];
                }
                y_stage[i] = y[i] + h * acc;
            }
            if s == 5 {
                y_new.copy_from_slice(&y_stage);
            }
            rhs(t + C[s] * h, &y_stage, &mut k[s + 1]);
        }
        trajectory.rhs_evaluations += 6;

        let mut err = 0.0;
        for i in 0..n {
            let sk = options.atol + options.rtol * y[i].abs().max(y_new[i].abs());
            let e = h
                * (E[0] * k[0][i]
                    + E[2] * k[2][i]
                    + E[3] * k[3][i]
                    + E[4] * k[4][i]
                    + E[5] * k[5][i]
                    + E[6] * k[6][i]);
            err += (e / sk) * (e / sk);
        }
        err = (err / n as f64).sqrt();

        if !err.is_finite() {
            trajectory.rejected_steps += 1;
            rejected_last = true;
            last = false;
            h *= 0.1;
            continue;
        }

        let fac11 = err.powf(STEP_EXPONENT);
        let fac = (fac11 / facold.powf(BETA) / SAFETY).clamp(1.0 / MAX_GROWTH, 1.0 / MAX_SHRINK);
        let mut h_new = h / fac;

        if err <= 1.0 {
            facold = err.max(1e-4);
            for i in 0..n {
                let ydiff = y_new[i] - y[i];
                let bspl = h * k[0][i] - ydiff;
                cont[0][i] = y[i];
                cont[1][i] = ydiff;
                cont[2][i] = bspl;
                cont[3][i] = ydiff - h * k[6][i] - bspl;
                cont[4][i] = h
                    * (DENSE[0] * k[0][i]
                        + DENSE[2] * k[2][i]
                        + DENSE[3] * k[3][i]
                        + DENSE[4] * k[4][i]
                        + DENSE[5] * k[5][i]
                        + DENSE[6] * k[6][i]);
            }
            let t_new = if last { t_end } else { t + h };
            while si < samples.len() && (samples[si] - t_new) * dir <= 0.0 {
                let theta = ((samples[si] - t) / h).clamp(0.0, 1.0);
                let theta1 = 1.0 - theta;
                let state = (0..n)
                    .map(|i| {
                        cont[0][i]
                            + theta
                                * (cont[1][i]
                                    + theta1
                                        * (cont[2][i] + theta * (cont[3][i] + theta1 * cont[4][i])))
                    })
                    .collect();
                trajectory.times.push(samples[si]);
                trajectory.states.push(state);
                si += 1;
            }
            k.swap(0, 6);
            y.copy_from_slice(&y_new);
            t = t_new;
            trajectory.accepted_steps += 1;
            if last {
                debug_assert_eq!(si, samples.len());
                return Ok(trajectory);
            }
            if rejected_last {
                h_new = dir * h_new.abs().min(h.abs());
                rejected_last = false;
            }
            h = h_new;
        } else {
            h /= (fac11 / SAFETY).min(1.0 / MAX_SHRINK);
            trajectory.rejected_steps += 1;
            rejected_last = true;
            last = false;
        }
    }
}

fn validate_setup(
    t0: f64,
    y0: &[f64],
    samples: &[f64],
    options: &IntegratorOptions,
) -> Result<(), DynamicsError> {
    if y0.is_empty() {
        return Err(DynamicsError::DimensionMismatch {
            got: 0,
            expected: 1,
        });
    }
    for &v in y0 {
        if !v.is_finite() {
            return Err(DynamicsError::OutOfDomain {
                name: "initial state entry",
                value: v,
                domain: "finite reals",
            });
        }
    }
    if !t0.is_finite() {
        return Err(DynamicsError::OutOfDomain {
            name: "t0",
            value: t0,
            domain: "finite reals",
        });
    }
    if samples.is_empty() {
        return Err(DynamicsError::UnorderedSamples {
            t0,
            index: 0,
            value: f64::NAN,
        });
    }
    for (index, &s) in samples.iter().enumerate() {
        if !s.is_finite() {
            return Err(DynamicsError::UnorderedSamples {
                t0,
                index,
                value: s,
            });
        }
    }
    let tol_ok = |v: f64| v.is_finite() && v >= 0.0;
    if !tol_ok(options.rtol) || !tol_ok(options.atol) || options.rtol + options.atol <= 0.0 {
        return Err(DynamicsError::OutOfDomain {
            name: "tolerances",
            value: options.rtol.min(options.atol),
            domain: "nonnegative with a positive sum",
        });
    }
    if options.max_steps == 0 {
        return Err(DynamicsError::OutOfDomain {
            name: "max_steps",
            value: 0.0,
            domain: "at least one step",
        });
    }
    if let Some(h0) = options.initial_step {
        if !(h0.is_finite() && h0 != 0.0) {
            return Err(DynamicsError::OutOfDomain {
                name: "initial_step",
                value: h0,
                domain: "finite nonzero reals",
            });
        }
    }
    Ok(())
}

/// Estimates the magnitude of the first step from the field and its
/// rate of change along an explicit Euler probe.
fn initial_step<F>(
    rhs: &mut F,
    t0: f64,
    y0: &[f64],
    f0: &[f64],
    dir: f64,
    span: f64,
    options: &IntegratorOptions,
    scratch: &mut [f64],
) -> f64
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let n = y0.len();
    let sk: Vec<f64> = y0
        .iter()
        .map(|&v| options.atol + options.rtol * v.abs())
        .collect();
    let dnf: f64 = (0..n).map(|i| (f0[i] / sk[i]).powi(2)).sum();
    let dny: f64 = (0..n).map(|i| (y0[i] / sk[i]).powi(2)).sum();
    let mut h = if dnf <= 1e-10 || dny <= 1e-10 {
        1e-6
    } else {
        0.01 * (dny / dnf).sqrt()
    };
    h = h.min(span);

    let mut f1 = vec![0.0; n];
    for i in 0..n {
        scratch[i] = y0[i] + dir * h * f0[i];
    }
    rhs(t0 + dir * h, scratch, &mut f1);
    let der2 = (0..n)
        .map(|i| ((f1[i] - f0[i]) / sk[i]).powi(2))
        .sum::<f64>()
        .sqrt()
        / h;
    let der12 = der2.abs().max(dnf.sqrt());
    let h1 = if der12 <= 1e-15 {
        (h * 1e-3).max(1e-6)
    } else {
        (0.01 / der12).powf(0.2)
    };
    (100.0 * h).min(h1).min(span) * dir
}
