//! Embedded Dormand-Prince 5(4) integrator with PI step-size control and
//! fourth-order dense output at caller-requested grid points. Integration
//! in the decreasing-t direction is supported (the Painleve II march runs
//! right to left).

use crate::error::{Error, Result};

// Dormand-Prince 5(4) tableau.
const A21: f64 = 0.2;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const C2: f64 = 0.2;
const C3: f64 = 0.3;
const C4: f64 = 0.8;
const C5: f64 = 8.0 / 9.0;
// Difference between the 5th- and embedded 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Dense-output coefficients.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

// Step controller: safety factor, growth/shrink bounds, PI stabilization.
const SAFETY: f64 = 0.9;
const FAC_MAX: f64 = 5.0;
const FAC_MIN: f64 = 0.2;
const BETA: f64 = 0.04;
const EXPO1: f64 = 0.2 - BETA * 0.75;

const MAX_STEPS: usize = 20_000_000;
const MAX_REJECTS: usize = 200;

/// An initial-value problem with a fixed output grid.
pub struct OdeProblem<'a, F> {
    /// State dimension.
    pub dim: usize,
    /// Right-hand side `f(t, y, dydt)`.
    pub rhs: F,
    pub t_start: f64,
    pub t_end: f64,
    /// Points where the solution is reported, monotone from `t_start`
    /// toward `t_end` (which may be the decreasing direction).
    pub output_grid: &'a [f64],
    pub reltol: f64,
    pub abstol: f64,
}

/// Solution samples at the requested output grid.
#[derive(Debug, Clone)]
pub struct OdeTrajectory {
    /// Equals the requested output grid exactly.
    pub times: Vec<f64>,
    /// One state row per output time.
    pub states: Vec<Vec<f64>>,
}

impl OdeTrajectory {
    /// Column `j` of the state matrix as a vector.
    pub fn component(&self, j: usize) -> Vec<f64> {
        self.states.iter().map(|row| row[j]).collect()
    }
}

/// Integrate `problem` from `y0`, reporting dense-output states on the
/// problem's grid.
pub fn integrate<F>(mut problem: OdeProblem<'_, F>, y0: &[f64]) -> Result<OdeTrajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let n = problem.dim;
    if y0.len() != n {
        return Err(Error::Contract(format!(
            "integrate: y0 has length {} but problem dimension is {n}",
            y0.len()
        )));
    }
    if !(problem.reltol > 0.0) || !(problem.abstol > 0.0) {
        return Err(Error::Contract(
            "integrate: tolerances must be positive".into(),
        ));
    }
    let dir = (problem.t_end - problem.t_start).signum();
    if dir == 0.0 || !dir.is_finite() {
        return Err(Error::Contract(
            "integrate: empty integration span".into(),
        ));
    }
    validate_grid(problem.output_grid, problem.t_start, problem.t_end, dir)?;

    let grid = problem.output_grid;
    let mut states: Vec<Vec<f64>> = Vec::with_capacity(grid.len());
    let mut grid_idx = 0;

    let mut t = problem.t_start;
    let mut y = y0.to_vec();
    let mut k1 = vec![0.0; n];
    (problem.rhs)(t, &y, &mut k1);

    // Leading grid points at the start time are the initial state.
    while grid_idx < grid.len() && (grid[grid_idx] - t) * dir <= 0.0 {
        states.push(y.clone());
        grid_idx += 1;
    }

    let mut h = initial_step(
        &mut problem.rhs,
        t,
        &y,
        &k1,
        dir,
        problem.reltol,
        problem.abstol,
    )
    .min((problem.t_end - problem.t_start).abs())
        * dir;

    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut k5 = vec![0.0; n];
    let mut k6 = vec![0.0; n];
    let mut k7 = vec![0.0; n];
    let mut y_stage = vec![0.0; n];
    let mut y_new = vec![0.0; n];

    let mut facold: f64 = 1e-4;
    let mut steps = 0usize;
    let mut rejects_in_a_row = 0usize;

    while grid_idx < grid.len() {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::Integration {
                t,
                msg: format!("step budget of {MAX_STEPS} exhausted"),
            });
        }
        if h.abs() <= 16.0 * f64::EPSILON * t.abs().max(1e-30) {
            return Err(Error::StepSizeUnderflow { t });
        }
        // Land exactly on the end point.
        if (t + h - problem.t_end) * dir > 0.0 {
            h = problem.t_end - t;
        }

        for i in 0..n {
            y_stage[i] = y[i] + h * A21 * k1[i];
        }
        (problem.rhs)(t + C2 * h, &y_stage, &mut k2);
        for i in 0..n {
            y_stage[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        (problem.rhs)(t + C3 * h, &y_stage, &mut k3);
        for i in 0..n {
            y_stage[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        (problem.rhs)(t + C4 * h, &y_stage, &mut k4);
        for i in 0..n {
            y_stage[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        (problem.rhs)(t + C5 * h, &y_stage, &mut k5);
        for i in 0..n {
            y_stage[i] = y[i]
                + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        (problem.rhs)(t + h, &y_stage, &mut k6);
        for i in 0..n {
            y_new[i] =
                y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        (problem.rhs)(t + h, &y_new, &mut k7);

        let mut err_sq = 0.0;
        for i in 0..n {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = problem.abstol + problem.reltol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / sc) * (e / sc);
        }
        let err = (err_sq / n as f64).sqrt();

        if !err.is_finite() || !y_new.iter().all(|v| v.is_finite()) {
            rejects_in_a_row += 1;
            if rejects_in_a_row > MAX_REJECTS {
                return Err(Error::Integration {
                    t,
                    msg: "state became non-finite and step reduction did not recover".into(),
                });
            }
            h *= 0.2;
            continue;
        }

        if err <= 1.0 {
            // Accepted: emit dense output over (t, t + h].
            let t_new = t + h;
            if grid_idx < grid.len() {
                let mut cont5 = vec![0.0; n];
                for i in 0..n {
                    cont5[i] = h
                        * (D1 * k1[i]
                            + D3 * k3[i]
                            + D4 * k4[i]
                            + D5 * k5[i]
                            + D6 * k6[i]
                            + D7 * k7[i]);
                }
                let slack = 1e-12 * h.abs();
                let reached_end = (t_new - problem.t_end) * dir >= 0.0;
                while grid_idx < grid.len()
                    && ((grid[grid_idx] - t_new) * dir <= slack || reached_end)
                {
                    let theta = ((grid[grid_idx] - t) / h).clamp(0.0, 1.0);
                    let theta1 = 1.0 - theta;
                    let row: Vec<f64> = (0..n)
                        .map(|i| {
                            let delta = y_new[i] - y[i];
                            let c3 = h * k1[i] - delta;
                            let c4 = delta - h * k7[i] - c3;
                            y[i] + theta * (delta + theta1 * (c3 + theta * (c4 + theta1 * cont5[i])))
                        })
                        .collect();
                    states.push(row);
                    grid_idx += 1;
                }
            }

            let fac11 = err.powf(EXPO1);
            let fac = (fac11 / facold.powf(BETA) / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
            facold = err.max(1e-4);
            t = t_new;
            std::mem::swap(&mut y, &mut y_new);
            std::mem::swap(&mut k1, &mut k7); // FSAL
            rejects_in_a_row = 0;
            h /= fac;
        } else {
            rejects_in_a_row += 1;
            if rejects_in_a_row > MAX_REJECTS {
                return Err(Error::StepSizeUnderflow { t });
            }
            let fac11 = err.powf(EXPO1);
            h /= (fac11 / SAFETY).min(1.0 / FAC_MIN);
        }
    }

    Ok(OdeTrajectory {
        times: grid.to_vec(),
        states,
    })
}

fn validate_grid(grid: &[f64], t_start: f64, t_end: f64, dir: f64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Contract("integrate: empty output grid".into()));
    }
    if (grid[0] - t_start) * dir < 0.0 || (grid[grid.len() - 1] - t_end) * dir > 0.0 {
        return Err(Error::Contract(
            "integrate: output grid extends outside the integration span".into(),
        ));
    }
    for w in grid.windows(2) {
        if (w[1] - w[0]) * dir < 0.0 {
            return Err(Error::Contract(
                "integrate: output grid is not monotone toward t_end".into(),
            ));
        }
    }
    Ok(())
}

/// Step-size guess from the scaled magnitudes of y0, f(t0, y0) and a probe
/// Euler step (Hairer's HINIT, simplified).
fn initial_step<F>(
    rhs: &mut F,
    t0: f64,
    y0: &[f64],
    f0: &[f64],
    dir: f64,
    reltol: f64,
    abstol: f64,
) -> f64
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let n = y0.len();
    let sc: Vec<f64> = y0.iter().map(|v| abstol + reltol * v.abs()).collect();
    let rms = |v: &[f64]| -> f64 {
        (v.iter()
            .zip(&sc)
            .map(|(x, s)| (x / s) * (x / s))
            .sum::<f64>()
            / n as f64)
            .sqrt()
    };
    let d0 = rms(y0);
    let d1 = rms(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let y1: Vec<f64> = y0.iter().zip(f0).map(|(y, f)| y + dir * h0 * f).collect();
    let mut f1 = vec![0.0; n];
    rhs(t0 + dir * h0, &y1, &mut f1);
    let df: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = rms(&df) / h0;
    let d_max = d1.max(d2);
    let h1 = if d_max <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d_max).powf(0.2)
    };
    h1.min(100.0 * h0)
}
