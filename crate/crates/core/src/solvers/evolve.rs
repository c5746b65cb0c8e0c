//! Adaptive Dormand-Prince 5(4) integration of `dρ/dt = L ρ`.

use crate::error::{Error, Result};
use crate::hilbert::Operator;
use crate::linalg::{matvec, unvectorize, vectorize};
use crate::liouvillian::Superoperator;
use crate::C64;

/// Trace drift above this aborts a density-matrix run.
pub const TRACE_DRIFT_LIMIT: f64 = 1e-8;

#[derive(Clone, Copy, Debug)]
pub struct EvolveOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Steps shorter than this abort the run.
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, min_step: 1e-14, max_steps: 10_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Operator>,
    pub max_trace_drift: f64,
}

const A21: f64 = 1.0 / 5.0;
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
// error weights: fifth-order minus embedded fourth-order
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn combine(y: &[C64], h: f64, terms: &[(f64, &[C64])]) -> Vec<C64> {
    let mut out = y.to_vec();
    for &(c, k) in terms {
        if c == 0.0 {
            continue;
        }
        let hc = h * c;
        for (o, v) in out.iter_mut().zip(k) {
            *o += v * hc;
        }
    }
    out
}

/// Integrates `dy/dt = L y` from `t_grid[0]`, returning `y` at every grid time.
/// Works for arbitrary vectorized operators, not only density matrices.
pub fn propagate(l: &Superoperator, y0: &[C64], t_grid: &[f64], opts: EvolveOptions) -> Result<Vec<Vec<C64>>> {
    if t_grid.is_empty() {
        return Ok(Vec::new());
    }
    if t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("time grid must be non-decreasing".into()));
    }
    let f = |y: &[C64]| matvec(l.mat(), y);
    let mut out = vec![y0.to_vec()];
    let mut y = y0.to_vec();
    let mut t = t_grid[0];
    let scale = l.max_abs().max(1e-300);
    let mut h = (0.01 / scale).min(t_grid.last().unwrap() - t).max(opts.min_step);
    let mut k1 = f(&y);
    let mut steps = 0usize;
    for &target in &t_grid[1..] {
        while t < target {
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::NoConvergence(format!("step budget exhausted at t = {t}")));
            }
            let last = target - t <= h;
            let step = if last { target - t } else { h };
            let k2 = f(&combine(&y, step, &[(A21, &k1)]));
            let k3 = f(&combine(&y, step, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(&combine(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = f(&combine(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
            let k6 = f(&combine(&y, step, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
            let y_new = combine(&y, step, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let k7 = f(&y_new);
            let mut err = 0.0_f64;
            for i in 0..y.len() {
                let e = step
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let tol = opts.atol + opts.rtol * y[i].norm().max(y_new[i].norm());
                err = err.max(e.norm() / tol);
            }
            if err <= 1.0 {
                t = if last { target } else { t + step };
                y = y_new;
                k1 = k7;
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                if !last {
                    h = step * grow;
                }
            } else {
                h = step * (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
                if h < opts.min_step {
                    return Err(Error::StepUnderflow(t));
                }
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

/// Evolves a density matrix and checks trace conservation.
pub fn time_evolve(l: &Superoperator, rho0: &Operator, t_grid: &[f64], opts: EvolveOptions) -> Result<Trajectory> {
    let n = l.dim();
    let tr0 = rho0.trace();
    let ys = propagate(l, &vectorize(rho0), t_grid, opts)?;
    let states: Vec<Operator> = ys.iter().map(|y| unvectorize(y, n)).collect();
    let max_trace_drift = states.iter().map(|s| (s.trace() - tr0).norm()).fold(0.0, f64::max);
    if max_trace_drift > TRACE_DRIFT_LIMIT {
        return Err(Error::NoConvergence(format!("trace drift {max_trace_drift:e} exceeds {TRACE_DRIFT_LIMIT:e}")));
    }
    Ok(Trajectory { times: t_grid.to_vec(), states, max_trace_drift })
}
