//! Emission spectrum by direct time integration of the regression equation,
//! `S(δ) = Re ∫₀^∞ dt e^{−iδt} Tr[x⁻ e^{Lt} s]`.
//!
//! Each panel of length `h` is propagated with `exp(Lh)` and integrated with
//! Gauss-Legendre nodes. Far slower than the resolvent route and only meant
//! as an independent check on small systems.

use std::f64::consts::PI;

use faer::Mat;

use crate::error::{Error, Result};
use crate::hilbert::Operator;
use crate::linalg::{dotu, expm, matvec, norm2, vectorize};
use crate::liouvillian::Superoperator;
use crate::C64;

#[derive(Clone, Copy, Debug)]
pub struct TimeDomainOptions {
    /// Panel length (ħ/meV). Should be well below the shortest period in `L`.
    pub panel: f64,
    /// Gauss-Legendre nodes per panel.
    pub nodes: usize,
    /// Integration stops once `‖e^{Lt}s‖ < tol · ‖s‖`.
    pub tol: f64,
    pub t_max: f64,
}

impl Default for TimeDomainOptions {
    fn default() -> Self {
        Self { panel: 0.01, nodes: 12, tol: 1e-13, t_max: 1e3 }
    }
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(z) and its derivative
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Time-domain spectrum with the same seed and readout as
/// [`super::SpectrumSolver`].
pub fn time_domain_spectrum(
    l: &Superoperator,
    x_plus: &Operator,
    rho: &Operator,
    detunings: &[f64],
    opts: TimeDomainOptions,
) -> Result<Vec<f64>> {
    let n = l.dim();
    if rho.dim() != n || x_plus.dim() != n {
        return Err(Error::Dimension("spectrum operands do not match the generator".into()));
    }
    if !(opts.panel > 0.0) || opts.nodes == 0 {
        return Err(Error::Domain("panel length and node count must be positive".into()));
    }
    let mean = x_plus.matmul(rho).trace();
    let mut y = vectorize(&x_plus.matmul(rho).sub(&rho.scale_complex(mean)));
    let x_minus = x_plus.adjoint();
    let read = vectorize(&Operator::from_fn(n, |i, j| x_minus.get(j, i)));

    let (gx, gw) = gauss_legendre(opts.nodes);
    let h = opts.panel;
    let taus: Vec<f64> = gx.iter().map(|x| 0.5 * h * (x + 1.0)).collect();
    let scaled = |t: f64| Mat::from_fn(n * n, n * n, |i, j| l.mat()[(i, j)] * t);
    let node_maps: Vec<Mat<C64>> = taus.iter().map(|&t| expm(&scaled(t))).collect();
    let step = expm(&scaled(h));

    let norm0 = norm2(&y);
    let mut acc = vec![C64::new(0.0, 0.0); detunings.len()];
    if norm0 == 0.0 {
        return Ok(vec![0.0; detunings.len()]);
    }
    let mut t0 = 0.0;
    while norm2(&y) > opts.tol * norm0 {
        if t0 > opts.t_max {
            return Err(Error::NoConvergence(format!("correlation has not decayed by t = {}", opts.t_max)));
        }
        for ((map, &tau), &w) in node_maps.iter().zip(&taus).zip(&gw) {
            let f = dotu(&read, &matvec(map, &y)) * (0.5 * h * w);
            let t = t0 + tau;
            for (a, &d) in acc.iter_mut().zip(detunings) {
                *a += f * C64::new(0.0, -d * t).exp();
            }
        }
        y = matvec(&step, &y);
        t0 += h;
    }
    Ok(acc.into_iter().map(|a| a.re).collect())
}
