//! Steady state of a Liouvillian by a bordered direct solve.

use faer::linalg::solvers::{PartialPivLu, Solve};
use faer::Mat;

use crate::error::{Error, Result};
use crate::hilbert::Operator;
use crate::linalg::{matvec, norm2, unvectorize, vectorize};
use crate::liouvillian::Superoperator;
use crate::C64;

/// Minimum accepted ratio between the smallest singular value of the bordered
/// matrix and the residual scale of the generator.
pub const KERNEL_GAP_RATIO: f64 = 1e6;
/// Eigenvalues of `ρ_ss` below this are reported as positivity violations.
pub const POSITIVITY_FLOOR: f64 = -1e-8;

#[derive(Clone, Debug)]
pub struct SteadyState {
    pub rho: Operator,
    /// `‖L(ρ)‖_max`.
    pub residual: f64,
    pub min_eigenvalue: f64,
    /// Smallest singular value of the bordered matrix over the residual scale.
    pub kernel_gap: f64,
}

impl SteadyState {
    pub fn is_positive(&self) -> bool {
        self.min_eigenvalue >= POSITIVITY_FLOOR
    }
}

/// Replaces the first equation of `L vec(ρ) = 0` by `Tr ρ = 1`.
fn bordered(l: &Superoperator) -> Mat<C64> {
    let n = l.dim();
    let mut b = l.mat().clone();
    for c in 0..n * n {
        b[(0, c)] = C64::new(0.0, 0.0);
    }
    for i in 0..n {
        b[(0, i + i * n)] = C64::new(1.0, 0.0);
    }
    b
}

/// Smallest singular value of `B` by inverse iteration on `BᴴB`.
fn smallest_singular_value(lu: &PartialPivLu<C64>, dim: usize) -> f64 {
    let mut x = Mat::from_fn(dim, 1, |i, _| C64::new(1.0 + (i % 7) as f64 * 0.1, (i % 5) as f64 * 0.05));
    let mut estimate = 0.0;
    for _ in 0..12 {
        let nx = x.norm_l2();
        x = Mat::from_fn(dim, 1, |i, _| x[(i, 0)] / nx);
        let y = lu.solve(&x);
        let z = lu.solve_adjoint(&y);
        let growth = z.norm_l2();
        if !growth.is_finite() || growth == 0.0 {
            return 0.0;
        }
        let next = 1.0 / growth.sqrt();
        let converged = (next - estimate).abs() <= 1e-3 * next;
        estimate = next;
        x = z;
        if converged {
            break;
        }
    }
    estimate
}

/// Trace-one solution of `L(ρ) = 0`, Hermitized, with one step of iterative
/// refinement. Fails if the kernel of `L` is not one-dimensional.
pub fn steady_state(l: &Superoperator) -> Result<SteadyState> {
    let n = l.dim();
    let dim = n * n;
    let b = bordered(l);
    let lu = b.partial_piv_lu();
    let mut rhs = Mat::<C64>::zeros(dim, 1);
    rhs[(0, 0)] = C64::new(1.0, 0.0);
    let mut x = lu.solve(&rhs);
    let r = &rhs - &b * &x;
    x += lu.solve(&r);
    if !x.norm_max().is_finite() {
        return Err(Error::DegenerateKernel { ratio: 0.0, kernel_dim: 2 });
    }

    let v: Vec<C64> = (0..dim).map(|i| x[(i, 0)]).collect();
    let raw = unvectorize(&v, n);
    let rho = raw.add(&raw.adjoint()).scale(0.5);
    let trace = rho.trace().re;
    let rho = rho.scale(1.0 / trace);

    let lrho = matvec(l.mat(), &vectorize(&rho));
    let residual = lrho.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = (norm2(&lrho) / norm2(&vectorize(&rho))).max(f64::EPSILON * l.max_abs() * n as f64);
    let sigma = smallest_singular_value(&lu, dim);
    let kernel_gap = sigma / scale;
    if !(kernel_gap > KERNEL_GAP_RATIO) {
        return Err(Error::DegenerateKernel { ratio: kernel_gap, kernel_dim: 2 });
    }
    let min_eigenvalue = rho.hermitian_eigenvalues()?.into_iter().fold(f64::INFINITY, f64::min);
    if min_eigenvalue < POSITIVITY_FLOOR {
        log::warn!("steady state has negative eigenvalue {min_eigenvalue:e}");
    }
    Ok(SteadyState { rho, residual, min_eigenvalue, kernel_gap })
}
