//! Cavity emission spectrum by quantum regression, evaluated through the
//! resolvent of the generator.
//!
//! With `s = x⁺ρ − ⟨x⁺⟩ρ` and `δ = ω − ω_L`,
//! `S(δ) = Re Tr[x⁻ (iδ − L)⁻¹ s]`. The seed is traceless, so `L` can be
//! replaced by `L̃ = L − c·vec(ρ)vec(1)ᵀ`, which has the same action on
//! traceless operators but no zero eigenvalue. `L̃` is reduced once to
//! Hessenberg form, after which each detuning costs one `O(n²)` solve.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::Operator;
use crate::linalg::{vectorize, HessenbergScratch, ShiftedHessenberg};
use crate::liouvillian::Superoperator;
use crate::C64;

#[derive(Clone, Debug)]
pub struct SpectrumResult {
    /// `δ = ω − ω_L` (meV).
    pub detunings: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest `|Im(I₊ + I₋)|` over the grid, relative to `max |S|`.
    pub reality_residue: f64,
}

impl SpectrumResult {
    /// Values divided by their maximum magnitude.
    pub fn normalized(&self) -> Vec<f64> {
        let m = self.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if m == 0.0 {
            return self.values.clone();
        }
        self.values.iter().map(|v| v / m).collect()
    }
}

/// Reduced resolvent of one generator for a fixed seed and readout.
pub struct SpectrumSolver {
    hess: ShiftedHessenberg,
    /// `Qᴴ vec(x⁺ρ − ⟨x⁺⟩ρ)`.
    seed_plus: Vec<C64>,
    /// `Qᵀ vec((x⁻)ᵀ)`.
    read_plus: Vec<C64>,
    seed_minus: Vec<C64>,
    read_minus: Vec<C64>,
}

fn centered_seed(left: &Operator, rho: &Operator) -> Operator {
    let mean = left.matmul(rho).trace();
    left.matmul(rho).sub(&rho.scale_complex(mean))
}

impl SpectrumSolver {
    /// `x_plus` is the lowering (positive-frequency) cavity operator in the
    /// dressed basis, `rho` the steady state of `l`.
    pub fn new(l: &Superoperator, rho: &Operator, x_plus: &Operator) -> Result<Self> {
        let n = l.dim();
        if rho.dim() != n || x_plus.dim() != n {
            return Err(Error::Dimension("spectrum operands do not match the generator".into()));
        }
        let x_minus = x_plus.adjoint();
        let mut m = l.mat().clone();
        let shift = (0..n * n).map(|i| m[(i, i)].norm()).fold(0.0, f64::max).max(1.0);
        let vrho = vectorize(rho);
        for k in 0..n {
            let col = m.col_as_slice_mut(k + k * n);
            for (c, r) in col.iter_mut().zip(&vrho) {
                *c -= r * shift;
            }
        }
        let hess = ShiftedHessenberg::new(m);

        let prepare_seed = |op: Operator| {
            let mut v = vectorize(&op);
            hess.apply_q_adjoint(&mut v);
            v
        };
        let prepare_read = |op: &Operator| {
            let transposed = Operator::from_fn(n, |i, j| op.get(j, i));
            let mut v = vectorize(&transposed);
            hess.apply_q_transpose(&mut v);
            v
        };
        // Tr[x⁻ Y] = vec((x⁻)ᵀ)ᵀ vec(Y)
        let seed_plus = prepare_seed(centered_seed(x_plus, rho));
        let read_plus = prepare_read(&x_minus);
        // conjugate process: seed ρx⁻ − ⟨x⁻⟩ρ, readout x⁺
        let mean = rho.matmul(&x_minus).trace();
        let seed_minus = prepare_seed(rho.matmul(&x_minus).sub(&rho.scale_complex(mean)));
        let read_minus = prepare_read(x_plus);
        Ok(Self { hess, seed_plus, read_plus, seed_minus, read_minus })
    }

    fn resolve(&self, shift: C64, seed: &[C64], read: &[C64], work: &mut HessenbergScratch, delta: f64) -> Result<C64> {
        let value = self.hess.bilinear_shifted(shift, read, seed, work).ok_or(Error::SingularResolvent(delta))?;
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::SingularResolvent(delta));
        }
        Ok(value)
    }

    /// `Tr[x⁻ (iδ − L)⁻¹ s]`.
    pub fn evaluate(&self, delta: f64, work: &mut HessenbergScratch) -> Result<C64> {
        self.resolve(C64::new(0.0, delta), &self.seed_plus, &self.read_plus, work, delta)
    }

    /// `(I₊, I₋)`; analytically `I₋ = conj(I₊)`.
    pub fn evaluate_pair(&self, delta: f64, work: &mut HessenbergScratch) -> Result<(C64, C64)> {
        let plus = self.evaluate(delta, work)?;
        let minus = self.resolve(C64::new(0.0, -delta), &self.seed_minus, &self.read_minus, work, delta)?;
        Ok((plus, minus))
    }

    /// `(S(δ), Im(I₊ + I₋))` for every detuning, in parallel with ordered
    /// output. A failing point does not stop the others. The imaginary
    /// residue is zero when `check_reality` is off.
    pub fn spectrum_points(&self, detunings: &[f64], check_reality: bool) -> Vec<Result<(f64, f64)>> {
        detunings
            .par_iter()
            .map_init(HessenbergScratch::default, |work, &d| {
                if check_reality {
                    let (p, m) = self.evaluate_pair(d, work)?;
                    Ok((p.re, (p + m).im))
                } else {
                    Ok((self.evaluate(d, work)?.re, 0.0))
                }
            })
            .collect()
    }

    /// Spectrum on a grid; fails on the first singular point.
    pub fn spectrum(&self, detunings: &[f64], check_reality: bool) -> Result<SpectrumResult> {
        let mut values = Vec::with_capacity(detunings.len());
        let mut residues = Vec::with_capacity(detunings.len());
        for p in self.spectrum_points(detunings, check_reality) {
            let (v, r) = p?;
            values.push(v);
            residues.push(r.abs());
        }
        let scale = values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let worst = residues.iter().fold(0.0_f64, |a, &r| a.max(r));
        let reality_residue = if scale > 0.0 { worst / scale } else { worst };
        Ok(SpectrumResult { detunings: detunings.to_vec(), values, reality_residue })
    }
}

/// One-shot spectrum: reduces `l` and evaluates every detuning.
pub fn emission_spectrum(
    l: &Superoperator,
    x_plus: &Operator,
    rho: &Operator,
    detunings: &[f64],
) -> Result<SpectrumResult> {
    SpectrumSolver::new(l, rho, x_plus)?.spectrum(detunings, true)
}
