//! Steady-state mode populations `n_i = ⟨x_i⁻ x_i⁺⟩` and laser-detuning sweeps.

use rayon::prelude::*;

use crate::dressed::{truncation_leak_check, TransitionSet};
use crate::error::Result;
use crate::hilbert::Operator;
use crate::liouvillian::{Drive, MasterEquationKind};
use crate::solvers::steady::steady_state;
use crate::system::HybridSystem;

/// Number of top retained levels monitored for truncation leakage.
pub const LEAK_GUARD_LEVELS: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Populations {
    pub n_c: f64,
    pub n_x: f64,
    pub n_m: f64,
}

/// `Σ x⁻x⁺`, summed separately over excitation-number classes.
pub fn number_operator(set: &TransitionSet) -> Operator {
    let mut total = Operator::zeros(set.levels);
    for class in set.delta_n_classes() {
        let x = set.x_plus_class(class);
        total = total.add(&x.adjoint().matmul(&x));
    }
    total
}

pub fn expectation(op: &Operator, rho: &Operator) -> f64 {
    op.matmul(rho).trace().re
}

/// Cavity, exciton and vibrational populations in `rho`.
pub fn populations(rho: &Operator, system: &HybridSystem) -> Populations {
    Populations {
        n_c: expectation(&number_operator(&system.cavity), rho),
        n_x: expectation(&number_operator(&system.exciton), rho),
        n_m: expectation(&number_operator(&system.phonon), rho),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub omega_l: f64,
    pub populations: Populations,
    pub min_eigenvalue: f64,
    /// Population of the top [`LEAK_GUARD_LEVELS`] levels.
    pub leak: f64,
}

/// Steady-state populations for each laser frequency. The dissipator is
/// assembled once; each point only rebuilds the laser-frame Hamiltonian and
/// pump. A failing point does not stop the sweep.
pub fn detuning_sweep(
    system: &HybridSystem,
    kind: MasterEquationKind,
    omega_l_grid: &[f64],
    omega_pump: f64,
) -> Result<Vec<Result<SweepPoint>>> {
    let dissipator = system.dissipator(kind)?;
    let ops = [
        number_operator(&system.cavity),
        number_operator(&system.exciton),
        number_operator(&system.phonon),
    ];
    Ok(omega_l_grid
        .par_iter()
        .map(|&omega_l| {
            let l = system.liouvillian_with(&dissipator, Drive { omega_l, omega_pump })?;
            let ss = steady_state(&l)?;
            drop(l);
            Ok(SweepPoint {
                omega_l,
                populations: Populations {
                    n_c: expectation(&ops[0], &ss.rho),
                    n_x: expectation(&ops[1], &ss.rho),
                    n_m: expectation(&ops[2], &ss.rho),
                },
                min_eigenvalue: ss.min_eigenvalue,
                leak: truncation_leak_check(&ss.rho, LEAK_GUARD_LEVELS.min(system.levels())),
            })
        })
        .collect())
}
