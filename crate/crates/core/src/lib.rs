//! Cavity-exciton-vibration open-system simulator.
//!
//! The crate builds the hybrid system Hamiltonian (a cavity mode, a molecular
//! two-level transition and one vibrational mode), diagonalizes it into a
//! truncated dressed basis, and assembles two master equations on that basis:
//!
//! * the standard Lindblad master equation built from bare operators, and
//! * the generalized dressed-state master equation, which decomposes every
//!   system-bath coupling operator into positive- and negative-frequency
//!   transition operators and weights each transition by its own bath rate,
//!   without a secular approximation.
//!
//! On top of the generator it computes steady states, cavity emission spectra
//! (quantum regression, resolvent route) and steady-state populations.
//!
//! Units: `ħ = 1`, energies and rates in meV, temperatures in kelvin, times in
//! `ħ/meV`. The bare tensor order is exciton ⊗ photon ⊗ phonon.

// `!(x > 0.0)` is used on purpose so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baths;
pub mod dressed;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod liouvillian;
pub mod model;
pub mod solvers;
pub mod system;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = faer::c64;

/// Runs dense kernels single-threaded so results do not depend on the size of
/// the rayon pool. Callers then parallelize over independent grid points.
pub fn sequential_dense_kernels() {
    faer::set_global_parallelism(faer::Par::Seq);
}
