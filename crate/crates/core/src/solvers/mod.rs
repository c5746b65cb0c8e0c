//! Steady states, time evolution, emission spectra and populations.

pub mod evolve;
pub mod correlation;
pub mod peaks;
pub mod populations;
pub mod spectrum;
pub mod steady;

pub use evolve::{propagate, time_evolve, EvolveOptions, Trajectory};
pub use correlation::{gauss_legendre, time_domain_spectrum, TimeDomainOptions};
pub use peaks::{find_peaks, prominence, refine_peak, Peak};
pub use populations::{detuning_sweep, number_operator, populations, Populations, SweepPoint};
pub use spectrum::{emission_spectrum, SpectrumResult, SpectrumSolver};
pub use steady::{steady_state, SteadyState};
