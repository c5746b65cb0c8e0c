//! Bath spectral functions and the rates they induce.
//!
//! Cavity and vibrational reservoirs are Ohmic: `Γ(ω) = γ ω/ω_ref` with a
//! temperature-linear pure-dephasing rate `Γ'(T) = γ k_B T/ω_ref`. The
//! exciton dephasing reservoir uses `J(ω) = η ω exp(−ω²/ω_cut²)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boltzmann constant in meV/K.
pub const K_B: f64 = 0.086_173_3;

/// `k_B T` in meV.
pub fn thermal_energy(temperature: f64) -> f64 {
    K_B * temperature
}

/// Bose-Einstein occupation `1/(exp(ω/k_B T) − 1)`; zero at `T = 0`.
pub fn bose_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("Bose occupation needs ω > 0, got {omega}")));
    }
    Ok(bose_unchecked(omega, temperature))
}

fn bose_unchecked(omega: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    1.0 / (omega / thermal_energy(temperature)).exp_m1()
}

/// Dissipation inputs. Rates in meV, temperatures in K.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BathParams {
    /// Cavity energy decay rate (`κ = 2γ_c`).
    pub kappa: f64,
    /// Vibrational decay rate.
    pub gamma_m: f64,
    /// Zero-frequency exciton dephasing rate at the calibration temperature.
    pub gamma_phi: f64,
    /// Temperature at which `gamma_phi` is specified.
    pub t_cal: f64,
    /// Cutoff of the exciton dephasing spectral function.
    pub omega_cut: f64,
    /// Operating temperature.
    pub temperature: f64,
}

impl Default for BathParams {
    fn default() -> Self {
        Self {
            kappa: 100.0,
            gamma_m: 0.8,
            gamma_phi: 10.0,
            t_cal: 300.0,
            omega_cut: 160.0,
            temperature: 4.0,
        }
    }
}

impl BathParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("kappa", self.kappa),
            ("gamma_m", self.gamma_m),
            ("gamma_phi", self.gamma_phi),
            ("temperature", self.temperature),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be non-negative, got {v}")));
            }
        }
        if !(self.t_cal > 0.0) {
            return Err(Error::Config(format!("t_cal must be positive, got {}", self.t_cal)));
        }
        if !(self.omega_cut > 0.0) {
            return Err(Error::Config(format!("omega_cut must be positive, got {}", self.omega_cut)));
        }
        Ok(())
    }

    /// Cavity reservoir, referenced at the cavity frequency with `γ_c = κ/2`.
    pub fn cavity_bath(&self, omega_c: f64) -> OhmicBath {
        OhmicBath { gamma_ref: 0.5 * self.kappa, omega_ref: omega_c }
    }

    /// Vibrational reservoir, referenced at the vibrational frequency.
    pub fn vibrational_bath(&self, omega_m: f64) -> OhmicBath {
        OhmicBath { gamma_ref: self.gamma_m, omega_ref: omega_m }
    }

    pub fn dephasing_bath(&self) -> DephasingBath {
        DephasingBath {
            eta: calibrate_eta(self.gamma_phi, self.t_cal),
            omega_cut: self.omega_cut,
        }
    }

    /// Zero-frequency exciton dephasing rate at the operating temperature.
    pub fn gamma_phi_at_temperature(&self) -> f64 {
        self.dephasing_bath().zero_frequency_rate(self.temperature)
    }
}

/// Ohmic reservoir.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OhmicBath {
    pub gamma_ref: f64,
    pub omega_ref: f64,
}

impl OhmicBath {
    /// `Γ(ω) = γ ω/ω_ref`.
    pub fn rate(&self, omega: f64) -> f64 {
        ohmic_rate(self, omega)
    }

    /// `Γ'(T) = γ k_B T/ω_ref`.
    pub fn pure_dephasing(&self, temperature: f64) -> f64 {
        ohmic_pure_dephasing(self, temperature)
    }

    /// Spectral density `J(ω) = Γ(ω)/2π`.
    pub fn spectral_density(&self, omega: f64) -> f64 {
        self.rate(omega) / (2.0 * PI)
    }
}

pub fn ohmic_rate(bath: &OhmicBath, omega: f64) -> f64 {
    bath.gamma_ref * omega / bath.omega_ref
}

pub fn ohmic_pure_dephasing(bath: &OhmicBath, temperature: f64) -> f64 {
    bath.gamma_ref * thermal_energy(temperature.max(0.0)) / bath.omega_ref
}

/// Exciton pure-dephasing reservoir `J(ω) = η ω exp(−ω²/ω_cut²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DephasingBath {
    pub eta: f64,
    pub omega_cut: f64,
}

impl DephasingBath {
    pub fn spectral_density(&self, omega: f64) -> f64 {
        self.eta * omega * (-(omega * omega) / (self.omega_cut * self.omega_cut)).exp()
    }

    /// `lim_{ω→0⁺} 2π J(ω) n̄(ω) = 2π η k_B T`.
    pub fn zero_frequency_rate(&self, temperature: f64) -> f64 {
        2.0 * PI * self.eta * thermal_energy(temperature.max(0.0))
    }

    pub fn rate(&self, omega: f64, temperature: f64) -> f64 {
        dephasing_rates(self, omega, temperature)
    }
}

/// Coupling strength `η` reproducing the zero-frequency dephasing rate
/// `gamma_phi` at temperature `t_cal`.
pub fn calibrate_eta(gamma_phi: f64, t_cal: f64) -> f64 {
    if gamma_phi == 0.0 {
        return 0.0;
    }
    gamma_phi / (2.0 * PI * thermal_energy(t_cal))
}

/// Downward rate `2πJ(ω)(1 + n̄(ω))` for `ω > 0`, upward rate
/// `2πJ(−ω) n̄(−ω)` for `ω < 0`, and the `ω → 0` limit at zero.
pub fn dephasing_rates(bath: &DephasingBath, omega: f64, temperature: f64) -> f64 {
    if omega == 0.0 {
        return bath.zero_frequency_rate(temperature);
    }
    let w = omega.abs();
    let j = 2.0 * PI * bath.spectral_density(w);
    let n = bose_unchecked(w, temperature);
    if omega > 0.0 {
        j * (1.0 + n)
    } else {
        j * n
    }
}

/// Rates a reservoir assigns to one dressed transition of frequency `ω > 0`
/// and to the zero-frequency channel.
pub trait TransitionRates: Sync {
    /// Downward (emission) rate.
    fn emission(&self, omega: f64) -> f64;
    /// Upward (absorption) rate for the same transition.
    fn absorption(&self, omega: f64) -> f64;
    /// Coefficient of the diagonal (`x⁰`) dephasing channel.
    fn zero_channel(&self) -> f64;
}

/// Ohmic reservoir at a fixed temperature.
#[derive(Clone, Copy, Debug)]
pub struct ThermalOhmic {
    pub bath: OhmicBath,
    pub temperature: f64,
}

impl TransitionRates for ThermalOhmic {
    fn emission(&self, omega: f64) -> f64 {
        self.bath.rate(omega) * (1.0 + bose_unchecked(omega, self.temperature))
    }

    fn absorption(&self, omega: f64) -> f64 {
        if self.temperature <= 0.0 {
            return 0.0;
        }
        // Γ(ω) n̄(ω) stays finite as ω → 0
        let x = omega / thermal_energy(self.temperature);
        if x < 1e-12 {
            return self.bath.gamma_ref * thermal_energy(self.temperature) / self.bath.omega_ref;
        }
        self.bath.rate(omega) / x.exp_m1()
    }

    fn zero_channel(&self) -> f64 {
        self.bath.pure_dephasing(self.temperature)
    }
}

/// Exciton dephasing reservoir at a fixed temperature.
#[derive(Clone, Copy, Debug)]
pub struct ThermalDephasing {
    pub bath: DephasingBath,
    pub temperature: f64,
}

impl TransitionRates for ThermalDephasing {
    fn emission(&self, omega: f64) -> f64 {
        dephasing_rates(&self.bath, omega, self.temperature)
    }

    fn absorption(&self, omega: f64) -> f64 {
        dephasing_rates(&self.bath, -omega, self.temperature)
    }

    fn zero_channel(&self) -> f64 {
        self.bath.zero_frequency_rate(self.temperature)
    }
}

/// Temperature-independent rate for every transition, zero upward rate.
/// Reduces the dressed dissipator to a plain Lindblad term.
#[derive(Clone, Copy, Debug)]
pub struct FlatRate(pub f64);

impl TransitionRates for FlatRate {
    fn emission(&self, _omega: f64) -> f64 {
        self.0
    }

    fn absorption(&self, _omega: f64) -> f64 {
        0.0
    }

    fn zero_channel(&self) -> f64 {
        0.0
    }
}
