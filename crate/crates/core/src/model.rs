//! System Hamiltonians, the cavity pump, and polaron-frame reference forms.

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    displacement, embed_in, fock_annihilator, fock_number, BareOperators, HilbertDims, Operator,
};
use crate::C64;

/// Above this ratio the Jaynes-Cummings (rotating-wave) coupling is suspect.
pub const JC_COUPLING_WARN_RATIO: f64 = 0.2;

/// Parameters of the resonant cavity-exciton-vibration Hamiltonian. Energies in meV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
    pub omega_c: f64,
    pub omega_x: f64,
    pub omega_m: f64,
    pub g: f64,
    /// Dimensionless exciton-phonon displacement.
    pub d0: f64,
    /// Pump Rabi amplitude.
    pub omega_pump: f64,
    /// Laser frequency.
    pub omega_l: f64,
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("omega_c", self.omega_c),
            ("omega_x", self.omega_x),
            ("omega_m", self.omega_m),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("g", self.g), ("d0", self.d0), ("omega_pump", self.omega_pump)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be non-negative, got {v}")));
            }
        }
        if !self.omega_l.is_finite() || self.omega_l < 0.0 {
            return Err(Error::Config(format!("omega_l must be non-negative, got {}", self.omega_l)));
        }
        if self.g / self.omega_c >= JC_COUPLING_WARN_RATIO {
            log::warn!(
                "g/omega_c = {:.3} exceeds {JC_COUPLING_WARN_RATIO}; counter-rotating cavity-exciton terms are not modeled",
                self.g / self.omega_c
            );
        }
        Ok(())
    }

    /// Polaron shift `d0² ω_m`.
    pub fn polaron_shift(&self) -> f64 {
        polaron_shift(self.d0, self.omega_m)
    }
}

/// Sign of the optomechanical interaction term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingSign {
    /// `− g_om a†a (b† + b)`.
    #[default]
    Minus,
    /// `+ g_om a†a (b† + b)`.
    Plus,
}

impl CouplingSign {
    fn factor(self) -> f64 {
        match self {
            CouplingSign::Minus => -1.0,
            CouplingSign::Plus => 1.0,
        }
    }
}

/// Off-resonant (bare optomechanical) parameters. Energies in meV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptomechParams {
    pub omega_c: f64,
    pub omega_m: f64,
    pub g_om: f64,
    #[serde(default)]
    pub sign: CouplingSign,
}

impl OptomechParams {
    pub fn new(omega_c: f64, omega_m: f64, g_om: f64) -> Self {
        if omega_m / omega_c > 0.2 {
            log::warn!("omega_m/omega_c = {:.3}: dropped aa and a†a† terms may matter", omega_m / omega_c);
        }
        Self { omega_c, omega_m, g_om, sign: CouplingSign::Minus }
    }

    pub fn with_sign(mut self, sign: CouplingSign) -> Self {
        self.sign = sign;
        self
    }

    /// `Δ_P = g_om² / ω_m`.
    pub fn polaron_shift(&self) -> f64 {
        self.g_om * self.g_om / self.omega_m
    }
}

/// Photon and phonon lowering and number operators on the two-mode
/// (photon ⊗ phonon) space.
fn two_mode_ops(dims: HilbertDims) -> Result<(Operator, Operator, Operator, Operator)> {
    let factors = [dims.n_ph, dims.n_vib];
    let a = embed_in(&fock_annihilator(dims.n_ph)?, 0, &factors)?;
    let b = embed_in(&fock_annihilator(dims.n_vib)?, 1, &factors)?;
    let na = embed_in(&fock_number(dims.n_ph)?, 0, &factors)?;
    let nb = embed_in(&fock_number(dims.n_vib)?, 1, &factors)?;
    Ok((a, b, na, nb))
}

/// Resonant system Hamiltonian (lab frame):
/// `ω_c a†a + ω_x σ⁺σ⁻ + ω_m b†b + d0 ω_m σ⁺σ⁻(b† + b) + g(σ⁺a + a†σ⁻)`.
pub fn build_system_hamiltonian(p: &SystemParams, dims: HilbertDims) -> Result<Operator> {
    let ops = BareOperators::new(dims)?;
    let sp = ops.sigma_plus();
    let nx = ops.exciton_number();
    let jc = sp.matmul(&ops.a);
    let h = ops
        .photon_number()
        .scale(p.omega_c)
        .add(&nx.scale(p.omega_x))
        .add(&ops.phonon_number().scale(p.omega_m))
        .add(&nx.matmul(&ops.phonon_quadrature()).scale(p.d0 * p.omega_m))
        .add(&jc.add(&jc.adjoint()).scale(p.g));
    Ok(h)
}

/// Bare optomechanical Hamiltonian on photon ⊗ phonon (dimension `n_ph · n_vib`):
/// `ω_c a†a + ω_m b†b ∓ g_om a†a (b† + b)`.
pub fn build_optomech_hamiltonian(p: &OptomechParams, dims: HilbertDims) -> Result<Operator> {
    let (_, b, na, nb) = two_mode_ops(dims)?;
    let h = na
        .scale(p.omega_c)
        .add(&nb.scale(p.omega_m))
        .add(&na.matmul(&b.add(&b.adjoint())).scale(p.sign.factor() * p.g_om));
    Ok(h)
}

/// Closed-form eigenenergy `n ω_c + k ω_m − n² g_om²/ω_m`.
pub fn analytic_optomech_eigs(n: usize, k: usize, p: &OptomechParams) -> f64 {
    let n = n as f64;
    n * p.omega_c + k as f64 * p.omega_m - n * n * p.polaron_shift()
}

/// Closed-form eigenvector on photon ⊗ phonon: the phonon Fock state `k`
/// displaced by the photon-number-dependent amplitude.
///
/// For the `Plus` sign this is `D†(g_om n/ω_m)|n,k⟩`; for the default `Minus`
/// sign the displacement direction flips, `D(g_om n/ω_m)|n,k⟩`.
pub fn analytic_optomech_state(
    n: usize,
    k: usize,
    p: &OptomechParams,
    dims: HilbertDims,
) -> Result<Vec<C64>> {
    if n >= dims.n_ph || k >= dims.n_vib {
        return Err(Error::Dimension(format!(
            "state |{n},{k}⟩ outside cutoffs ({}, {})",
            dims.n_ph, dims.n_vib
        )));
    }
    let lambda = -p.sign.factor() * p.g_om * n as f64 / p.omega_m;
    let d = displacement(lambda, dims.n_vib)?;
    let mut state = vec![C64::new(0.0, 0.0); dims.n_ph * dims.n_vib];
    for q in 0..dims.n_vib {
        state[n * dims.n_vib + q] = d.get(q, k);
    }
    Ok(state)
}

/// Polaron shift `Δ_P = d0² ω_m`.
pub fn polaron_shift(d0: f64, omega_m: f64) -> f64 {
    d0 * d0 * omega_m
}

/// Off-resonant Hamiltonian in the polaron frame, on photon ⊗ phonon:
/// `(ω_c − Δ_P) a†a + ω_m b†b − Δ_P a†a†aa`.
pub fn polaron_transform_offres(p: &OptomechParams, dims: HilbertDims) -> Result<Operator> {
    let (a, _, na, nb) = two_mode_ops(dims)?;
    let ad = a.adjoint();
    let shift = p.polaron_shift();
    let kerr = ad.matmul(&ad).matmul(&a).matmul(&a);
    Ok(na
        .scale(p.omega_c - shift)
        .add(&nb.scale(p.omega_m))
        .sub(&kerr.scale(shift)))
}

/// Resonant Hamiltonian in the polaron frame:
/// `ω_c a†a + ω_m b†b + (ω_x − Δ_P) σ⁺σ⁻ + g(σ⁺ a X + a† X† σ⁻)` with
/// `X = exp[d0 (b − b†)]`.
pub fn polaron_transform_onres(p: &SystemParams, dims: HilbertDims) -> Result<Operator> {
    let ops = BareOperators::new(dims)?;
    let x_local = displacement(-p.d0, dims.n_vib)?;
    let x = crate::hilbert::embed(&x_local, crate::hilbert::Slot::Phonon, dims)?;
    let coupling = ops.sigma_plus().matmul(&ops.a).matmul(&x);
    Ok(ops
        .photon_number()
        .scale(p.omega_c)
        .add(&ops.phonon_number().scale(p.omega_m))
        .add(&ops.exciton_number().scale(p.omega_x - p.polaron_shift()))
        .add(&coupling.add(&coupling.adjoint()).scale(p.g)))
}

/// Bare coherent cavity pump `Ω (a + a†)` on the full space.
pub fn pump_hamiltonian_bare(omega_pump: f64, dims: HilbertDims) -> Result<Operator> {
    if omega_pump < 0.0 {
        return Err(Error::Domain(format!("pump amplitude must be non-negative, got {omega_pump}")));
    }
    Ok(BareOperators::new(dims)?.cavity_quadrature().scale(omega_pump))
}

/// Eigenvalues of `h` restricted to the listed basis indices (an exact
/// symmetry block).
pub fn block_eigenvalues(h: &Operator, indices: &[usize]) -> Result<Vec<f64>> {
    let block = Mat::from_fn(indices.len(), indices.len(), |i, j| h.get(indices[i], indices[j]));
    Operator::from_mat(block)?.hermitian_eigenvalues()
}
