//! A parameter point of the hybrid system, with its dressed basis, the
//! transition decompositions of every coupling operator, and generator assembly.

use crate::baths::{bose_occupation, BathParams, ThermalDephasing, ThermalOhmic};
use crate::dressed::{diagonalize_truncate, transition_decomposition, DressedBasis, TransitionSet, PRUNE_THRESHOLD};
use crate::error::Result;
use crate::hilbert::{BareOperators, HilbertDims, Operator};
use crate::liouvillian::{add_dressed_dissipator, pump_dressed, rotating_frame, Drive, MasterEquationKind, Superoperator};
use crate::model::{build_system_hamiltonian, SystemParams};

/// Bare operators projected onto the retained levels.
#[derive(Clone, Debug)]
pub struct ProjectedOperators {
    pub a: Operator,
    pub b: Operator,
    pub exciton_number: Operator,
}

#[derive(Clone, Debug)]
pub struct HybridSystem {
    pub params: SystemParams,
    pub baths: BathParams,
    pub dims: HilbertDims,
    pub basis: DressedBasis,
    /// Decomposition of `a + a†`.
    pub cavity: TransitionSet,
    /// Decomposition of `b + b†`.
    pub phonon: TransitionSet,
    /// Decomposition of `σ⁺σ⁻`, the dephasing coupling.
    pub dephasing: TransitionSet,
    /// Decomposition of `σ⁺ + σ⁻`, used for the exciton population.
    pub exciton: TransitionSet,
    pub projected: ProjectedOperators,
}

impl HybridSystem {
    pub fn new(params: SystemParams, baths: BathParams, dims: HilbertDims, levels: usize) -> Result<Self> {
        params.validate()?;
        baths.validate()?;
        let h = build_system_hamiltonian(&params, dims)?;
        let basis = diagonalize_truncate(&h, dims, levels)?;
        basis.sectors()?;
        let ops = BareOperators::new(dims)?;
        let decompose = |op: &Operator, label: &str| transition_decomposition(&basis, op, label, PRUNE_THRESHOLD);
        let cavity = decompose(&ops.cavity_quadrature(), "c")?;
        let phonon = decompose(&ops.phonon_quadrature(), "m")?;
        let dephasing = decompose(&ops.exciton_number(), "x")?;
        let exciton = decompose(&ops.exciton_quadrature(), "x")?;
        let projected = ProjectedOperators {
            a: basis.project(&ops.a),
            b: basis.project(&ops.b),
            exciton_number: basis.project(&ops.exciton_number()),
        };
        Ok(Self { params, baths, dims, basis, cavity, phonon, dephasing, exciton, projected })
    }

    pub fn levels(&self) -> usize {
        self.basis.levels()
    }

    /// The drive stored in the parameters.
    pub fn drive(&self) -> Drive {
        Drive { omega_l: self.params.omega_l, omega_pump: self.params.omega_pump }
    }

    /// Dissipative part of the generator. Rates are lab-frame quantities, so
    /// the result can be reused across laser frequencies and pump strengths.
    pub fn dissipator(&self, kind: MasterEquationKind) -> Result<Superoperator> {
        let n = self.levels();
        let t = self.baths.temperature;
        let mut s = Superoperator::zeros(n);
        match kind {
            MasterEquationKind::Gme => {
                let cavity = ThermalOhmic { bath: self.baths.cavity_bath(self.params.omega_c), temperature: t };
                let vib = ThermalOhmic { bath: self.baths.vibrational_bath(self.params.omega_m), temperature: t };
                let deph = ThermalDephasing { bath: self.baths.dephasing_bath(), temperature: t };
                add_dressed_dissipator(&mut s, &self.cavity, &cavity);
                add_dressed_dissipator(&mut s, &self.phonon, &vib);
                add_dressed_dissipator(&mut s, &self.dephasing, &deph);
            }
            MasterEquationKind::Sme => {
                let nbar = bose_occupation(self.params.omega_m, t)?;
                let gm = self.baths.gamma_m;
                let p = &self.projected;
                s.add_lindblad(0.5 * self.baths.kappa, &p.a);
                s.add_lindblad(0.5 * self.baths.gamma_phi_at_temperature(), &p.exciton_number);
                s.add_lindblad(0.5 * gm * (1.0 + nbar), &p.b);
                s.add_lindblad(0.5 * gm * nbar, &p.b.adjoint());
            }
        }
        Ok(s)
    }

    /// Laser-frame dressed Hamiltonian plus the dressed pump.
    pub fn coherent_hamiltonian(&self, drive: Drive) -> Result<Operator> {
        Ok(rotating_frame(&self.basis, drive.omega_l)?.add(&pump_dressed(drive.omega_pump, &self.cavity)?))
    }

    /// Full generator from a precomputed dissipator.
    pub fn liouvillian_with(&self, dissipator: &Superoperator, drive: Drive) -> Result<Superoperator> {
        if dissipator.dim() != self.levels() {
            return Err(crate::Error::Dimension(format!(
                "dissipator acts on {} levels, system retains {}",
                dissipator.dim(),
                self.levels()
            )));
        }
        let mut l = dissipator.clone();
        l.add_hamiltonian(&self.coherent_hamiltonian(drive)?);
        Ok(l)
    }

    /// Full generator at the stored drive.
    pub fn liouvillian(&self, kind: MasterEquationKind) -> Result<Superoperator> {
        self.liouvillian_with(&self.dissipator(kind)?, self.drive())
    }
}
