//! Superoperator assembly: Lindblad and dressed-state dissipators, the
//! rotating-frame Hamiltonian, the dressed pump, and the full generator.
//!
//! Density matrices are vectorized by column stacking, `vec(ρ)[i + j·n] = ρ_ij`,
//! so `vec(AρB) = (Bᵀ ⊗ A) vec(ρ)`.

use std::io::{self, Write};

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::baths::TransitionRates;
use crate::dressed::{DressedBasis, TransitionSet};
use crate::error::{Error, Result};
use crate::hilbert::Operator;
use crate::linalg::{matvec, unvectorize, vectorize};
use crate::system::HybridSystem;
use crate::C64;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Which master equation to assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MasterEquationKind {
    /// Lindblad form with bare operators.
    Sme,
    /// Dressed-state, non-secular form with frequency-resolved rates.
    Gme,
}

impl MasterEquationKind {
    pub fn label(self) -> &'static str {
        match self {
            MasterEquationKind::Sme => "sme",
            MasterEquationKind::Gme => "gme",
        }
    }
}

/// Dense generator acting on column-stacked `n × n` density matrices.
#[derive(Clone, Debug)]
pub struct Superoperator {
    n: usize,
    mat: Mat<C64>,
}

impl Superoperator {
    pub fn zeros(n: usize) -> Self {
        Self { n, mat: Mat::zeros(n * n, n * n) }
    }

    /// Wraps an `n² × n²` matrix.
    pub fn from_mat(n: usize, mat: Mat<C64>) -> Result<Self> {
        if mat.nrows() != n * n || mat.ncols() != n * n {
            return Err(Error::Dimension(format!(
                "superoperator of {}x{} does not act on {n}x{n} matrices",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(Self { n, mat })
    }

    /// Dimension of the underlying Hilbert space.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mat(&self) -> &Mat<C64> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<C64> {
        self.mat
    }

    fn check(&self, op: &Operator) {
        assert_eq!(op.dim(), self.n, "operator dimension does not match superoperator");
    }

    pub fn apply(&self, rho: &Operator) -> Operator {
        self.check(rho);
        unvectorize(&matvec(&self.mat, &vectorize(rho)), self.n)
    }

    /// Adds `ρ ↦ c·A ρ B`.
    pub fn add_sandwich(&mut self, c: C64, a: &Operator, b: &Operator) {
        self.check(a);
        self.check(b);
        let n = self.n;
        let (am, bm) = (a.mat(), b.mat());
        let nonzero_cols: Vec<usize> = (0..n).filter(|&k| am.col(k).iter().any(|z| *z != ZERO)).collect();
        for l in 0..n {
            for j in 0..n {
                let blj = bm[(l, j)] * c;
                if blj == ZERO {
                    continue;
                }
                for &k in &nonzero_cols {
                    let src = am.col_as_slice(k);
                    let dst = &mut self.mat.col_as_slice_mut(k + l * n)[j * n..(j + 1) * n];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d += *s * blj;
                    }
                }
            }
        }
    }

    /// Adds `ρ ↦ c·A ρ`.
    pub fn add_left(&mut self, c: C64, a: &Operator) {
        self.check(a);
        let n = self.n;
        for j in 0..n {
            for k in 0..n {
                let col = self.mat.col_as_slice_mut(k + j * n);
                for i in 0..n {
                    col[i + j * n] += c * a.get(i, k);
                }
            }
        }
    }

    /// Adds `ρ ↦ c·ρ B`.
    pub fn add_right(&mut self, c: C64, b: &Operator) {
        self.check(b);
        let n = self.n;
        for l in 0..n {
            for j in 0..n {
                let blj = c * b.get(l, j);
                if blj == ZERO {
                    continue;
                }
                for i in 0..n {
                    self.mat[(i + j * n, i + l * n)] += blj;
                }
            }
        }
    }

    /// Adds `ρ ↦ −i[H, ρ]`.
    pub fn add_hamiltonian(&mut self, h: &Operator) {
        self.add_left(C64::new(0.0, -1.0), h);
        self.add_right(C64::new(0.0, 1.0), h);
    }

    /// Adds `ρ ↦ γ·D[O]ρ`.
    pub fn add_lindblad(&mut self, gamma: f64, op: &Operator) {
        if gamma == 0.0 {
            return;
        }
        let od_o = op.adjoint().matmul(op);
        self.add_sandwich(C64::new(gamma, 0.0), op, &op.adjoint());
        self.add_left(C64::new(-0.5 * gamma, 0.0), &od_o);
        self.add_right(C64::new(-0.5 * gamma, 0.0), &od_o);
    }

    pub fn add_assign(&mut self, other: &Superoperator) {
        assert_eq!(self.n, other.n);
        self.mat += &other.mat;
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.norm_max()
    }

    /// Writes `row,col,re,im` for every nonzero entry (indices into the
    /// column-stacked vectorization).
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# column-stacked vectorization, n = {}", self.n)?;
        writeln!(w, "row,col,re,im")?;
        for c in 0..self.mat.ncols() {
            for (r, z) in self.mat.col_as_slice(c).iter().enumerate() {
                if *z != ZERO {
                    writeln!(w, "{r},{c},{:.16e},{:.16e}", z.re, z.im)?;
                }
            }
        }
        Ok(())
    }
}

/// `D[O]` as a standalone superoperator.
pub fn lindblad_dissipator(op: &Operator) -> Superoperator {
    let mut s = Superoperator::zeros(op.dim());
    s.add_lindblad(1.0, op);
    s
}

/// Whether a factor is drawn from the lowering (`x⁺`) or raising (`x⁻`) part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Plus,
    Minus,
}

/// Rate weighting applied per transition inside a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Unit,
    /// `Γ(ω)(1 + n̄(ω))`.
    Emission,
    /// `Γ(ω) n̄(ω)`.
    Absorption,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// `F₁ ρ F₂`.
    Sandwich,
    /// `F₁ F₂ ρ`.
    Left,
    /// `ρ F₁ F₂`.
    Right,
}

/// One term of the dressed dissipator, with overall coefficient `sign/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DissipatorTerm {
    pub sign: i8,
    pub placement: Placement,
    pub factors: [(Factor, Weight); 2],
}

impl DissipatorTerm {
    /// True for the `x⁺x⁺` or `x⁻x⁻` combinations that oscillate at `±(ω+ω′)`.
    pub fn is_counter_rotating(&self) -> bool {
        self.factors[0].0 == self.factors[1].0
    }
}

/// Term list of the non-secular dressed dissipator for one reservoir, summed
/// over transition pairs `(ω, ω′)`.
pub fn gme_terms() -> Vec<DissipatorTerm> {
    use Factor::{Minus, Plus};
    use Placement::{Left, Right, Sandwich};
    use Weight::{Absorption, Emission, Unit};
    let t = |sign, placement, f1, f2| DissipatorTerm { sign, placement, factors: [f1, f2] };
    vec![
        t(1, Sandwich, (Plus, Emission), (Minus, Unit)),
        t(-1, Left, (Minus, Unit), (Plus, Emission)),
        t(1, Sandwich, (Plus, Unit), (Minus, Emission)),
        t(-1, Right, (Minus, Emission), (Plus, Unit)),
        t(1, Sandwich, (Minus, Unit), (Plus, Absorption)),
        t(-1, Right, (Plus, Absorption), (Minus, Unit)),
        t(1, Sandwich, (Minus, Absorption), (Plus, Unit)),
        t(-1, Left, (Plus, Unit), (Minus, Absorption)),
    ]
}

/// Dressed-state dissipator of one reservoir coupled through the operator
/// decomposed in `set`.
///
/// Transitions are grouped by excitation-number change. Products of two
/// groups carry a factor `e^{±i Δ ω_L t}` in the laser frame and are dropped
/// together with the `±(ω+ω′)` terms.
pub fn dressed_dissipator(set: &TransitionSet, rates: &dyn TransitionRates) -> Superoperator {
    let mut s = Superoperator::zeros(set.levels);
    add_dressed_dissipator(&mut s, set, rates);
    s
}

/// In-place form of [`dressed_dissipator`].
pub fn add_dressed_dissipator(s: &mut Superoperator, set: &TransitionSet, rates: &dyn TransitionRates) {
    assert_eq!(s.dim(), set.levels);
    let terms = gme_terms();
    debug_assert!(terms.iter().all(|t| !t.is_counter_rotating()));
    for class in set.delta_n_classes() {
        let in_class = |t: &crate::dressed::Transition| t.delta_n == class;
        let plus = [
            set.weighted_plus(|_| 1.0, in_class),
            set.weighted_plus(|w| rates.emission(w), in_class),
            set.weighted_plus(|w| rates.absorption(w), in_class),
        ];
        let minus = [plus[0].adjoint(), plus[1].adjoint(), plus[2].adjoint()];
        let pick = |(f, w): (Factor, Weight)| -> &Operator {
            let idx = match w {
                Weight::Unit => 0,
                Weight::Emission => 1,
                Weight::Absorption => 2,
            };
            match f {
                Factor::Plus => &plus[idx],
                Factor::Minus => &minus[idx],
            }
        };
        for term in &terms {
            let c = C64::new(0.5 * term.sign as f64, 0.0);
            let (f1, f2) = (pick(term.factors[0]), pick(term.factors[1]));
            match term.placement {
                Placement::Sandwich => s.add_sandwich(c, f1, f2),
                Placement::Left => s.add_left(c, &f1.matmul(f2)),
                Placement::Right => s.add_right(c, &f1.matmul(f2)),
            }
        }
    }
    // Γ'·½[2x⁰ρx⁰ − x⁰x⁰ρ − ρx⁰x⁰] = Γ'·D[x⁰] for Hermitian x⁰
    s.add_lindblad(rates.zero_channel(), &set.x_zero());
}

/// Alias of [`dressed_dissipator`] for one of the Ohmic reservoirs.
pub fn gme_dissipator(set: &TransitionSet, rates: &dyn TransitionRates) -> Superoperator {
    dressed_dissipator(set, rates)
}

/// Exciton pure-dephasing dissipator built on the `σ⁺σ⁻` decomposition.
pub fn dephasing_dissipator(set: &TransitionSet, rates: &dyn TransitionRates) -> Superoperator {
    dressed_dissipator(set, rates)
}

/// `diag(ω_j − ω_L n_exc,j)`, the dressed Hamiltonian in the laser frame.
pub fn rotating_frame(basis: &DressedBasis, omega_l: f64) -> Result<Operator> {
    let sectors = basis.sectors()?;
    let diag: Vec<f64> = basis
        .energies
        .iter()
        .zip(&sectors)
        .map(|(e, &n)| e - omega_l * n as f64)
        .collect();
    Ok(Operator::diagonal(&diag))
}

/// `Ω(x_c⁺ + x_c⁻)`.
pub fn pump_dressed(omega_pump: f64, cavity: &TransitionSet) -> Result<Operator> {
    if !(omega_pump >= 0.0) {
        return Err(Error::Domain(format!("pump amplitude must be non-negative, got {omega_pump}")));
    }
    let plus = cavity.x_plus();
    Ok(plus.add(&plus.adjoint()).scale(omega_pump))
}

/// Laser frequency and pump amplitude of one operating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Drive {
    pub omega_l: f64,
    pub omega_pump: f64,
}

/// `−i[H̃ + H_pump, ·]` plus the dissipators of `kind`, in the retained
/// dressed subspace.
pub fn full_liouvillian(kind: MasterEquationKind, system: &HybridSystem, drive: Drive) -> Result<Superoperator> {
    let dissipator = system.dissipator(kind)?;
    system.liouvillian_with(&dissipator, drive)
}
