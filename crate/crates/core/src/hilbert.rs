//! Finite-dimensional operator algebra on the truncated
//! exciton ⊗ photon ⊗ phonon space.
//!
//! Bare basis states are indexed as
//! `index = (s * n_ph + n) * n_vib + k`, with `s ∈ {0 = ground, 1 = excited}`
//! the exciton state, `n` the photon number and `k` the phonon number. The
//! phonon index runs fastest.

use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Fock cutoffs of the two bosonic modes. The exciton slot always has
/// dimension two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertDims {
    pub n_ph: usize,
    pub n_vib: usize,
}

/// Tensor factor of the bare space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Exciton,
    Photon,
    Phonon,
}

/// Quantum numbers of a bare product state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BareLabel {
    pub excited: bool,
    pub photons: usize,
    pub phonons: usize,
}

impl BareLabel {
    /// Excitation number `a†a + σ⁺σ⁻`.
    pub fn n_exc(&self) -> usize {
        self.photons + usize::from(self.excited)
    }
}

impl HilbertDims {
    pub fn new(n_ph: usize, n_vib: usize) -> Result<Self> {
        if n_ph < 2 || n_vib < 2 {
            return Err(Error::Dimension(format!(
                "Fock cutoffs must be at least 2 (got n_ph = {n_ph}, n_vib = {n_vib})"
            )));
        }
        Ok(Self { n_ph, n_vib })
    }

    /// Total dimension `2 · n_ph · n_vib`.
    pub fn dim(&self) -> usize {
        2 * self.n_ph * self.n_vib
    }

    pub fn slot_dim(&self, slot: Slot) -> usize {
        match slot {
            Slot::Exciton => 2,
            Slot::Photon => self.n_ph,
            Slot::Phonon => self.n_vib,
        }
    }

    pub fn index(&self, label: BareLabel) -> usize {
        (usize::from(label.excited) * self.n_ph + label.photons) * self.n_vib + label.phonons
    }

    pub fn label(&self, index: usize) -> BareLabel {
        let phonons = index % self.n_vib;
        let rest = index / self.n_vib;
        BareLabel {
            excited: rest / self.n_ph == 1,
            photons: rest % self.n_ph,
            phonons,
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = BareLabel> + '_ {
        (0..self.dim()).map(|i| self.label(i))
    }
}

/// Dense square complex matrix.
#[derive(Clone, Debug)]
pub struct Operator {
    mat: Mat<C64>,
}

impl PartialEq for Operator {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Operator {
    pub fn from_mat(mat: Mat<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::Dimension(format!(
                "operator must be square, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(Self { mat })
    }

    pub(crate) fn from_mat_unchecked(mat: Mat<C64>) -> Self {
        debug_assert_eq!(mat.nrows(), mat.ncols());
        Self { mat }
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self { mat: Mat::from_fn(dim, dim, f) }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { mat: Mat::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { mat: Mat::identity(dim, dim) }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn mat(&self) -> &Mat<C64> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<C64> {
        self.mat
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.mat[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self { mat: self.mat.adjoint().to_owned() }
    }

    pub fn matmul(&self, rhs: &Operator) -> Self {
        Self { mat: &self.mat * &rhs.mat }
    }

    pub fn add(&self, rhs: &Operator) -> Self {
        Self { mat: &self.mat + &rhs.mat }
    }

    pub fn sub(&self, rhs: &Operator) -> Self {
        Self { mat: &self.mat - &rhs.mat }
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.scale_complex(C64::new(factor, 0.0))
    }

    pub fn scale_complex(&self, factor: C64) -> Self {
        Self { mat: Mat::from_fn(self.dim(), self.dim(), |i, j| self.mat[(i, j)] * factor) }
    }

    pub fn commutator(&self, rhs: &Operator) -> Self {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.mat[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn norm_max(&self) -> f64 {
        let mut m = 0.0_f64;
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                m = m.max(self.mat[(i, j)].norm());
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        self.sub(other).norm_max()
    }

    /// `‖O − O†‖_max`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut m = 0.0_f64;
        for j in 0..n {
            for i in 0..=j {
                m = m.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).norm());
            }
        }
        m
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() < tol
    }

    /// Eigenvalues in ascending order, assuming the operator is Hermitian.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        let defect = self.hermiticity_defect();
        if defect > 1e-9 * self.norm_max().max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        self.mat
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::NoConvergence(format!("Hermitian eigensolver: {e:?}")))
    }

    /// Eigenpairs (ascending eigenvalues, eigenvectors as columns).
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, Mat<C64>)> {
        let defect = self.hermiticity_defect();
        if defect > 1e-9 * self.norm_max().max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        let evd = self
            .mat
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| Error::NoConvergence(format!("Hermitian eigensolver: {e:?}")))?;
        let values = evd.S().column_vector().iter().map(|x| x.re).collect();
        Ok((values, evd.U().to_owned()))
    }

    /// `⟨u|O|v⟩` for column vectors.
    pub fn expectation_between(&self, u: &[C64], v: &[C64]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (j, &vj) in v.iter().enumerate().take(self.dim()) {
            if vj == C64::new(0.0, 0.0) {
                continue;
            }
            let col: C64 = u.iter().enumerate().map(|(i, ui)| ui.conj() * self.mat[(i, j)]).sum();
            acc += col * vj;
        }
        acc
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim();
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (j, &vj) in v.iter().enumerate().take(n) {
            if vj == C64::new(0.0, 0.0) {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.mat[(i, j)] * vj;
            }
        }
        out
    }
}

/// Bosonic lowering operator on `n` Fock states: entry `(k−1, k) = √k`.
pub fn fock_annihilator(n: usize) -> Result<Operator> {
    if n < 2 {
        return Err(Error::Dimension(format!("Fock cutoff must be at least 2, got {n}")));
    }
    Ok(Operator::from_fn(n, |i, j| {
        if j == i + 1 {
            C64::new((j as f64).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// `diag(0, 1, …, n−1)`, exact (unlike `b†b` formed by multiplication).
pub fn fock_number(n: usize) -> Result<Operator> {
    if n < 2 {
        return Err(Error::Dimension(format!("Fock cutoff must be at least 2, got {n}")));
    }
    let values: Vec<f64> = (0..n).map(|k| k as f64).collect();
    Ok(Operator::diagonal(&values))
}

/// Two-level lowering operator `σ⁻ = |g⟩⟨e|` with `|g⟩ = 0`, `|e⟩ = 1`.
pub fn sigma_minus() -> Operator {
    Operator::from_fn(2, |i, j| {
        if i == 0 && j == 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn kron(a: &Mat<C64>, b: &Mat<C64>) -> Mat<C64> {
    let (ar, ac) = (a.nrows(), a.ncols());
    let (br, bc) = (b.nrows(), b.ncols());
    Mat::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

/// Embeds `local` at position `slot` of a tensor product with the given
/// factor dimensions, identity elsewhere.
pub fn embed_in(local: &Operator, slot: usize, factor_dims: &[usize]) -> Result<Operator> {
    if slot >= factor_dims.len() || local.dim() != factor_dims[slot] {
        return Err(Error::Dimension(format!(
            "local operator of dimension {} does not fit slot {slot} of {factor_dims:?}",
            local.dim()
        )));
    }
    let mut acc = Mat::<C64>::identity(1, 1);
    for (pos, &d) in factor_dims.iter().enumerate() {
        let factor = if pos == slot { local.mat.clone() } else { Mat::identity(d, d) };
        acc = kron(&acc, &factor);
    }
    Ok(Operator::from_mat_unchecked(acc))
}

/// Embeds a local operator into the exciton ⊗ photon ⊗ phonon space.
pub fn embed(local: &Operator, slot: Slot, dims: HilbertDims) -> Result<Operator> {
    let position = match slot {
        Slot::Exciton => 0,
        Slot::Photon => 1,
        Slot::Phonon => 2,
    };
    embed_in(local, position, &[2, dims.n_ph, dims.n_vib])
}

/// `D(λ) = exp[λ(b† − b)]` on `n` Fock states.
///
/// The generator is anti-Hermitian, so the exponential is taken through the
/// eigendecomposition of the Hermitian matrix `iλ(b† − b)`.
pub fn displacement(lambda: f64, n: usize) -> Result<Operator> {
    let b = fock_annihilator(n)?;
    let generator = b.adjoint().sub(&b).scale(lambda);
    // i·G is Hermitian: G = −i·(iG), exp(G) = V diag(exp(−iμ)) V†.
    let hermitian = generator.scale_complex(C64::new(0.0, 1.0));
    let (mu, v) = hermitian.hermitian_eigen()?;
    let phases: Vec<C64> = mu.iter().map(|&m| C64::new(0.0, -m).exp()).collect();
    let scaled = Mat::from_fn(n, n, |i, j| v[(i, j)] * phases[j]);
    Ok(Operator::from_mat_unchecked(&scaled * v.adjoint()))
}

/// `‖U†U − I‖_max`, the truncation quality of a nominally unitary matrix.
pub fn unitarity_defect(u: &Operator) -> f64 {
    u.adjoint().matmul(u).max_abs_diff(&Operator::identity(u.dim()))
}

/// Standard bare operators of the hybrid space.
#[derive(Clone, Debug)]
pub struct BareOperators {
    pub a: Operator,
    pub b: Operator,
    pub sigma_minus: Operator,
    pub dims: HilbertDims,
}

impl BareOperators {
    pub fn new(dims: HilbertDims) -> Result<Self> {
        Ok(Self {
            a: embed(&fock_annihilator(dims.n_ph)?, Slot::Photon, dims)?,
            b: embed(&fock_annihilator(dims.n_vib)?, Slot::Phonon, dims)?,
            sigma_minus: embed(&sigma_minus(), Slot::Exciton, dims)?,
            dims,
        })
    }

    pub fn sigma_plus(&self) -> Operator {
        self.sigma_minus.adjoint()
    }

    /// `σ⁺σ⁻`.
    pub fn exciton_number(&self) -> Operator {
        self.sigma_plus().matmul(&self.sigma_minus)
    }

    /// `a†a`, built exactly.
    pub fn photon_number(&self) -> Operator {
        embed(&fock_number(self.dims.n_ph).expect("validated cutoff"), Slot::Photon, self.dims)
            .expect("validated dims")
    }

    /// `b†b`, built exactly.
    pub fn phonon_number(&self) -> Operator {
        embed(&fock_number(self.dims.n_vib).expect("validated cutoff"), Slot::Phonon, self.dims)
            .expect("validated dims")
    }

    /// `N_exc = a†a + σ⁺σ⁻`.
    pub fn excitation_number(&self) -> Operator {
        self.photon_number().add(&self.exciton_number())
    }

    /// Cavity coupling operator `a + a†`.
    pub fn cavity_quadrature(&self) -> Operator {
        self.a.add(&self.a.adjoint())
    }

    /// Vibrational coupling operator `b + b†`.
    pub fn phonon_quadrature(&self) -> Operator {
        self.b.add(&self.b.adjoint())
    }

    /// `σ⁺ + σ⁻`.
    pub fn exciton_quadrature(&self) -> Operator {
        self.sigma_minus.add(&self.sigma_plus())
    }
}
