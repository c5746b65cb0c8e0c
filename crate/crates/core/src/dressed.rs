//! Dressed (eigen) basis of the system Hamiltonian and the decomposition of
//! coupling operators into dressed transition operators.
//!
//! For an operator `O` and retained eigenstates `|j⟩` (ascending energy),
//! `x⁺ = Σ_{j<k} ⟨j|O|k⟩ |j⟩⟨k|` collects the energy-lowering
//! (positive-frequency) parts, `x⁻ = (x⁺)†`, and `x⁰` holds the diagonal
//! elements plus any pair closer in energy than the degeneracy threshold.

use std::cmp::Ordering;

use faer::Mat;

use crate::error::{Error, Result};
use crate::hilbert::{HilbertDims, Operator};
use crate::C64;

/// Pairs closer than this (meV) are routed to the zero-frequency channel.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;
/// Matrix elements below this fraction of the largest one are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-12;
/// Tolerance on the integrality of per-state excitation numbers.
pub const N_EXC_TOLERANCE: f64 = 1e-8;

/// Truncated eigenbasis of a Hamiltonian that conserves the excitation number.
#[derive(Clone, Debug)]
pub struct DressedBasis {
    /// Ascending eigenvalues (meV).
    pub energies: Vec<f64>,
    /// Eigenvectors in the bare product basis, one column per retained level.
    pub vectors: Mat<C64>,
    /// `⟨j|a†a + σ⁺σ⁻|j⟩`.
    pub n_exc: Vec<f64>,
}

impl DressedBasis {
    pub fn levels(&self) -> usize {
        self.energies.len()
    }

    pub fn bare_dim(&self) -> usize {
        self.vectors.nrows()
    }

    /// Excitation numbers rounded to integers; fails if any is not integral.
    pub fn sectors(&self) -> Result<Vec<usize>> {
        self.n_exc
            .iter()
            .enumerate()
            .map(|(j, &n)| {
                let r = n.round();
                if (n - r).abs() > N_EXC_TOLERANCE || r < 0.0 {
                    Err(Error::Config(format!(
                        "dressed level {j} has non-integer excitation number {n}"
                    )))
                } else {
                    Ok(r as usize)
                }
            })
            .collect()
    }

    /// `V† O V`, the operator restricted to the retained levels.
    pub fn project(&self, op: &Operator) -> Operator {
        let v = &self.vectors;
        Operator::from_mat_unchecked(v.adjoint() * (op.mat() * v))
    }

    /// Bare-basis vector of dressed level `j`.
    pub fn state(&self, j: usize) -> Vec<C64> {
        self.vectors.col(j).iter().copied().collect()
    }

    /// Indices of retained levels with the given excitation number, ascending.
    pub fn levels_in_sector(&self, n_exc: usize) -> Vec<usize> {
        self.n_exc
            .iter()
            .enumerate()
            .filter(|(_, &n)| (n - n_exc as f64).abs() < 0.5)
            .map(|(j, _)| j)
            .collect()
    }
}

/// Diagonalizes `h` block by block over the excitation-number sectors of
/// `dims`, merges the blocks, and keeps the lowest `levels` states. Ties in
/// energy are ordered by ascending excitation number.
pub fn diagonalize_truncate(h: &Operator, dims: HilbertDims, levels: usize) -> Result<DressedBasis> {
    let dim = h.dim();
    if dim != dims.dim() {
        return Err(Error::Dimension(format!(
            "Hamiltonian dimension {dim} does not match the bare space {}",
            dims.dim()
        )));
    }
    if levels == 0 || levels > dim {
        return Err(Error::Dimension(format!("cannot retain {levels} of {dim} levels")));
    }
    let defect = h.hermiticity_defect();
    if defect > 1e-10 * h.norm_max().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }

    let max_sector = dims.labels().map(|l| l.n_exc()).max().unwrap_or(0);
    let mut found: Vec<(f64, usize, Vec<C64>)> = Vec::with_capacity(dim);
    for sector in 0..=max_sector {
        let idx: Vec<usize> = dims
            .labels()
            .enumerate()
            .filter(|(_, l)| l.n_exc() == sector)
            .map(|(i, _)| i)
            .collect();
        if idx.is_empty() {
            continue;
        }
        let block = Operator::from_fn(idx.len(), |i, j| h.get(idx[i], idx[j]));
        let (values, vecs) = block.hermitian_eigen()?;
        for (col, &e) in values.iter().enumerate() {
            let mut full = vec![C64::new(0.0, 0.0); dim];
            for (row, &bare) in idx.iter().enumerate() {
                full[bare] = vecs[(row, col)];
            }
            found.push((e, sector, full));
        }
    }
    found.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal).then(a.1.cmp(&b.1)));
    found.truncate(levels);

    let vectors = Mat::from_fn(dim, levels, |i, j| found[j].2[i]);
    let n_exc = found
        .iter()
        .map(|(_, _, v)| {
            v.iter()
                .enumerate()
                .map(|(i, z)| z.norm_sqr() * dims.label(i).n_exc() as f64)
                .sum()
        })
        .collect();
    Ok(DressedBasis {
        energies: found.iter().map(|f| f.0).collect(),
        vectors,
        n_exc,
    })
}

/// One dressed transition `⟨lower|O|upper⟩ |lower⟩⟨upper|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transition {
    pub lower: usize,
    pub upper: usize,
    /// `ω_upper − ω_lower > 0` (meV).
    pub omega: f64,
    pub element: C64,
    /// Excitation-number change `n_exc(upper) − n_exc(lower)` carried by the
    /// lowering operator.
    pub delta_n: i32,
}

/// Dressed decomposition of one coupling operator.
#[derive(Clone, Debug)]
pub struct TransitionSet {
    pub label: String,
    pub levels: usize,
    pub transitions: Vec<Transition>,
    /// Zero-frequency entries `(row, col, element)`: the diagonal and
    /// degenerate pairs.
    pub zero_channel: Vec<(usize, usize, C64)>,
}

impl TransitionSet {
    /// Distinct excitation-number changes present among the transitions.
    pub fn delta_n_classes(&self) -> Vec<i32> {
        let mut classes: Vec<i32> = self.transitions.iter().map(|t| t.delta_n).collect();
        classes.sort_unstable();
        classes.dedup();
        classes
    }

    /// `Σ w(ω) ⟨j|O|k⟩ |j⟩⟨k|` over the transitions accepted by `filter`.
    pub fn weighted_plus(
        &self,
        weight: impl Fn(f64) -> f64,
        filter: impl Fn(&Transition) -> bool,
    ) -> Operator {
        let mut m = Mat::<C64>::zeros(self.levels, self.levels);
        for t in self.transitions.iter().filter(|t| filter(t)) {
            m[(t.lower, t.upper)] += t.element * weight(t.omega);
        }
        Operator::from_mat_unchecked(m)
    }

    /// `x⁺ = Σ_ω x⁺(ω)`.
    pub fn x_plus(&self) -> Operator {
        self.weighted_plus(|_| 1.0, |_| true)
    }

    /// `x⁻ = (x⁺)†`.
    pub fn x_minus(&self) -> Operator {
        self.x_plus().adjoint()
    }

    /// Part of `x⁺` that lowers the excitation number by `delta_n`.
    pub fn x_plus_class(&self, delta_n: i32) -> Operator {
        self.weighted_plus(|_| 1.0, |t| t.delta_n == delta_n)
    }

    pub fn x_zero(&self) -> Operator {
        let mut m = Mat::<C64>::zeros(self.levels, self.levels);
        for &(i, j, z) in &self.zero_channel {
            m[(i, j)] += z;
        }
        Operator::from_mat_unchecked(m)
    }

    /// `x⁺ + x⁻ + x⁰`.
    pub fn reconstruct(&self) -> Operator {
        let plus = self.x_plus();
        plus.add(&plus.adjoint()).add(&self.x_zero())
    }
}

/// Splits the projection of `op` (bare basis) onto the retained levels into
/// dressed transitions. `threshold` is relative to the largest element.
pub fn transition_decomposition(
    basis: &DressedBasis,
    op: &Operator,
    label: &str,
    threshold: f64,
) -> Result<TransitionSet> {
    if op.dim() != basis.bare_dim() {
        return Err(Error::Dimension(format!(
            "operator dimension {} does not match the bare space {}",
            op.dim(),
            basis.bare_dim()
        )));
    }
    let projected = basis.project(op);
    let cutoff = threshold * projected.norm_max();
    let n = basis.levels();
    let mut transitions = Vec::new();
    let mut zero_channel = Vec::new();
    for j in 0..n {
        let d = projected.get(j, j);
        if d.norm() > cutoff {
            zero_channel.push((j, j, d));
        }
        for k in (j + 1)..n {
            let element = projected.get(j, k);
            if element.norm() <= cutoff {
                continue;
            }
            let omega = basis.energies[k] - basis.energies[j];
            if omega.abs() < DEGENERACY_THRESHOLD {
                zero_channel.push((j, k, element));
                zero_channel.push((k, j, projected.get(k, j)));
            } else {
                transitions.push(Transition {
                    lower: j,
                    upper: k,
                    omega,
                    element,
                    delta_n: (basis.n_exc[k] - basis.n_exc[j]).round() as i32,
                });
            }
        }
    }
    Ok(TransitionSet { label: label.to_string(), levels: n, transitions, zero_channel })
}

/// Total population of the `guard` highest retained levels.
pub fn truncation_leak_check(rho: &Operator, guard: usize) -> f64 {
    let n = rho.dim();
    let start = n.saturating_sub(guard);
    (start..n).map(|j| rho.get(j, j).re).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::BareOperators;
    use crate::model::{build_system_hamiltonian, SystemParams};

    fn params(g: f64, d0: f64) -> SystemParams {
        SystemParams {
            omega_c: 1700.0,
            omega_x: 1700.0,
            omega_m: 20.0,
            g,
            d0,
            omega_pump: 0.0,
            omega_l: 1700.0,
        }
    }

    #[test]
    fn decoupled_basis_is_bare() {
        let dims = HilbertDims::new(3, 4).unwrap();
        let p = SystemParams { omega_x: 1690.0, ..params(0.0, 0.0) };
        let h = build_system_hamiltonian(&p, dims).unwrap();
        let basis = diagonalize_truncate(&h, dims, dims.dim()).unwrap();
        let mut expected: Vec<f64> = dims
            .labels()
            .map(|l| l.photons as f64 * 1700.0 + if l.excited { 1690.0 } else { 0.0 } + l.phonons as f64 * 20.0)
            .collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (e, x) in basis.energies.iter().zip(&expected) {
            assert!((e - x).abs() < 1e-10);
        }
        for j in 0..basis.levels() {
            let v = basis.state(j);
            let weight: f64 = v.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
            assert!((weight - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn jc_doublet_in_dressed_basis() {
        let dims = HilbertDims::new(3, 3).unwrap();
        let h = build_system_hamiltonian(&params(100.0, 0.0), dims).unwrap();
        let basis = diagonalize_truncate(&h, dims, 12).unwrap();
        let one = basis.levels_in_sector(1);
        assert!((basis.energies[one[0]] - 1600.0).abs() < 1e-10);
        assert!(one.iter().any(|&j| (basis.energies[j] - 1800.0).abs() < 1e-10));
        assert_eq!(basis.sectors().unwrap()[0], 0);
    }

    #[test]
    fn lower_polariton_phonon_ladder() {
        let dims = HilbertDims::new(3, 20).unwrap();
        let h = build_system_hamiltonian(&params(100.0, 0.2), dims).unwrap();
        let basis = diagonalize_truncate(&h, dims, 60).unwrap();
        let one = basis.levels_in_sector(1);
        let e0 = basis.energies[one[0]];
        assert!((e0 - (1700.0 - 100.0)).abs() < 0.03 * 100.0);
        assert!((basis.energies[one[1]] - e0 - 20.0).abs() < 0.02 * 20.0);
    }

    #[test]
    fn non_hermitian_rejected() {
        let dims = HilbertDims::new(2, 2).unwrap();
        let mut h = Operator::zeros(8).into_mat();
        h[(0, 1)] = C64::new(1.0, 0.0);
        let h = Operator::from_mat(h).unwrap();
        assert!(matches!(diagonalize_truncate(&h, dims, 4), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn identity_decomposes_to_zero_channel() {
        let dims = HilbertDims::new(3, 4).unwrap();
        let h = build_system_hamiltonian(&params(30.0, 0.3), dims).unwrap();
        let basis = diagonalize_truncate(&h, dims, 20).unwrap();
        let set = transition_decomposition(&basis, &Operator::identity(24), "id", PRUNE_THRESHOLD).unwrap();
        assert!(set.transitions.is_empty());
        assert_eq!(set.zero_channel.len(), 20);
        for &(i, j, z) in &set.zero_channel {
            assert_eq!(i, j);
            assert!((z.re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bare_ladder_transitions() {
        let dims = HilbertDims::new(3, 3).unwrap();
        let p = SystemParams { omega_x: 1650.0, ..params(0.0, 0.0) };
        let h = build_system_hamiltonian(&p, dims).unwrap();
        let basis = diagonalize_truncate(&h, dims, dims.dim()).unwrap();
        let ops = BareOperators::new(dims).unwrap();
        let set = transition_decomposition(&basis, &ops.cavity_quadrature(), "c", PRUNE_THRESHOLD).unwrap();
        assert!(!set.transitions.is_empty());
        for t in &set.transitions {
            assert!((t.omega - 1700.0).abs() < 1e-9);
            assert_eq!(t.delta_n, 1);
            let upper = basis.state(t.upper);
            let bare = upper.iter().position(|z| z.norm() > 0.5).unwrap();
            let n = dims.label(bare).photons as f64;
            assert!((t.element.norm() - n.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn reconstruction_is_complete() {
        let dims = HilbertDims::new(3, 6).unwrap();
        let h = build_system_hamiltonian(&SystemParams { omega_x: 1712.0, ..params(41.0, 0.45) }, dims).unwrap();
        let basis = diagonalize_truncate(&h, dims, 30).unwrap();
        let ops = BareOperators::new(dims).unwrap();
        for op in [ops.cavity_quadrature(), ops.phonon_quadrature(), ops.exciton_number()] {
            let set = transition_decomposition(&basis, &op, "o", 0.0).unwrap();
            let residual = set.reconstruct().max_abs_diff(&basis.project(&op));
            assert!(residual < 1e-10, "{residual}");
            let xm = set.x_minus();
            assert_eq!(xm, set.x_plus().adjoint());
        }
    }

    #[test]
    fn exciton_number_is_diagonal_without_coupling() {
        let dims = HilbertDims::new(3, 4).unwrap();
        let p = SystemParams { omega_x: 1650.0, ..params(0.0, 0.0) };
        let h = build_system_hamiltonian(&p, dims).unwrap();
        let basis = diagonalize_truncate(&h, dims, 24).unwrap();
        let ops = BareOperators::new(dims).unwrap();
        let set = transition_decomposition(&basis, &ops.exciton_number(), "x", PRUNE_THRESHOLD).unwrap();
        assert!(set.transitions.is_empty());
    }

    #[test]
    fn leak_of_ground_state_is_zero() {
        let mut rho = Operator::zeros(10).into_mat();
        rho[(0, 0)] = C64::new(1.0, 0.0);
        assert_eq!(truncation_leak_check(&Operator::from_mat(rho).unwrap(), 3), 0.0);
    }

    #[test]
    fn increasing_levels_keeps_lowest_energies() {
        let dims = HilbertDims::new(3, 8).unwrap();
        let h = build_system_hamiltonian(&params(60.0, 0.5), dims).unwrap();
        let small = diagonalize_truncate(&h, dims, 20).unwrap();
        let large = diagonalize_truncate(&h, dims, 40).unwrap();
        for j in 0..10 {
            assert!((small.energies[j] - large.energies[j]).abs() < 1e-10);
        }
    }
}
