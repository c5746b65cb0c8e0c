//! Dense linear-algebra helpers: vectorization, matrix exponential, and a
//! Hessenberg-reduced shifted solver for repeated resolvent evaluations.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::hessenberg;
use faer::linalg::householder;
use faer::{Conj, Mat, Par};

use crate::hilbert::Operator;
use crate::C64;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Column-stacking `vec(ρ)`: element `(i, j)` goes to `i + j·n`.
pub fn vectorize(op: &Operator) -> Vec<C64> {
    let n = op.dim();
    let m = op.mat();
    let mut v = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            v.push(m[(i, j)]);
        }
    }
    v
}

/// Inverse of [`vectorize`].
pub fn unvectorize(v: &[C64], n: usize) -> Operator {
    debug_assert_eq!(v.len(), n * n);
    Operator::from_fn(n, |i, j| v[i + j * n])
}

/// Plain (non-conjugating) dot product.
pub fn dotu(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `y = A x`.
pub fn matvec(a: &Mat<C64>, x: &[C64]) -> Vec<C64> {
    let mut y = vec![ZERO; a.nrows()];
    for (j, &xj) in x.iter().enumerate() {
        if xj == ZERO {
            continue;
        }
        for (yi, &aij) in y.iter_mut().zip(a.col(j).iter()) {
            *yi += aij * xj;
        }
    }
    y
}

fn norm_one(a: &Mat<C64>) -> f64 {
    (0..a.ncols())
        .map(|j| a.col(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a degree-18 Taylor
/// polynomial on the scaled matrix (‖A/2^s‖₁ ≤ 1/2).
pub fn expm(a: &Mat<C64>) -> Mat<C64> {
    let n = a.nrows();
    let norm = norm_one(a);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = 0.5_f64.powi(squarings as i32);
    let scaled = Mat::from_fn(n, n, |i, j| a[(i, j)] * scale);

    let mut result = Mat::<C64>::identity(n, n);
    let mut term = Mat::<C64>::identity(n, n);
    for k in 1..=18 {
        term = &term * &scaled;
        let inv = 1.0 / k as f64;
        term = Mat::from_fn(n, n, |i, j| term[(i, j)] * inv);
        result = &result + &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// `A = Q H Q^H` with `H` upper Hessenberg, prepared for many solves of
/// `(s·I − H) z = r` at different complex shifts `s`.
pub struct ShiftedHessenberg {
    n: usize,
    /// `−H` row by row, row `i` starting at column `max(i − 1, 0)`.
    packed: Vec<C64>,
    offsets: Vec<usize>,
    factors: Mat<C64>,
    householder: Mat<C64>,
}

/// Scratch rows for [`ShiftedHessenberg::bilinear_shifted`].
#[derive(Default)]
pub struct HessenbergScratch {
    carried: Vec<C64>,
    next: Vec<C64>,
    left: Vec<C64>,
}

impl ShiftedHessenberg {
    pub fn new(a: Mat<C64>) -> Self {
        let n = a.nrows();
        assert_eq!(n, a.ncols());
        assert!(n >= 2, "Hessenberg reduction needs n >= 2");
        let bs = faer::linalg::qr::no_pivoting::factor::recommended_block_size::<C64>(n - 1, n - 1);
        let mut factors = a;
        let mut hh = Mat::<C64>::zeros(bs, n - 1);
        let mut buf = MemBuffer::new(hessenberg::hessenberg_in_place_scratch::<C64>(
            n,
            bs,
            Par::Seq,
            Default::default(),
        ));
        hessenberg::hessenberg_in_place(
            factors.as_mut(),
            hh.as_mut(),
            Par::Seq,
            MemStack::new(&mut buf),
            Default::default(),
        );
        let mut offsets = Vec::with_capacity(n + 1);
        let mut packed = Vec::new();
        for i in 0..n {
            offsets.push(packed.len());
            for j in i.saturating_sub(1)..n {
                packed.push(-factors[(i, j)]);
            }
        }
        offsets.push(packed.len());
        Self { n, packed, offsets, factors, householder: hh }
    }

    /// Row `i` of `−H`, from column `max(i − 1, 0)`.
    fn row(&self, i: usize) -> &[C64] {
        &self.packed[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn apply_q(&self, v: &mut [C64], transpose: bool, conj: Conj) {
        let n = self.n;
        let mut col = Mat::from_fn(n - 1, 1, |i, _| v[i + 1]);
        let bs = self.householder.nrows();
        let essentials = self.factors.as_ref().submatrix(1, 0, n - 1, n - 1);
        if transpose {
            let mut buf = MemBuffer::new(
                householder::apply_block_householder_sequence_transpose_on_the_left_in_place_scratch::<C64>(
                    n - 1,
                    bs,
                    1,
                ),
            );
            householder::apply_block_householder_sequence_transpose_on_the_left_in_place_with_conj(
                essentials,
                self.householder.as_ref(),
                conj,
                col.as_mut(),
                Par::Seq,
                MemStack::new(&mut buf),
            );
        } else {
            let mut buf = MemBuffer::new(
                householder::apply_block_householder_sequence_on_the_left_in_place_scratch::<C64>(n - 1, bs, 1),
            );
            householder::apply_block_householder_sequence_on_the_left_in_place_with_conj(
                essentials,
                self.householder.as_ref(),
                conj,
                col.as_mut(),
                Par::Seq,
                MemStack::new(&mut buf),
            );
        }
        for i in 0..n - 1 {
            v[i + 1] = col[(i, 0)];
        }
    }

    /// `v ← Q^H v`.
    pub fn apply_q_adjoint(&self, v: &mut [C64]) {
        self.apply_q(v, true, Conj::Yes);
    }

    /// `v ← Q v`.
    pub fn apply_q_plain(&self, v: &mut [C64]) {
        self.apply_q(v, false, Conj::No);
    }

    /// `v ← Q^T v`.
    pub fn apply_q_transpose(&self, v: &mut [C64]) {
        self.apply_q(v, true, Conj::No);
    }

    /// Loads row `i` of `shift·I − H`, columns `from..n`, into `dst[from..]`.
    fn load_row(&self, i: usize, from: usize, shift: C64, dst: &mut [C64]) {
        let start = i.saturating_sub(1);
        let row = self.row(i);
        dst[from..].copy_from_slice(&row[from - start..]);
        dst[i] += shift;
    }

    /// `lᵀ (shift·I − H)⁻¹ r` without forming the solution vector.
    ///
    /// Gaussian elimination with adjacent-row pivoting streams through the
    /// rows once. Each finished row of the triangular factor `U` is used
    /// immediately to advance the forward solve of `Uᵀ v = l`, so neither `U`
    /// nor `z` is stored.
    pub fn bilinear_shifted(&self, shift: C64, left: &[C64], rhs: &[C64], scratch: &mut HessenbergScratch) -> Option<C64> {
        let n = self.n;
        let HessenbergScratch { carried, next, left: w } = scratch;
        carried.resize(n, ZERO);
        next.resize(n, ZERO);
        w.clear();
        w.extend_from_slice(left);
        self.load_row(0, 0, shift, carried);
        let mut carried_rhs = rhs[0];
        let mut acc = ZERO;
        for k in 0..n {
            let mut y = carried_rhs;
            let mut other_rhs = ZERO;
            if k + 1 < n {
                self.load_row(k + 1, k, shift, next);
                other_rhs = rhs[k + 1];
                if next[k].norm() > carried[k].norm() {
                    std::mem::swap(carried, next);
                    std::mem::swap(&mut y, &mut other_rhs);
                }
            }
            let d = carried[k];
            if d == ZERO || !d.re.is_finite() || !d.im.is_finite() {
                return None;
            }
            let vk = w[k] / d;
            acc += vk * y;
            if k + 1 == n {
                break;
            }
            let l = next[k] / d;
            // next ← next − l·U_k becomes the carried row; w ← w − v_k·U_k
            for j in k + 1..n {
                let u = carried[j];
                next[j] -= l * u;
                w[j] -= vk * u;
            }
            carried_rhs = other_rhs - l * y;
            std::mem::swap(carried, next);
        }
        Some(acc)
    }

    /// Solves `(shift·I − H) z = rhs` densely. Intended for checks on small
    /// systems; spectra use [`Self::bilinear_shifted`].
    pub fn solve_shifted(&self, shift: C64, rhs: &[C64]) -> Option<Vec<C64>> {
        let n = self.n;
        let mut z = vec![ZERO; n];
        let mut scratch = HessenbergScratch::default();
        // column i of the inverse applied to rhs, one unit readout at a time
        for (i, zi) in z.iter_mut().enumerate() {
            let mut e = vec![ZERO; n];
            e[i] = C64::new(1.0, 0.0);
            *zi = self.bilinear_shifted(shift, &e, rhs, &mut scratch)?;
        }
        Some(z)
    }
}
