//! Small dense complex linear algebra.
//!
//! Everything here targets local dimensions up to 16: row-major matrices, a cyclic
//! Jacobi eigensolver for Hermitian matrices, and the Schmidt decomposition of a
//! bipartite pure state through the Gram matrix of its amplitude matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

pub type C64 = Complex64;

/// Largest matrix dimension accepted by [`eig_hermitian`].
pub const MAX_EIG_DIM: usize = 16;

const MAX_SWEEPS: usize = 64;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for col in 0..cols {
                data.push(f(r, col));
            }
        }
        Self { rows, cols, data }
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = c(v, 0.0);
        }
        m
    }

    /// Column vector.
    pub fn column_vector(v: &[C64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, col| u[r] * v[col].conj())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Result<Self> {
        for col in columns {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |r, k| columns[k][r]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, k: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, k)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, col| self[(col, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, col| self[(col, r)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "apply: dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `⟨v|M|v⟩`.
    pub fn quadratic_form(&self, v: &[C64]) -> C64 {
        inner(v, &self.apply(v))
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |H[r,c] - conj(H[c,r])|`; infinite for non-square input.
    pub fn hermitian_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for col in r..self.cols {
                worst = worst.max((self[(r, col)] - self[(col, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_asymmetry() <= tol
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        Self::from_fn(self.rows, self.cols, |r, col| {
            (self[(r, col)] + adj[(r, col)]) * 0.5
        })
    }

    /// `U† M U` for a square `M`; `U` may be an isometry (tall).
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        &(&u.adjoint() * self) * u
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, col): (usize, usize)) -> &C64 {
        assert!(r < self.rows && col < self.cols);
        &self.data[r * self.cols + col]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, col): (usize, usize)) -> &mut C64 {
        assert!(r < self.rows && col < self.cols);
        &mut self.data[r * self.cols + col]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on inner-dimension mismatch.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product: dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for col in 0..rhs.cols {
                    out.data[r * rhs.cols + col] += a * rhs[(k, col)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// `⟨u|v⟩`, conjugate-linear in the first argument.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Kronecker product; dimensions multiply.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |r, col| {
        a[(r / b.rows, col / b.cols)] * b[(r % b.rows, col % b.cols)]
    })
}

/// Kronecker product of plain vectors.
pub fn kron_vec(u: &[C64], v: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(a * b);
        }
    }
    out
}

/// Multiply `v` by a unit phase so its first component of modulus above
/// `tol` becomes real and positive.
pub(crate) fn fix_phase(v: &mut [C64], tol: f64) {
    if let Some(pivot) = v.iter().find(|z| z.norm() > tol) {
        let phase = pivot.conj() / pivot.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Normalized pure state of a finite-dimensional system.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Rejects states whose squared norm is off by more than the normalization tolerance.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let n = norm_sqr(&amplitudes);
        if (n - 1.0).abs() > Tolerances::DEFAULT.normalization {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales to unit norm; fails only for the zero vector.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let n = norm_sqr(&amplitudes).sqrt();
        if n.is_nan() || n <= 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n * n));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / n).collect(),
        })
    }

    /// Computational basis state `|k⟩` of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amplitudes = vec![c(0.0, 0.0); dim];
        amplitudes[k] = c(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn kron(&self, other: &StateVector) -> StateVector {
        StateVector {
            amplitudes: kron_vec(&self.amplitudes, &other.amplitudes),
        }
    }

    /// `⟨ψ|M|ψ⟩`, real part.
    pub fn expectation(&self, m: &ComplexMatrix) -> f64 {
        m.quadratic_form(&self.amplitudes).re
    }
}

/// Hermitian eigendecomposition.
#[derive(Clone, Debug)]
pub struct Eigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl Eigen {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.vectors;
        &(v * &ComplexMatrix::diag(&self.values)) * &v.adjoint()
    }
}

/// Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix,
/// by cyclic complex Jacobi rotations.
///
/// Each eigenvector has its first component of modulus above `1e-12` made real
/// and positive.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<Eigen> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows,
            cols: h.cols,
        });
    }
    let n = h.rows;
    if n > MAX_EIG_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_EIG_DIM,
        });
    }
    let asym = h.hermitian_asymmetry();
    if asym > Tolerances::DEFAULT.hermitian {
        return Err(Error::NotHermitian(asym));
    }

    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale: f64 = a.data.iter().map(|z| z.norm_sqr()).sum();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    off += a[(p, q)].norm_sqr();
                }
            }
        }
        if off <= scale * 1e-32 || off < f64::MIN_POSITIVE {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let columns: Vec<Vec<C64>> = order
        .iter()
        .map(|&k| {
            let mut col = v.column(k);
            fix_phase(&mut col, Tolerances::DEFAULT.rank);
            col
        })
        .collect();
    Ok(Eigen {
        values,
        vectors: ComplexMatrix::from_columns(n, &columns)?,
    })
}

/// One Jacobi step zeroing `a[p][q]`: `A ← U† A U`, `V ← V U` with `U = D R`,
/// `D` removing the phase of `a[p][q]` and `R` the real symmetric rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < f64::MIN_POSITIVE {
        return;
    }
    let phase_conj = apq.conj() / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;

    let u_pp = c(cs, 0.0);
    let u_pq = c(sn, 0.0);
    let u_qp = phase_conj * (-sn);
    let u_qq = phase_conj * cs;
    let n = a.rows;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = c(0.0, 0.0);
    a[(q, p)] = c(0.0, 0.0);
    a[(p, p)] = c(a[(p, p)].re, 0.0);
    a[(q, q)] = c(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Schmidt decomposition `Σ_k c_k |a_k⟩ ⊗ |b_k⟩` of a bipartite pure state.
///
/// There are always `min(dA, dB)` terms; coefficients at or below `1e-12` are
/// stored as exact zeros and their basis vectors complete the orthonormal sets.
#[derive(Clone, Debug)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    /// `dA × min(dA, dB)`, orthonormal columns.
    pub basis_a: ComplexMatrix,
    /// `dB × min(dA, dB)`, orthonormal columns.
    pub basis_b: ComplexMatrix,
}

impl SchmidtForm {
    /// Number of nonzero coefficients.
    pub fn rank(&self) -> usize {
        self.coefficients.iter().filter(|&&x| x > 0.0).count()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.basis_a.rows(), self.basis_b.rows())
    }

    /// Amplitudes of `Σ_k c_k a_k ⊗ b_k`.
    pub fn reconstruct(&self) -> Vec<C64> {
        let (da, db) = self.dims();
        let mut out = vec![c(0.0, 0.0); da * db];
        for (k, &ck) in self.coefficients.iter().enumerate() {
            if ck == 0.0 {
                continue;
            }
            for i in 0..da {
                for j in 0..db {
                    out[i * db + j] += self.basis_a[(i, k)] * self.basis_b[(j, k)] * ck;
                }
            }
        }
        out
    }
}

pub fn schmidt(state: &StateVector, dim_a: usize, dim_b: usize) -> Result<SchmidtForm> {
    if dim_a == 0 || dim_b == 0 || dim_a * dim_b != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: dim_a * dim_b,
            found: state.dim(),
        });
    }
    let amps = state.amplitudes();
    let m = ComplexMatrix::from_fn(dim_a, dim_b, |i, j| amps[i * dim_b + j]);
    let gram = (&m * &m.adjoint()).hermitian_part();
    let eig = eig_hermitian(&gram)?;
    let k_max = dim_a.min(dim_b);
    let rank_tol = Tolerances::DEFAULT.rank;

    let mut coefficients = Vec::with_capacity(k_max);
    let mut cols_a = Vec::with_capacity(k_max);
    let mut cols_b: Vec<Vec<C64>> = Vec::with_capacity(k_max);
    for k in 0..k_max {
        let u = eig.vectors.column(k);
        let ck = eig.values[k].max(0.0).sqrt();
        if ck > rank_tol {
            let vb: Vec<C64> = (0..dim_b)
                .map(|j| (0..dim_a).map(|i| u[i].conj() * m[(i, j)]).sum::<C64>() / ck)
                .collect();
            coefficients.push(ck);
            cols_b.push(vb);
        } else {
            coefficients.push(0.0);
        }
        cols_a.push(u);
    }
    let filled = cols_b.len();
    complete_orthonormal(&mut cols_b, dim_b, k_max);
    for col in cols_b.iter_mut().skip(filled) {
        fix_phase(col, rank_tol);
    }
    Ok(SchmidtForm {
        coefficients,
        basis_a: ComplexMatrix::from_columns(dim_a, &cols_a)?,
        basis_b: ComplexMatrix::from_columns(dim_b, &cols_b)?,
    })
}

/// Extend an orthonormal list to `target` vectors by Gram-Schmidt against the
/// computational basis.
fn complete_orthonormal(cols: &mut Vec<Vec<C64>>, dim: usize, target: usize) {
    let mut e = 0;
    while cols.len() < target && e < dim {
        let mut w = vec![c(0.0, 0.0); dim];
        w[e] = c(1.0, 0.0);
        e += 1;
        for _ in 0..2 {
            for col in cols.iter() {
                let proj = inner(col, &w);
                for (wi, ci) in w.iter_mut().zip(col) {
                    *wi -= proj * ci;
                }
            }
        }
        let n = norm_sqr(&w).sqrt();
        if n > 1e-6 {
            cols.push(w.into_iter().map(|z| z / n).collect());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_matrix(rng: &mut impl Rng, r: usize, col: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(r, col, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn rand_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
        rand_matrix(rng, n, n).hermitian_part()
    }

    fn max_orthonormality_error(v: &ComplexMatrix) -> f64 {
        (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(v.cols()))
    }

    #[test]
    fn kron_identity_and_basis() {
        let i4 = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(i4, ComplexMatrix::identity(4));
        let e0 = ComplexMatrix::column_vector(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let e1 = ComplexMatrix::column_vector(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let prod = kron(&e0, &e1);
        assert_eq!(
            prod.as_slice(),
            &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]
        );
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = rand_matrix(&mut rng, 2, 2);
            let b = rand_matrix(&mut rng, 2, 2);
            let u: Vec<C64> = rand_matrix(&mut rng, 2, 1).column(0);
            let v: Vec<C64> = rand_matrix(&mut rng, 2, 1).column(0);
            let lhs = kron(&a, &b).apply(&kron_vec(&u, &v));
            let rhs = kron_vec(&a.apply(&u), &b.apply(&v));
            let err = lhs
                .iter()
                .zip(&rhs)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(err <= 1e-12, "{err}");
        }
    }

    #[test]
    fn kron_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let dims: [usize; 3] = [
                rng.gen_range(1..4),
                rng.gen_range(1..4),
                rng.gen_range(1..4),
            ];
            let a = rand_matrix(&mut rng, dims[0], dims[1]);
            let b = rand_matrix(&mut rng, dims[1], dims[2]);
            let cm = rand_matrix(&mut rng, dims[2], dims[0]);
            let left = kron(&kron(&a, &b), &cm);
            let right = kron(&a, &kron(&b, &cm));
            assert!(left.max_abs_diff(&right) <= 1e-12);
        }
    }

    #[test]
    fn eig_diagonal() {
        let e = eig_hermitian(&ComplexMatrix::diag(&[1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![2.0, 1.0]);
        assert_eq!(e.vectors.column(0), vec![c(0., 0.), c(1., 0.)]);
        assert_eq!(e.vectors.column(1), vec![c(1., 0.), c(0., 0.)]);
    }

    #[test]
    fn eig_pauli_x() {
        let x = ComplexMatrix::new(2, 2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let e = eig_hermitian(&x).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
        let s = FRAC_1_SQRT_2;
        let v0 = e.vectors.column(0);
        let v1 = e.vectors.column(1);
        assert!((v0[0] - c(s, 0.)).norm() < 1e-12 && (v0[1] - c(s, 0.)).norm() < 1e-12);
        assert!((v1[0] - c(s, 0.)).norm() < 1e-12 && (v1[1] - c(-s, 0.)).norm() < 1e-12);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, 2, vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian(_))));
        assert!(matches!(
            eig_hermitian(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..1200 {
            let n = 2 + trial % 3;
            let h = rand_hermitian(&mut rng, n);
            let e = eig_hermitian(&h).unwrap();
            assert!(e.reconstruct().max_abs_diff(&h) <= 1e-10);
            assert!(max_orthonormality_error(&e.vectors) <= 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn eig_handles_sixteen_and_degenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = rand_hermitian(&mut rng, 16);
        let e = eig_hermitian(&h).unwrap();
        assert!(e.reconstruct().max_abs_diff(&h) <= 1e-10);
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let e = eig_hermitian(&half).unwrap();
        assert_eq!(e.vectors, ComplexMatrix::identity(2));
        assert!(matches!(
            eig_hermitian(&ComplexMatrix::identity(17)),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn schmidt_bell_and_product() {
        let s = FRAC_1_SQRT_2;
        let bell = StateVector::new(vec![c(s, 0.), c(0., 0.), c(0., 0.), c(s, 0.)]).unwrap();
        let f = schmidt(&bell, 2, 2).unwrap();
        assert!((f.coefficients[0] - s).abs() < 1e-12 && (f.coefficients[1] - s).abs() < 1e-12);

        let prod = StateVector::basis(4, 1);
        let f = schmidt(&prod, 2, 2).unwrap();
        assert_eq!(f.coefficients, vec![1.0, 0.0]);
        assert_eq!(f.rank(), 1);
        assert!(max_orthonormality_error(&f.basis_b) <= 1e-12);
        let rec = f.reconstruct();
        assert!(rec
            .iter()
            .zip(prod.amplitudes())
            .all(|(a, b)| (a - b).norm() < 1e-12));
    }

    #[test]
    fn schmidt_dimension_mismatch() {
        assert!(matches!(
            schmidt(&StateVector::basis(4, 0), 2, 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn schmidt_random_states_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..500 {
            let (da, db) = [(2, 2), (2, 3), (3, 2), (2, 5), (3, 3), (4, 2)][trial % 6];
            let amps = rand_matrix(&mut rng, da * db, 1).column(0);
            let psi = StateVector::normalized(amps).unwrap();
            let f = schmidt(&psi, da, db).unwrap();
            let sum: f64 = f.coefficients.iter().map(|x| x * x).sum();
            assert!((sum - 1.0).abs() <= 1e-10);
            assert!(f.coefficients.windows(2).all(|w| w[0] >= w[1]));
            assert_eq!(f.coefficients.len(), da.min(db));
            assert!(max_orthonormality_error(&f.basis_a) <= 1e-10);
            assert!(max_orthonormality_error(&f.basis_b) <= 1e-10);
            let rec = f.reconstruct();
            let err = rec
                .iter()
                .zip(psi.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err <= 1e-10, "{err}");
        }
    }

    #[test]
    fn state_normalization_checked() {
        assert!(matches!(
            StateVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(StateVector::normalized(vec![c(0.0, 0.0)]).is_err());
    }
}
