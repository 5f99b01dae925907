//! Dense complex linear algebra for the 2×2 and 4×4 matrices used throughout the crate.
//!
//! Tensor products are ordered with the reduced system as the first (slow) factor and
//! the bath as the second (fast) factor; [`partial_trace_bath`] traces out the second one.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm at which a Jacobi iteration is considered converged,
/// relative to `max(1, ‖A‖_F)`.
pub const JACOBI_TOLERANCE: f64 = 1e-13;
/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Largest accepted `max |M - M†|` for inputs to the Hermitian routines.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Square dense complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; the length must be a positive perfect square.
    pub fn from_entries(entries: Vec<Complex64>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != entries.len() {
            return Err(Error::Dimension {
                expected: dim.max(1) * dim.max(1),
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        let entries = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self { dim: N, entries }
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self { dim: N, entries }
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Projector `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    /// `(M + M†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&adj.entries)
                .map(|(&a, &b)| (a + b) * 0.5)
                .collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |M - M†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `max |M†M - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.dim;
        let mut a = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap();
            if a[(pivot, col)].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)];
            det *= p;
            for r in col + 1..n {
                let f = a[(r, col)] / p;
                for k in col..n {
                    let v = a[(col, k)];
                    a[(r, k)] -= f * v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        let n = self.dim;
        for k in 0..n {
            self.entries.swap(r1 * n + k, r2 * n + k);
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self - other)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Standard single-qubit operators.
pub mod gates {
    use super::{c, ComplexMatrix};
    use std::f64::consts::FRAC_1_SQRT_2;

    pub fn identity2() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]])
    }

    pub fn hadamard() -> ComplexMatrix {
        let h = FRAC_1_SQRT_2;
        ComplexMatrix::from_real_rows([[h, h], [h, -h]])
    }
}

/// Kronecker product; `a` indexes the slow (leftmost) subsystem.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Traces out the second qubit of a two-qubit operator.
pub fn partial_trace_bath(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.dim() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: m.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = (0..2).map(|k| m[(2 * i + k, 2 * j + k)]).sum();
        }
    }
    Ok(out)
}

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V · diag(λ) · V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_function(|x| Complex64::new(x, 0.0))
    }

    /// `V · diag(f(λ)) · V†`.
    pub fn apply_function(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        let fl: Vec<Complex64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum();
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// The input is symmetrized to `(M + M†)/2` first; inputs further than
/// [`HERMITIAN_TOLERANCE`] from Hermitian are rejected.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let scale = m.max_abs().max(1.0);
    let residual = m.hermiticity_residual();
    if !m.is_finite() {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    if residual > HERMITIAN_TOLERANCE * scale {
        return Err(Error::NotHermitian { residual });
    }

    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOLERANCE * a.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&a);
        if off > threshold {
            return Err(Error::NoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
                residual: off,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[(r, new_col)] = v[(r, old_col)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Annihilates `a[p,q]` with the unitary `W = diag(1, e^{-iφ}) · R(θ)` acting on the (p, q) plane.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let phase = apq / r;
    let zeta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if zeta.abs() > 1e150 {
        0.5 / zeta
    } else {
        zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;

    let w_pp = Complex64::new(cs, 0.0);
    let w_pq = Complex64::new(sn, 0.0);
    let w_qp = -phase.conj() * sn;
    let w_qq = phase.conj() * cs;

    let n = a.dim();
    // A <- A W
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * w_pp + akq * w_qp;
        a[(k, q)] = akp * w_pq + akq * w_qq;
    }
    // A <- W† A
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = w_pp.conj() * apk + w_qp.conj() * aqk;
        a[(q, k)] = w_pq.conj() * apk + w_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    // V <- V W
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * w_pp + vkq * w_qp;
        v[(k, q)] = vkp * w_pq + vkq * w_qq;
    }
}

/// `exp(-i t H)` for Hermitian `H` (ħ = 1), through the eigendecomposition of `H`.
pub fn expm_unitary(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(eig.apply_function(|lambda| Complex64::from_polar(1.0, -t * lambda)))
}

/// Singular values of `M` in descending order, by one-sided (Hestenes) Jacobi.
///
/// Columns are orthogonalized in place; small singular values keep absolute accuracy
/// near `ε ‖M‖`, unlike square roots of the eigenvalues of `M†M`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    if !m.is_finite() {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| m[(i, j)]).collect()).collect();
    let norm2 = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let tol = JACOBI_TOLERANCE;
    let mut off = f64::INFINITY;
    for _ in 0..JACOBI_MAX_SWEEPS {
        off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm2(&cols[p]);
                let beta = norm2(&cols[q]);
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(a, b)| a.conj() * b).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                off = off.max(g / (alpha * beta).sqrt());
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                let (left, right) = cols.split_at_mut(q);
                for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let a = *x;
                    let b = *y * phase.conj();
                    *x = a * cs - b * sn;
                    *y = (a * sn + b * cs) * phase;
                }
            }
        }
        if off <= tol {
            let mut sv: Vec<f64> = cols.iter().map(|v| norm2(v).sqrt()).collect();
            sv.sort_by(|a, b| b.total_cmp(a));
            return Ok(sv);
        }
    }
    Err(Error::NoConvergence {
        sweeps: JACOBI_MAX_SWEEPS,
        residual: off,
    })
}

/// Trace norm `Tr √(M†M)`, the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.dim();
    if b.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: b.len(),
        });
    }
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| m[(x, col)].norm().total_cmp(&m[(y, col)].norm()))
            .unwrap();
        if m[(pivot, col)].norm() <= 1e-12 * scale {
            return Err(Error::Singular);
        }
        if pivot != col {
            m.swap_rows(pivot, col);
            rhs.swap(pivot, col);
        }
        let p = m[(col, col)];
        for r in col + 1..n {
            let f = m[(r, col)] / p;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in col..n {
                let v = m[(col, k)];
                m[(r, k)] -= f * v;
            }
            let v = rhs[col];
            rhs[r] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let s: Complex64 = (r + 1..n).map(|k| m[(r, k)] * x[k]).sum();
        x[r] = (rhs[r] - s) / m[(r, r)];
    }
    Ok(x)
}
