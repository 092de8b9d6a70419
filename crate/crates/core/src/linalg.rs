//! Small dense complex matrices.
//!
//! Every object in the erasure model lives in a Hilbert space of dimension
//! 2, 4 or 8, so the representation is a flat row-major `Vec` with no
//! blocking or SIMD. Kronecker products put the leftmost factor in the most
//! significant position of the basis index, which makes the composite basis
//! `(memory, reservoir energy, ancilla)` read as the bit string `m e a`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Hermiticity tolerance for density matrices.
pub const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
/// Trace tolerance for density matrices.
pub const DENSITY_TRACE_TOL: f64 = 1e-12;
/// Eigenvalues down to `-EIGEN_FLOOR` count as round-off and are accepted.
pub const EIGEN_FLOOR: f64 = 1e-10;
/// Hermiticity tolerance accepted by the eigensolver.
pub const EIGEN_HERMITIAN_TOL: f64 = 1e-10;

const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a `dim`×`dim` matrix from row-major entries.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::NotSquare { len: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::new(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self::new(dim, data)
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Diagonal matrix with real entries.
    pub fn diag(values: &[f64]) -> Self {
        let dim = values.len();
        let mut m = Self::zeros(dim);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * dim + i] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|i⟩⟨i|` in dimension `dim`.
    pub fn projector(dim: usize, i: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.data[i * dim + i] = ONE;
        m
    }

    /// Permutation matrix sending basis column `j` to row `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        if !is_permutation(perm) {
            return Err(Error::NotAPermutation);
        }
        let dim = perm.len();
        let mut m = Self::zeros(dim);
        for (col, &row) in perm.iter().enumerate() {
            m.data[row * dim + col] = ONE;
        }
        Ok(m)
    }

    pub fn pauli_x() -> Self {
        Self::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn pauli_y() -> Self {
        let i = Complex64::new(0.0, 1.0);
        ComplexMatrix {
            dim: 2,
            data: vec![ZERO, -i, i, ZERO],
        }
    }

    /// σ_z with `σ_z|0⟩ = +|0⟩`.
    pub fn pauli_z() -> Self {
        Self::diag(&[1.0, -1.0])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, k: f64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        same_dim(self, other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Real diagonal entries.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    /// Checks the density-matrix contract: Hermitian, unit trace, and no
    /// eigenvalue below `-EIGEN_FLOOR`.
    pub fn check_density(&self) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if deviation > DENSITY_HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > DENSITY_TRACE_TOL || tr.im.abs() > DENSITY_TRACE_TOL {
            return Err(Error::InvalidTrace { trace: tr.re });
        }
        let spectrum = hermitian_eigenvalues(self)?;
        if let Some(&min) = spectrum.eigenvalues.first() {
            if min < -EIGEN_FLOOR {
                return Err(Error::NegativeEigenvalue { value: min });
            }
        }
        Ok(())
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        // Tr(ρ ρ) = Σ_ij ρ_ij ρ_ji
        let mut acc = ZERO;
        for r in 0..self.dim {
            for c in 0..self.dim {
                acc += self.get(r, c) * self.get(c, r);
            }
        }
        acc.re
    }

    /// Entries are exactly 0 or 1 with one 1 per row and per column.
    pub fn is_exact_permutation(&self) -> bool {
        let n = self.dim;
        let mut row_hits = vec![0usize; n];
        let mut col_hits = vec![0usize; n];
        for (r, hits) in row_hits.iter_mut().enumerate() {
            for (c, col) in col_hits.iter_mut().enumerate() {
                let z = self.get(r, c);
                if z == ONE {
                    *hits += 1;
                    *col += 1;
                } else if z != ZERO {
                    return false;
                }
            }
        }
        row_hits.iter().chain(&col_hits).all(|&h| h == 1)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.data[row * self.dim + col]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on mismatched dimensions.
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        ComplexMatrix {
            dim: self.dim,
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

    /// Panics on mismatched dimensions.
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

fn same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    Ok(())
}

pub(crate) fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    same_dim(a, b)?;
    let n = a.dim;
    let mut out = ComplexMatrix::zeros(n);
    for r in 0..n {
        for k in 0..n {
            let lhs = a.data[r * n + k];
            if lhs == ZERO {
                continue;
            }
            for c in 0..n {
                out.data[r * n + c] += lhs * b.data[k * n + c];
            }
        }
    }
    Ok(out)
}

pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim;
    let mut out = ComplexMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            out.data[c * n + r] = a.data[r * n + c].conj();
        }
    }
    out
}

/// Kronecker product `a ⊗ b`; `a` indexes the most significant digit.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for ar in 0..na {
        for ac in 0..na {
            let x = a.data[ar * na + ac];
            for br in 0..nb {
                for bc in 0..nb {
                    out.data[(ar * nb + br) * n + ac * nb + bc] = x * b.data[br * nb + bc];
                }
            }
        }
    }
    out
}

/// `u · rho · u†`.
pub fn conjugate(u: &ComplexMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    matmul(&matmul(u, rho)?, &dagger(u))
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(&matmul(a, b)? - &matmul(b, a)?)
}

/// Reduced matrix over the subsystems in `keep`, listed in their original
/// relative order. `dims` gives subsystem dimensions, most significant first.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    if dims.is_empty() || dims.contains(&0) || dims.iter().product::<usize>() != rho.dim {
        return Err(Error::InvalidSubsystems);
    }
    let mut kept = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() {
            return Err(Error::InvalidSubsystems);
        }
        kept[k] = true;
    }

    let digits = |mut index: usize| -> Vec<usize> {
        let mut out = vec![0; dims.len()];
        for (slot, &d) in out.iter_mut().zip(dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    };
    let kept_index = |ds: &[usize]| -> usize {
        ds.iter()
            .zip(dims)
            .zip(&kept)
            .filter(|(_, &k)| k)
            .fold(0, |acc, ((&digit, &d), _)| acc * d + digit)
    };

    let out_dim: usize = dims
        .iter()
        .zip(&kept)
        .filter(|(_, &k)| k)
        .map(|(d, _)| d)
        .product();
    let mut out = ComplexMatrix::zeros(out_dim);
    let n = rho.dim;
    let all_digits: Vec<Vec<usize>> = (0..n).map(digits).collect();
    for r in 0..n {
        for c in 0..n {
            let (dr, dc) = (&all_digits[r], &all_digits[c]);
            let traced_match = (0..dims.len()).all(|s| kept[s] || dr[s] == dc[s]);
            if traced_match {
                out.data[kept_index(dr) * out_dim + kept_index(dc)] += rho.data[r * n + c];
            }
        }
    }
    Ok(out)
}

pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    same_dim(a, b)?;
    Ok(libm::sqrt(
        a.data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum(),
    ))
}

pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    libm::sqrt(a.data.iter().map(|z| z.norm_sqr()).sum())
}

/// Real eigenvalues of a Hermitian matrix, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
}

impl HermitianSpectrum {
    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
///
/// `H = A + iB` is embedded as the real symmetric matrix `[[A, -B], [B, A]]`
/// of twice the size, whose spectrum is that of `H` with every eigenvalue
/// doubled. After sorting, every second value is kept.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<HermitianSpectrum> {
    let deviation = h.hermitian_deviation();
    if deviation > EIGEN_HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = h.dim;
    let m = 2 * n;
    let mut a = vec![0.0f64; m * m];
    for r in 0..n {
        for c in 0..n {
            // symmetrize to absorb sub-tolerance asymmetry
            let z = (h.get(r, c) + h.get(c, r).conj()) * 0.5;
            a[r * m + c] = z.re;
            a[(r + n) * m + c + n] = z.re;
            a[r * m + c + n] = -z.im;
            a[(r + n) * m + c] = z.im;
        }
    }

    let scale = libm::sqrt(a.iter().map(|x| x * x).sum::<f64>()).max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a, m) < JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                rotate(&mut a, m, p, q);
            }
        }
    }

    let mut doubled: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
    doubled.sort_by(f64::total_cmp);
    Ok(HermitianSpectrum {
        eigenvalues: doubled.into_iter().step_by(2).collect(),
    })
}

fn off_diagonal_norm(a: &[f64], m: usize) -> f64 {
    let mut acc = 0.0;
    for r in 0..m {
        for c in 0..m {
            if r != c {
                acc += a[r * m + c] * a[r * m + c];
            }
        }
    }
    libm::sqrt(acc)
}

/// One Jacobi rotation zeroing `a[p][q]`.
fn rotate(a: &mut [f64], m: usize, p: usize, q: usize) {
    let apq = a[p * m + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * m + p];
    let aqq = a[q * m + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta >= 0.0 {
        1.0 / (theta + libm::sqrt(theta * theta + 1.0))
    } else {
        -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    for k in 0..m {
        let akp = a[k * m + p];
        let akq = a[k * m + q];
        a[k * m + p] = c * akp - s * akq;
        a[k * m + q] = s * akp + c * akq;
    }
    for k in 0..m {
        let apk = a[p * m + k];
        let aqk = a[q * m + k];
        a[p * m + k] = c * apk - s * aqk;
        a[q * m + k] = s * apk + c * aqk;
    }
    a[p * m + q] = 0.0;
    a[q * m + p] = 0.0;
}
