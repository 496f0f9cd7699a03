//! Dense complex Hermitian matrices and their spectral decomposition.
//!
//! Diagonalization uses cyclic complex Jacobi rotations. For the sizes this
//! crate deals with (`d` up to a few dozen) each sweep is cheap and the
//! method is unconditionally stable.

use std::ops::{Add, Sub};

pub use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Maximum number of cyclic sweeps before giving up.
pub const MAX_SWEEPS: usize = 64;
/// Off-diagonal Frobenius norm (relative to `max(1, |M|_F)`) at which sweeping stops.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
/// Components smaller than this are skipped when fixing eigenvector phases.
const PHASE_EPS: f64 = 1e-10;

/// A `d x d` complex Hermitian matrix stored row-major.
///
/// Construction symmetrizes the input as `(M + M^dagger) / 2`, so the
/// diagonal is exactly real and `m[(i, j)] == m[(j, i)].conj()` holds bitwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let mut m = Self { dim, entries };
        m.symmetrize();
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::new(dim, rows.iter().flatten().copied().collect())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|psi><psi|` for the given (not necessarily normalized) vector.
    pub fn outer(psi: &[Complex64]) -> Self {
        let dim = psi.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in psi {
            for b in psi {
                entries.push(a * b.conj());
            }
        }
        let mut m = Self { dim, entries };
        m.symmetrize();
        m
    }

    /// Rank-1 projector onto the span of `psi` (normalizes `psi` first).
    pub fn projector(psi: &[Complex64]) -> Self {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        Self::outer(psi).scale(1.0 / norm2)
    }

    /// `sum_j lambda_j |w_j><w_j|`.
    pub fn from_spectrum(eigenvalues: &[f64], eigenvectors: &[Vec<Complex64>]) -> Self {
        let dim = eigenvectors.first().map_or(0, Vec::len);
        eigenvalues
            .iter()
            .zip(eigenvectors)
            .fold(Self::zeros(dim), |acc, (&l, w)| {
                acc + Self::outer(w).scale(l)
            })
    }

    fn symmetrize(&mut self) {
        let d = self.dim;
        for i in 0..d {
            let ii = i * d + i;
            self.entries[ii] = Complex64::new(self.entries[ii].re, 0.0);
            for j in (i + 1)..d {
                let avg = (self.entries[i * d + j] + self.entries[j * d + i].conj()) * 0.5;
                self.entries[i * d + j] = avg;
                self.entries[j * d + i] = avg.conj();
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn scale(&self, f: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * f).collect(),
        }
    }

    /// `tr(self * other)`, which is real for two Hermitian matrices.
    pub fn trace_product(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut acc = 0.0;
        for i in 0..d {
            for j in 0..d {
                acc += (self.get(i, j) * other.get(j, i)).re;
            }
        }
        acc
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

impl Add for HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: Self) -> HermitianMatrix {
        assert_eq!(self.dim, rhs.dim);
        HermitianMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: Self) -> HermitianMatrix {
        assert_eq!(self.dim, rhs.dim);
        HermitianMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Spectral decomposition `M = sum_j lambda_j w_j w_j^dagger`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[j]` belongs to `eigenvalues[j]`; the first component of
    /// modulus above `1e-10` is real and positive.
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl EigenDecomposition {
    pub fn reconstruct(&self) -> HermitianMatrix {
        HermitianMatrix::from_spectrum(&self.eigenvalues, &self.eigenvectors)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, l| m.max(l.abs()))
    }
}

/// Full eigendecomposition by cyclic Jacobi sweeps.
///
/// Pairs are visited in row-major order `(0,1), (0,2), ..., (d-2,d-1)` and the
/// output ordering and phases are fixed, so identical inputs give bitwise
/// identical outputs.
pub fn hermitian_eigendecompose(m: &HermitianMatrix) -> Result<EigenDecomposition> {
    let d = m.dim;
    let mut a = m.entries.clone();
    let mut v = HermitianMatrix::identity(d).entries;
    let threshold = OFF_DIAGONAL_TOL * m.frobenius_norm().max(1.0);

    let off_norm = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    s += a[i * d + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::IterationLimitExceeded { sweeps });
        }
        sweeps += 1;
        for p in 0..d {
            for q in (p + 1)..d {
                rotate(&mut a, &mut v, d, p, q);
            }
        }
        converged = off_norm(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[i * d + i].re.total_cmp(&a[j * d + j].re).then(i.cmp(&j)));

    let eigenvalues = order.iter().map(|&k| a[k * d + k].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| {
            let mut w: Vec<Complex64> = (0..d).map(|i| v[i * d + k]).collect();
            if let Some(lead) = w.iter().find(|z| z.norm() > PHASE_EPS).copied() {
                let phase = lead.conj() / lead.norm();
                for z in &mut w {
                    *z *= phase;
                }
            }
            w
        })
        .collect();

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// One complex Jacobi rotation zeroing `a[p][q]`.
///
/// The unitary is `U = D R` with `D = diag(1, conj(e))` removing the phase `e`
/// of `a[p][q]` and `R` the real rotation `[[c, s], [-s, c]]` on the
/// resulting real symmetric 2x2 block. Applies `a <- U^dagger a U`, `v <- v U`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], d: usize, p: usize, q: usize) {
    let apq = a[p * d + q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let e = apq / g;
    let app = a[p * d + p].re;
    let aqq = a[q * d + q].re;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Columns p, q of a and v: X <- X U.
    let upq = Complex64::new(s, 0.0);
    let uqp = -e.conj() * s;
    let uqq = e.conj() * c;
    for k in 0..d {
        let (xp, xq) = (a[k * d + p], a[k * d + q]);
        a[k * d + p] = xp * c + xq * uqp;
        a[k * d + q] = xp * upq + xq * uqq;
        let (wp, wq) = (v[k * d + p], v[k * d + q]);
        v[k * d + p] = wp * c + wq * uqp;
        v[k * d + q] = wp * upq + wq * uqq;
    }
    // Rows p, q of a: X <- U^dagger X.
    for k in 0..d {
        let (xp, xq) = (a[p * d + k], a[q * d + k]);
        a[p * d + k] = xp * c + xq * uqp.conj();
        a[q * d + k] = xp * upq + xq * uqq.conj();
    }
    a[p * d + q] = Complex64::new(0.0, 0.0);
    a[q * d + p] = Complex64::new(0.0, 0.0);
    a[p * d + p].im = 0.0;
    a[q * d + q].im = 0.0;
}

/// True iff the smallest eigenvalue is at least `-tol`.
pub fn is_psd(m: &HermitianMatrix, tol: f64) -> Result<bool> {
    Ok(hermitian_eigendecompose(m)?.min_eigenvalue() >= -tol)
}

/// Number of eigenvalues with `|lambda| > tol * max(1, max |lambda|)`.
pub fn matrix_rank(m: &HermitianMatrix, tol: f64) -> Result<usize> {
    let eig = hermitian_eigendecompose(m)?;
    Ok(rank_of_spectrum(&eig.eigenvalues, tol))
}

pub(crate) fn rank_of_spectrum(eigenvalues: &[f64], tol: f64) -> usize {
    let cutoff = tol * eigenvalues.iter().fold(1.0f64, |m, l| m.max(l.abs()));
    eigenvalues.iter().filter(|l| l.abs() > cutoff).count()
}

/// `M^{-1/2}` for a positive definite `M`.
pub fn inverse_sqrt(m: &HermitianMatrix) -> Result<HermitianMatrix> {
    let eig = hermitian_eigendecompose(m)?;
    let inv: Vec<f64> = eig.eigenvalues.iter().map(|l| 1.0 / l.sqrt()).collect();
    Ok(HermitianMatrix::from_spectrum(&inv, &eig.eigenvectors))
}

/// `B M B` for Hermitian `B` and `M`.
pub fn congruence(b: &HermitianMatrix, m: &HermitianMatrix) -> HermitianMatrix {
    let d = m.dim;
    let product = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let xik = x[i * d + k];
                for j in 0..d {
                    out[i * d + j] += xik * y[k * d + j];
                }
            }
        }
        out
    };
    let bm = product(&b.entries, &m.entries);
    let mut out = HermitianMatrix {
        dim: d,
        entries: product(&bm, &b.entries),
    };
    out.symmetrize();
    out
}
