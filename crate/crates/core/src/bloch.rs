//! Generalized Gell-Mann basis of SU(d) and generalized Bloch vectors.
//!
//! A unit-trace Hermitian operator is written as
//! `E = I/d + 1/2 sum_j v_j lambda_j` with `tr(lambda_i lambda_j) = 2 delta_ij`,
//! so `v_j = tr(E lambda_j)`. Pure states have `|v| = sqrt(2(d-1)/d)`.

use crate::linalg::{Complex64, HermitianMatrix};
use crate::{Error, Result};

/// Unit-trace tolerance accepted by [`to_bloch`].
pub const UNIT_TRACE_TOL: f64 = 1e-9;

/// The `d^2 - 1` generalized Gell-Mann matrices in a fixed order:
///
/// 1. symmetric `|j><k| + |k><j|` for `j < k`, pairs in lexicographic order;
/// 2. antisymmetric `-i|j><k| + i|k><j|` for `j < k`, same pair order;
/// 3. diagonal `sqrt(2/(l(l+1))) (sum_{m<l} |m><m| - l |l><l|)` for `l = 1..d-1`.
///
/// For `d = 2` this is `(sigma_x, sigma_y, sigma_z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    dim: usize,
    generators: Vec<HermitianMatrix>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[HermitianMatrix] {
        &self.generators
    }

    /// `d^2 - 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Real coordinates of a unit-trace operator in a [`GeneratorBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector(pub Vec<f64>);

impl BlochVector {
    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

/// Length of the Bloch vector of any pure state in dimension `d`.
pub fn pure_state_norm(d: usize) -> f64 {
    (2.0 * (d as f64 - 1.0) / d as f64).sqrt()
}

pub fn generator_basis(d: usize) -> Result<GeneratorBasis> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let zero = Complex64::new(0.0, 0.0);
    let with_entries = |set: &[(usize, usize, Complex64)]| {
        let mut entries = vec![zero; d * d];
        for &(i, j, z) in set {
            entries[i * d + j] = z;
        }
        HermitianMatrix::new(d, entries).expect("generator entries are finite")
    };

    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|j| ((j + 1)..d).map(move |k| (j, k)))
        .collect();
    let mut generators = Vec::with_capacity(d * d - 1);
    for &(j, k) in &pairs {
        let one = Complex64::new(1.0, 0.0);
        generators.push(with_entries(&[(j, k, one), (k, j, one)]));
    }
    for &(j, k) in &pairs {
        generators.push(with_entries(&[
            (j, k, Complex64::new(0.0, -1.0)),
            (k, j, Complex64::new(0.0, 1.0)),
        ]));
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; d];
        diag[..l].fill(norm);
        diag[l] = -(l as f64) * norm;
        generators.push(HermitianMatrix::diagonal(&diag));
    }
    Ok(GeneratorBasis { dim: d, generators })
}

/// `v_j = tr(e lambda_j)` for a unit-trace Hermitian `e`.
pub fn to_bloch(e: &HermitianMatrix, basis: &GeneratorBasis) -> Result<BlochVector> {
    if e.dim() != basis.dim {
        return Err(Error::LengthMismatch {
            expected: basis.dim,
            found: e.dim(),
        });
    }
    let trace = e.trace();
    if (trace - 1.0).abs() > UNIT_TRACE_TOL {
        return Err(Error::NotUnitTrace { trace });
    }
    Ok(BlochVector(
        basis
            .generators
            .iter()
            .map(|g| e.trace_product(g))
            .collect(),
    ))
}

/// `I/d + 1/2 sum_j v_j lambda_j`.
pub fn from_bloch(v: &BlochVector, basis: &GeneratorBasis) -> Result<HermitianMatrix> {
    if v.0.len() != basis.len() {
        return Err(Error::LengthMismatch {
            expected: basis.len(),
            found: v.0.len(),
        });
    }
    let d = basis.dim;
    Ok(v.0.iter().zip(&basis.generators).fold(
        HermitianMatrix::identity(d).scale(1.0 / d as f64),
        |acc, (&x, g)| acc + g.scale(0.5 * x),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn qubit_basis_is_pauli() {
        let b = generator_basis(2).unwrap();
        let sx = HermitianMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let sy = HermitianMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let sz = HermitianMatrix::diagonal(&[1.0, -1.0]);
        assert_eq!(b.generators(), &[sx, sy, sz]);
    }

    #[test]
    fn orthogonality_and_tracelessness() {
        for d in 2..=5 {
            let b = generator_basis(d).unwrap();
            assert_eq!(b.len(), d * d - 1);
            for (i, gi) in b.generators().iter().enumerate() {
                assert!(gi.trace().abs() < 1e-12);
                for (j, gj) in b.generators().iter().enumerate() {
                    let expect = if i == j { 2.0 } else { 0.0 };
                    assert!((gi.trace_product(gj) - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn dimension_too_small() {
        assert_eq!(generator_basis(1), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn maximally_mixed_is_origin() {
        let b = generator_basis(3).unwrap();
        let v = to_bloch(&HermitianMatrix::identity(3).scale(1.0 / 3.0), &b).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn ket_zero_points_up() {
        let b = generator_basis(2).unwrap();
        let v = to_bloch(&HermitianMatrix::diagonal(&[1.0, 0.0]), &b).unwrap();
        assert_eq!(v.0, vec![0.0, 0.0, 1.0]);
        assert!((v.norm() - pure_state_norm(2)).abs() < 1e-12);
    }

    #[test]
    fn south_pole_is_ket_one() {
        let b = generator_basis(2).unwrap();
        let m = from_bloch(&BlochVector(vec![0.0, 0.0, -1.0]), &b).unwrap();
        assert!(m.max_abs_diff(&HermitianMatrix::diagonal(&[0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn zero_vector_gives_maximally_mixed() {
        let b = generator_basis(4).unwrap();
        let m = from_bloch(&BlochVector(vec![0.0; 15]), &b).unwrap();
        assert!(m.max_abs_diff(&HermitianMatrix::identity(4).scale(0.25)) < 1e-15);
    }

    #[test]
    fn not_unit_trace() {
        let b = generator_basis(2).unwrap();
        assert!(matches!(
            to_bloch(&HermitianMatrix::identity(2), &b),
            Err(Error::NotUnitTrace { .. })
        ));
    }

    #[test]
    fn length_mismatch() {
        let b = generator_basis(2).unwrap();
        assert_eq!(
            from_bloch(&BlochVector(vec![0.0; 8]), &b),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 8
            })
        );
    }
}
