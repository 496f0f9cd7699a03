//! Random states and POVMs for tests and demos.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{congruence, inverse_sqrt, Complex64, HermitianMatrix};
use crate::povm::{validate_povm, WeightedPovm};
use crate::{Result, Tolerances};

fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Haar-random unit vector in `C^d`.
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Complex64> {
    let v = gaussian_vector(rng, d);
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Completes arbitrary PSD operators `F_i` (with invertible sum `S`) to the
/// POVM `S^{-1/2} F_i S^{-1/2}`.
pub fn complete(raw: &[HermitianMatrix]) -> Result<WeightedPovm> {
    let d = raw[0].dim();
    let total = raw.iter().skip(1).fold(raw[0].clone(), |acc, m| &acc + m);
    let s = inverse_sqrt(&total)?;
    let elements: Vec<HermitianMatrix> = raw.iter().map(|m| congruence(&s, m)).collect();
    validate_povm(&elements, d, &Tolerances::default())
}

/// `n` rank-1 elements along Haar-random directions, completed to a POVM.
pub fn random_rank1_povm<R: Rng + ?Sized>(rng: &mut R, d: usize, n: usize) -> Result<WeightedPovm> {
    let raw: Vec<HermitianMatrix> = (0..n)
        .map(|_| HermitianMatrix::outer(&haar_state(rng, d)))
        .collect();
    complete(&raw)
}

/// `n` full-rank elements `X X^dagger` with Gaussian `X`, completed to a POVM.
pub fn random_full_rank_povm<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    n: usize,
) -> Result<WeightedPovm> {
    let raw: Vec<HermitianMatrix> = (0..n)
        .map(|_| {
            (0..d)
                .map(|_| HermitianMatrix::outer(&gaussian_vector(rng, d)))
                .fold(HermitianMatrix::zeros(d), |acc, m| acc + m)
        })
        .collect();
    complete(&raw)
}

/// Random Hermitian matrix with trace one (not necessarily PSD).
pub fn random_unit_trace_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> HermitianMatrix {
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        entries[i * d + i] = Complex64::new(rng.sample(StandardNormal), 0.0);
        for j in i + 1..d {
            let z = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            entries[i * d + j] = z;
            entries[j * d + i] = z.conj();
        }
    }
    let m = HermitianMatrix::new(d, entries).expect("finite samples");
    let shift = (1.0 - m.trace()) / d as f64;
    m + HermitianMatrix::identity(d).scale(shift)
}
