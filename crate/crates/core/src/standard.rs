//! Frequently used qubit POVMs.

use std::f64::consts::PI;

use crate::linalg::{Complex64, HermitianMatrix};
use crate::povm::{validate_povm, WeightedPovm};
use crate::Tolerances;

/// Pure qubit state with Bloch vector `(cos(theta) cos(phi), cos(theta) sin(phi), sin(theta))`
/// where `theta` is the latitude.
pub fn qubit_projector(latitude: f64, longitude: f64) -> HermitianMatrix {
    let polar = PI / 2.0 - latitude;
    let psi = [
        Complex64::new((polar / 2.0).cos(), 0.0),
        Complex64::from_polar((polar / 2.0).sin(), longitude),
    ];
    HermitianMatrix::outer(&psi)
}

/// Equatorial projector at azimuth `phi`: `(I + cos(phi) X + sin(phi) Y) / 2`.
pub fn equatorial_projector(phi: f64) -> HermitianMatrix {
    qubit_projector(0.0, phi)
}

fn validated(elements: &[HermitianMatrix]) -> WeightedPovm {
    validate_povm(elements, elements[0].dim(), &Tolerances::default())
        .expect("built-in POVM is valid")
}

pub fn stern_gerlach_z_elements() -> Vec<HermitianMatrix> {
    vec![
        HermitianMatrix::diagonal(&[1.0, 0.0]),
        HermitianMatrix::diagonal(&[0.0, 1.0]),
    ]
}

pub fn stern_gerlach_x_elements() -> Vec<HermitianMatrix> {
    vec![equatorial_projector(0.0), equatorial_projector(PI)]
}

pub fn stern_gerlach_z() -> WeightedPovm {
    validated(&stern_gerlach_z_elements())
}

pub fn stern_gerlach_x() -> WeightedPovm {
    validated(&stern_gerlach_x_elements())
}

/// `{|0><0|/2, |1><1|/2, |+><+|/2, |-><-|/2}`.
pub fn bb84_elements() -> Vec<HermitianMatrix> {
    stern_gerlach_z_elements()
        .into_iter()
        .chain(stern_gerlach_x_elements())
        .map(|m| m.scale(0.5))
        .collect()
}

pub fn bb84() -> WeightedPovm {
    validated(&bb84_elements())
}

/// `n` equatorial projectors at azimuths `2 pi k / n`, each with weight `2/n`.
pub fn regular_polygon_elements(n: usize) -> Vec<HermitianMatrix> {
    (0..n)
        .map(|k| equatorial_projector(2.0 * PI * k as f64 / n as f64).scale(2.0 / n as f64))
        .collect()
}

/// Five equatorial rank-1 elements at azimuths `2 pi k / 5`, weights `2/5`.
pub fn pentagon() -> WeightedPovm {
    validated(&regular_polygon_elements(5))
}

/// The symmetric trine: three equatorial projectors 120 degrees apart, weights `2/3`.
pub fn trine() -> WeightedPovm {
    validated(&regular_polygon_elements(3))
}

/// `{|0><0|/2, |0><0|/2 + |1><1|}`, a full-rank two-outcome POVM.
pub fn coin_toss_elements() -> Vec<HermitianMatrix> {
    vec![
        HermitianMatrix::diagonal(&[0.5, 0.0]),
        HermitianMatrix::diagonal(&[0.5, 1.0]),
    ]
}

pub fn coin_toss() -> WeightedPovm {
    validated(&coin_toss_elements())
}
