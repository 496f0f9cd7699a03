//! Browser demo on equatorial qubit POVMs.
//!
//! Directions are azimuths in degrees on the equator of the Bloch sphere.
//! Each operation has a plain Rust form returning a JSON string, wrapped for
//! JavaScript by `wasm_bindgen`.

use std::f64::consts::PI;

use povm_decomp::random::complete;
use povm_decomp::standard::equatorial_projector;
use povm_decomp::{
    generator_basis, hermitian_eigendecompose, ordered_decompose, povm_catalog, separating_vector,
    to_bloch, BlochVector, HermitianMatrix, Strategy, Tolerances, WeightedPovm,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Column cap for the ranked strategies and enumeration.
pub const DEMO_ENUM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Element {
    pub azimuth: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermView {
    pub probability: f64,
    /// `(element index, weight within the term)`.
    pub outcomes: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionView {
    pub elements: Vec<Element>,
    pub terms: Vec<TermView>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HemisphereView {
    /// Azimuth of a direction with every element strictly behind it, if any.
    pub separating_azimuth: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexView {
    /// Element indices with nonzero weight.
    pub support: Vec<usize>,
    /// Weight of each support entry.
    pub weights: Vec<f64>,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogView {
    pub elements: Vec<Element>,
    pub vertices: Vec<VertexView>,
}

/// Parses comma or whitespace separated degrees.
pub fn parse_angles(text: &str) -> Result<Vec<f64>, String> {
    let angles: Vec<f64> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| format!("not a number: {s:?}")))
        .collect::<Result<_, _>>()?;
    if angles.len() < 2 {
        return Err("at least two directions are needed".into());
    }
    Ok(angles)
}

fn azimuth_of(e: &HermitianMatrix) -> f64 {
    // E = (I + x X + y Y + z Z) / 2 has E_01 = (x - i y) / 2.
    let z = e.get(0, 1);
    let a = (-z.im).atan2(z.re).to_degrees().rem_euclid(360.0);
    // Normalizes -0.
    if a == 0.0 {
        0.0
    } else {
        a
    }
}

fn projectors(angles: &[f64]) -> Vec<HermitianMatrix> {
    angles
        .iter()
        .map(|a| equatorial_projector(a * PI / 180.0))
        .collect()
}

/// Rescales the projectors at `angles` into a POVM with `S^{-1/2}`, which
/// keeps every direction on the equator but may rotate it.
pub fn povm_from_angles(angles: &[f64]) -> Result<WeightedPovm, String> {
    let raw = projectors(angles);
    let total = raw
        .iter()
        .fold(HermitianMatrix::zeros(2), |acc, p| &acc + p);
    let lowest = hermitian_eigendecompose(&total)
        .map_err(|e| e.to_string())?
        .min_eigenvalue();
    if lowest < 1e-6 {
        return Err("directions must not all coincide".into());
    }
    complete(&raw).map_err(|e| e.to_string())
}

fn elements(povm: &WeightedPovm) -> Vec<Element> {
    povm.outcomes()
        .iter()
        .map(|o| Element {
            azimuth: azimuth_of(&o.element),
            weight: o.weight,
        })
        .collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("views serialize")
}

pub fn decompose_angles(angles: &str, strategy: &str) -> Result<String, String> {
    let strategy: Strategy = strategy.parse()?;
    let povm = povm_from_angles(&parse_angles(angles)?)?;
    let dec = ordered_decompose(&povm, strategy, DEMO_ENUM_CAP, &Tolerances::default())
        .map_err(|e| e.to_string())?;
    let terms = dec
        .terms
        .iter()
        .enumerate()
        .map(|(k, t)| TermView {
            probability: t.probability,
            outcomes: dec
                .expanded_outcomes(k)
                .iter()
                .map(|o| (o.original_label, o.weight))
                .collect(),
        })
        .collect();
    Ok(to_json(&DecompositionView {
        elements: elements(&povm),
        terms,
        residual: dec.reconstruction_residual(&povm),
    }))
}

/// Checks whether the raw directions fit in one open half-plane, in which
/// case no POVM can be built from them.
pub fn hemisphere_test(angles: &str) -> Result<String, String> {
    let basis = generator_basis(2).map_err(|e| e.to_string())?;
    let vectors: Vec<BlochVector> = projectors(&parse_angles(angles)?)
        .iter()
        .map(|p| to_bloch(p, &basis))
        .collect::<povm_decomp::Result<_>>()
        .map_err(|e| e.to_string())?;
    // Only the off-diagonal entry of sum_j nu_j G_j matters for the azimuth.
    let azimuth = separating_vector(&vectors).map(|nu| {
        let m = basis
            .generators()
            .iter()
            .zip(&nu)
            .fold(HermitianMatrix::zeros(2), |acc, (g, c)| &acc + &g.scale(*c));
        azimuth_of(&m)
    });
    Ok(to_json(&HemisphereView {
        separating_azimuth: azimuth,
    }))
}

pub fn enumerate_angles(angles: &str) -> Result<String, String> {
    let povm = povm_from_angles(&parse_angles(angles)?)?;
    let (groups, catalog) =
        povm_catalog(&povm, DEMO_ENUM_CAP, &Tolerances::default()).map_err(|e| e.to_string())?;
    let vertices = catalog
        .vertices
        .iter()
        .map(|v| VertexView {
            support: v
                .support()
                .iter()
                .map(|&j| groups[j].representative)
                .collect(),
            weights: v.support().iter().map(|&j| v.solution.x[j]).collect(),
            q: v.q_value,
        })
        .collect();
    Ok(to_json(&CatalogView {
        elements: elements(&povm),
        vertices,
    }))
}

#[wasm_bindgen(js_name = decompose)]
pub fn js_decompose(angles: &str, strategy: &str) -> Result<String, JsValue> {
    decompose_angles(angles, strategy).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = hemisphere)]
pub fn js_hemisphere(angles: &str) -> Result<String, JsValue> {
    hemisphere_test(angles).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = enumerate)]
pub fn js_enumerate(angles: &str) -> Result<String, JsValue> {
    enumerate_angles(angles).map_err(|e| JsValue::from_str(&e))
}
