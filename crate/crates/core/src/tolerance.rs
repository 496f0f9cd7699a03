/// Numerical thresholds shared by every stage of the pipeline.
///
/// One value is threaded through validation, preparation, the simplex solver
/// and the decomposition loop so that a single knob changes them consistently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative eigenvalue cutoff used by rank computations.
    pub rank: f64,
    /// Most negative eigenvalue an element may have and still count as PSD.
    pub psd: f64,
    /// Maximum elementwise deviation of `sum_i E_i` from the identity.
    pub completeness: f64,
    /// Weights at or below this are treated as exactly zero.
    pub zero_weight: f64,
    /// Smallest tableau entry the simplex method will pivot on.
    pub pivot: f64,
    /// Phase-I objective value below which an LP is declared feasible.
    pub feasibility: f64,
    /// Elementwise distance under which two unit-trace projectors are merged.
    pub merge: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: 1e-9,
            psd: 1e-9,
            completeness: 1e-9,
            zero_weight: 1e-10,
            pivot: 1e-9,
            feasibility: 1e-9,
            merge: 1e-9,
        }
    }
}

impl Tolerances {
    /// Defaults with the validation thresholds (PSD and completeness) replaced.
    pub fn with_validation(tol: f64) -> Self {
        Self {
            psd: tol,
            completeness: tol,
            ..Self::default()
        }
    }
}
