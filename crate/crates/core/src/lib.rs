//! Decomposition of finite-outcome POVMs into convex combinations of
//! extremal rank-1 POVMs followed by a classical relabeling of outcomes.
//!
//! The pipeline is:
//!
//! 1. [`povm::validate_povm`] turns raw operators into a [`WeightedPovm`]
//!    (weights `a_i` and unit-trace elements `E_i`).
//! 2. [`povm::prepare_rank1`] splits higher-rank elements along their
//!    eigenbases and records where each new outcome came from.
//! 3. [`decompose::decompose`] encodes the completeness condition
//!    `sum_i a_i E_i = I` as the linear feasibility problem `A x = b, x >= 0`
//!    over generalized Bloch vectors and peels off one simplex vertex at a time.
//! 4. [`ordered::ordered_decompose`] does the same with vertices ranked by a
//!    preference (fewest outcomes, largest `sum x_i^2`).
//!
//! ```
//! use povm_decomp::{decompose, standard};
//!
//! let bb84 = standard::bb84();
//! let d = decompose(&bb84).unwrap();
//! assert_eq!(d.terms.len(), 2);
//! assert!((d.terms[0].probability - 0.5).abs() < 1e-9);
//! ```

pub mod bloch;
pub mod decompose;
pub mod dense;
mod error;
pub mod files;
pub mod linalg;
pub mod ordered;
pub mod povm;
pub mod random;
pub mod simplex;
pub mod standard;
mod tolerance;

pub use bloch::{from_bloch, generator_basis, to_bloch, BlochVector, GeneratorBasis};
pub use decompose::{
    build_feasibility_lp, check_extremal, decompose, decompose_with, extract_step,
    separating_vector, ColumnGroup, Decomposition, ExtractionStep, ExtremalityReason,
    ExtremalityReport, Term,
};
pub use error::{Error, Result};
pub use linalg::{
    hermitian_eigendecompose, is_psd, matrix_rank, Complex64, EigenDecomposition, HermitianMatrix,
};
pub use ordered::{
    enumerate_vertices, ordered_decompose, povm_catalog, q_bounds, q_cost, CatalogVertex, Strategy,
    VertexCatalog,
};
pub use povm::{
    povm_equal, prepare_rank1, validate_povm, Outcome, PreparedPovm, RelabelMap, WeightedPovm,
};
pub use simplex::{
    find_vertex, optimize, BasicFeasibleSolution, Feasibility, InfeasibilityCertificate, StandardLp,
};
pub use tolerance::Tolerances;
