use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {0} is too small, at least 2 is required")]
    DimensionTooSmall(usize),
    #[error("operator has trace {trace}, expected 1")]
    NotUnitTrace { trace: f64 },
    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("Jacobi diagonalization did not converge within {sweeps} sweeps")]
    IterationLimitExceeded { sweeps: usize },
    #[error("POVM has no nonzero elements")]
    EmptyPovm,
    #[error("element {index} is not positive semidefinite (min eigenvalue {min_eigenvalue})")]
    NotPsd { index: usize, min_eigenvalue: f64 },
    #[error("elements do not sum to the identity (max deviation {residual})")]
    NotComplete { residual: f64 },
    #[error("malformed linear program: {0}")]
    MalformedLp(String),
    #[error("simplex stalled: {0}")]
    NumericalStall(String),
    #[error("objective is unbounded along column {column}")]
    Unbounded { column: usize },
    #[error("linear program has no cost vector")]
    MissingCost,
    #[error("invalid starting solution: {0}")]
    InvalidStart(String),
    #[error("residual coefficients are not feasible; upstream data is inconsistent")]
    InternalInfeasible,
    #[error("{columns} columns exceed the enumeration cap of {cap}")]
    TooLarge { columns: usize, cap: usize },
    #[error("inconsistent file contents: {0}")]
    InvalidFile(String),
    #[error(
        "Q bounds are only known for 2 to 4 outcomes in dimension 2 (got n={outcomes}, d={dim})"
    )]
    Unsupported { outcomes: usize, dim: usize },
}

impl Error {
    /// Stable identifier of the variant, used in machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionTooSmall(_) => "DimensionTooSmall",
            Error::NotUnitTrace { .. } => "NotUnitTrace",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonFinite => "NonFinite",
            Error::IterationLimitExceeded { .. } => "IterationLimitExceeded",
            Error::EmptyPovm => "EmptyPovm",
            Error::NotPsd { .. } => "NotPsd",
            Error::NotComplete { .. } => "NotComplete",
            Error::MalformedLp(_) => "MalformedLp",
            Error::NumericalStall(_) => "NumericalStall",
            Error::Unbounded { .. } => "Unbounded",
            Error::MissingCost => "MissingCost",
            Error::InvalidStart(_) => "InvalidStart",
            Error::InternalInfeasible => "InternalInfeasible",
            Error::TooLarge { .. } => "TooLarge",
            Error::InvalidFile(_) => "InvalidFile",
            Error::Unsupported { .. } => "Unsupported",
        }
    }

    /// True for errors caused by an input that is not a valid POVM.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::EmptyPovm
                | Error::NotPsd { .. }
                | Error::NotComplete { .. }
                | Error::DimensionMismatch { .. }
                | Error::NonFinite
                | Error::DimensionTooSmall(_)
        )
    }
}
