use thiserror::Error;

/// Errors surfaced by the library. Each variant maps to a stable error code
/// used by the CLI when reporting structured errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Coxeter type: {0}")]
    UnsupportedType(String),

    #[error("invalid Coxeter matrix: {0}")]
    InvalidCoxeterMatrix(String),

    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: String,
        needed: usize,
        cap: usize,
    },

    #[error("monoid closure exceeded budget of {0} elements")]
    ClosureBudgetExceeded(usize),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("minor size {s} exceeds matrix dimensions {rows}x{cols}")]
    InvalidS { s: usize, rows: usize, cols: usize },

    #[error("mark matrix is singular over the requested field")]
    SingularMarkMatrix,

    #[error("idempotent iteration failed to converge after {0} steps")]
    NoConvergence(usize),

    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("degenerate arrangement: {0}")]
    DegenerateArrangement(String),

    #[error("not a left regular band: {0}")]
    NotLeftRegularBand(String),

    #[error("simple-module labels do not match: {0}")]
    LabelMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Stable machine-readable code for structured error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnsupportedType(_) => "UnsupportedType",
            Error::InvalidCoxeterMatrix(_) => "InvalidCoxeterMatrix",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::ClosureBudgetExceeded(_) => "ClosureBudgetExceeded",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::InvalidS { .. } => "InvalidS",
            Error::SingularMarkMatrix => "SingularMarkMatrix",
            Error::NoConvergence(_) => "NoConvergence",
            Error::CrossCheckFailed(_) => "CrossCheckFailed",
            Error::InvalidAlgebra(_) => "InvalidAlgebra",
            Error::DegenerateArrangement(_) => "DegenerateArrangement",
            Error::NotLeftRegularBand(_) => "NotLeftRegularBand",
            Error::LabelMismatch(_) => "LabelMismatch",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }

    /// Exit code the CLI should use: budget exhaustion is distinguishable
    /// from wrong answers and invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } | Error::ClosureBudgetExceeded(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
