use thiserror::Error;

/// Ways a Choi matrix can fail validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChoiViolation {
    #[error("dimension violation: expected 4, found {0}")]
    Dimension(usize),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("Hermiticity violation: max |C - C^dagger| = {residual:e}")]
    Hermiticity { residual: f64 },
    #[error("trace violation: Tr(C) = {trace}, |Tr(C) - 2| = {deviation:e}")]
    Trace { trace: f64, deviation: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix is not Hermitian: max |M - M^dagger| = {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary: max |U^dagger U - I| = {residual:e}")]
    NotUnitary { residual: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps: off-diagonal norm {residual:e}")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("linear system is singular (rank deficient)")]
    Singular,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid Choi matrix: {0}")]
    InvalidChoi(#[from] ChoiViolation),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures of the numerical routines themselves, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }

    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension",
            Error::NotHermitian { .. } => "not-hermitian",
            Error::NotUnitary { .. } => "not-unitary",
            Error::NoConvergence { .. } => "convergence",
            Error::Singular => "singular",
            Error::Domain(_) => "domain",
            Error::InvalidChoi(_) => "validation",
            Error::Config(_) => "config",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
