use thiserror::Error;

/// Errors raised by the numerical routines and state constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("invalid local dimension {0} (must be at least 2)")]
    InvalidDimension(usize),

    #[error("matrix is not orthogonal (max |o o^T - I| = {deviation:e})")]
    NotOrthogonal { deviation: f64 },

    #[error("trace is not one (|tr - 1| = {deviation:e})")]
    TraceNotOne { deviation: f64 },

    #[error("not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("coefficient {name} has imaginary residue {residue:e}")]
    ImaginaryResidue { name: String, residue: f64 },

    #[error("reconstructed operator is not a state: {0}")]
    ReconstructionNotPositive(Box<Error>),

    #[error("state vector is not normalized (|norm - 1| = {deviation:e})")]
    NormViolation { deviation: f64 },

    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("closed form and matrix path disagree at {at}: {closed} vs {matrix}")]
    CrossCheck { at: String, closed: f64, matrix: f64 },
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
