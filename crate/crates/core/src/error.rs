use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants split into two families: malformed input (shape mismatches, parse
/// failures, violated invariants) and domain failures (singular problems,
/// degenerate systems, residual checks). [`Error::is_input_error`] tells them
/// apart for the command-line exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("number of variables must be at least 1")]
    NoVariables,

    #[error("the zero polynomial has no degree")]
    ZeroPolynomialDegree,

    #[error("factor {index} has total degree {degree}, expected at most 1")]
    NotLinear { index: usize, degree: u32 },

    #[error("variable index {var} out of range for {nvars} variables")]
    VariableOutOfRange { var: usize, nvars: usize },

    #[error("duplicate exponent vector {0:?}")]
    DuplicateExponent(Vec<u32>),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("{count} solution(s) have no exact rational certificate")]
    Inexact { count: usize },

    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("invalid degree sequence: {0}")]
    InvalidDegrees(String),

    #[error("size mismatch: {conditions} conditions against a basis of dimension {basis}")]
    SizeMismatch { conditions: usize, basis: usize },

    #[error("knot {second} repeats knot {first}")]
    DuplicateKnot { first: usize, second: usize },

    #[error("knot {index} has invalid multiplicity {multiplicity}")]
    InvalidMultiplicity { index: usize, multiplicity: u32 },

    #[error("invalid condition set at knot {index}: {reason}")]
    InvalidConditions { index: usize, reason: String },

    #[error("knot {index} has multiplicity {multiplicity}; use the Hermite matrix")]
    MultiplicityPresent { index: usize, multiplicity: u32 },

    #[error("knot set is not poised for the basis (determinant 0)")]
    NotPoised,

    #[error("polynomial is constant; it has no roots to find")]
    ConstantPolynomial,

    #[error("neither polynomial depends on the elimination variable {var}")]
    NothingToEliminate { var: usize },

    #[error("coordinate change stayed degenerate after {attempts} attempts")]
    Degenerate { attempts: usize },

    #[error("solution {index} fails the residual check ({residual:e} >= {tol:e})")]
    ResidualCheck { index: usize, residual: f64, tol: f64 },

    #[error("operation supports {supported} variables, got {nvars}")]
    UnsupportedDimension { nvars: usize, supported: &'static str },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("axis {axis} repeats coordinate {value}")]
    RepeatedCoordinate { axis: usize, value: String },

    #[error("no annihilating polynomial of degree {degree} in variable {var} exists for these knots")]
    NoAnnihilator { var: usize, degree: u32 },

    #[error("{context}: {message}")]
    Parse { context: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for malformed input, false for failures of the mathematical problem itself.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::Singular
                | Error::Inexact { .. }
                | Error::NotPoised
                | Error::NoConvergence { .. }
                | Error::Degenerate { .. }
                | Error::ResidualCheck { .. }
                | Error::NoAnnihilator { .. }
                | Error::ZeroPolynomialDegree
                | Error::ConstantPolynomial
                | Error::NothingToEliminate { .. }
        )
    }

    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
