use thiserror::Error;

use crate::specfun::SpecFunError;

/// Errors raised by the solvers and the data model.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CasimirError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("geometry precondition violated: {0}")]
    Geometry(String),

    #[error(transparent)]
    SpecialFunction(#[from] SpecFunError),

    #[error("material table: {0}")]
    MaterialTable(String),

    #[error("interpolation at kappa = {kappa} lies outside the table range [{min}, {max}]")]
    Extrapolation { kappa: f64, min: f64, max: f64 },

    #[error("I - N is singular (log|det| = {0}); the round-trip assembly is broken")]
    SingularDeterminant(f64),

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFiniteMatrix { row: usize, col: usize },

    #[error(
        "quadrature did not converge after {nodes} nodes: last estimates {previous:e} and {last:e}"
    )]
    QuadratureNotConverged {
        nodes: usize,
        previous: f64,
        last: f64,
    },

    #[error("Matsubara sum did not converge within {terms} terms (last term {last_term:e})")]
    MatsubaraNotConverged { terms: usize, last_term: f64 },

    #[error("truncation did not converge up to order {order}: last change {change:e}")]
    TruncationNotConverged { order: usize, change: f64 },

    #[error("finite-difference step too small: difference {difference:e} is below the noise floor {noise:e}")]
    StepTooSmall { difference: f64, noise: f64 },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

pub type Result<T> = std::result::Result<T, CasimirError>;
