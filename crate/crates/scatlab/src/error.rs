use thiserror::Error;

/// Errors produced by the computational modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("quadrature did not converge in {context}: error estimate {achieved:.3e} > {requested:.3e}")]
    QuadratureNonConvergence {
        context: String,
        achieved: f64,
        requested: f64,
    },

    #[error("grid refinement did not converge: delta {achieved:.3e} > {requested:.3e}")]
    RefinementNonConvergence { achieved: f64, requested: f64 },

    #[error("step size underflow at r = {r:.6e}; the input looks stiff or pathological")]
    StepUnderflow { r: f64 },

    #[error("floating-point range exceeded: {0}")]
    RangeExceeded(String),

    #[error("incomplete table: {0}")]
    IncompleteTable(String),

    #[error("truncation tolerance violated at the grid edge: |L| = {observed:.3e} > {tolerance:.3e}")]
    TruncationViolation { observed: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
