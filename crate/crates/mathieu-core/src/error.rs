use thiserror::Error;

/// Errors surfaced by the Mathieu kernel. Validation failures name the
/// offending field so config-level callers can report it directly.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum MathieuError {
    #[error("invalid {field}: {reason}")]
    InvalidField { field: &'static str, reason: String },

    #[error("eigenvalue {index} failed to converge after {iterations} QL sweeps")]
    EigenNonConvergence { index: usize, iterations: usize },

    #[error(
        "step size underflowed at t = {t} (last state x = {x}, v = {v}); \
         the problem is too stiff for the requested tolerance"
    )]
    StepSizeUnderflow { t: f64, x: f64, v: f64 },

    #[error("integration exceeded {max_steps} steps at t = {t}")]
    MaxStepsExceeded { t: f64, max_steps: usize },

    #[error(
        "characteristic value for order {order}, q = {q} did not converge: \
         doubling the Hill matrix dimension from {truncation} moved the value by {delta:e}"
    )]
    CharNonConvergence {
        order: f64,
        q: f64,
        truncation: usize,
        delta: f64,
    },
}
