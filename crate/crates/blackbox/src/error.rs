use mathieu_core::MathieuError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BlackboxError {
    #[error("invalid {field}: {reason}")]
    InvalidField { field: &'static str, reason: String },

    #[error("netlist line {line}: {reason}")]
    Netlist { line: usize, reason: String },

    /// The admittance (or its derivative) is not finite at this frequency:
    /// a lossless branch resonance (impedance pole) or a network resonance
    /// (admittance pole) was hit exactly.
    #[error("admittance singular at omega = {omega} rad/s")]
    Singularity { omega: f64 },

    #[error("mode search failed: {reason}")]
    ModeSearch { reason: String },

    #[error("product basis dimension {dim} exceeds the limit of {max}")]
    DimensionOverflow { dim: usize, max: usize },

    #[error(transparent)]
    Core(#[from] MathieuError),
}
