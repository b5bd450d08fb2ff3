//! Parameter and state types for the damped, parametrically driven oscillator
//!
//! ```text
//! x'' + gamma x' + (delta + epsilon cos(omega t)) x = 0
//! ```
//!
//! `delta` is the squared natural frequency of the undriven oscillator,
//! `epsilon` the drive strength, `omega` the drive frequency and `gamma` a
//! linear damping rate. Parametric resonance is strongest when `omega` is
//! twice the natural frequency, i.e. near delta = (omega/2)^2 n^2.

use crate::error::MathieuError;
use crate::integrate::SecondOrderOde;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MathieuParams {
    pub delta: f64,
    pub epsilon: f64,
    pub omega: f64,
    pub gamma: f64,
}

impl MathieuParams {
    pub fn new(delta: f64, epsilon: f64, omega: f64, gamma: f64) -> Result<Self, MathieuError> {
        for (field, value) in [
            ("delta", delta),
            ("epsilon", epsilon),
            ("omega", omega),
            ("gamma", gamma),
        ] {
            if !value.is_finite() {
                return Err(MathieuError::InvalidField {
                    field,
                    reason: format!("must be finite, got {value}"),
                });
            }
        }
        if omega <= 0.0 {
            return Err(MathieuError::InvalidField {
                field: "omega",
                reason: format!("drive frequency must be positive, got {omega}"),
            });
        }
        if gamma < 0.0 {
            return Err(MathieuError::InvalidField {
                field: "gamma",
                reason: format!("damping must be nonnegative, got {gamma}"),
            });
        }
        Ok(Self {
            delta,
            epsilon,
            omega,
            gamma,
        })
    }

    /// Drive period 2 pi / omega.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }
}

impl SecondOrderOde for MathieuParams {
    fn accel(&self, t: f64, x: f64, v: f64) -> f64 {
        -self.gamma * v - (self.delta + self.epsilon * (self.omega * t).cos()) * x
    }

    fn period(&self) -> f64 {
        MathieuParams::period(self)
    }
}

/// Oscillator phase-space state at a given time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscState {
    pub x: f64,
    pub v: f64,
    pub t: f64,
}

impl OscState {
    pub fn new(x: f64, v: f64, t: f64) -> Result<Self, MathieuError> {
        for (field, value) in [("x", x), ("v", v), ("t", t)] {
            if !value.is_finite() {
                return Err(MathieuError::InvalidField {
                    field,
                    reason: format!("must be finite, got {value}"),
                });
            }
        }
        Ok(Self { x, v, t })
    }
}
