//! Physical constants (exact SI values) and the energy-unit convention.
//!
//! Energies throughout the workspace are stored in GHz·h: the numeric value
//! is E/h in GHz. Conversions to and from joules go through `GHZ_H`, the one
//! place the unit convention is pinned.

/// Elementary charge in coulombs (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Planck constant in joule-seconds (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant in joule-seconds.
pub const HBAR: f64 = PLANCK / (2.0 * std::f64::consts::PI);

/// One GHz·h of energy, in joules.
pub const GHZ_H: f64 = PLANCK * 1e9;

pub fn joules_to_ghz(energy_j: f64) -> f64 {
    energy_j / GHZ_H
}

pub fn ghz_to_joules(energy_ghz: f64) -> f64 {
    energy_ghz * GHZ_H
}
