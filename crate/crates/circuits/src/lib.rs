//! Josephson-circuit models in the truncated charge basis.
//!
//! A gated superconducting island with one or two junctions is described by
//! [`CircuitParams`]; its Hamiltonian is a symmetric tridiagonal matrix over
//! charge states ([`spectrum`]). Spectra versus gate charge and flux, charge
//! dispersion, and the two charging-energy conventions live here, together
//! with the bridge to the dimensionless Mathieu problem: `to_mathieu` for
//! drive parameters and `band_energy_mathieu` for the characteristic-value
//! band approximation ([`bands`]), validated against the eigensolver.

pub mod bands;
pub mod constants;
pub mod params;
pub mod spectrum;

pub use bands::{band_energy_mathieu, k_index, plasma_frequency, to_mathieu};
pub use params::{
    charging_energy, effective_ej, CapacitanceSpec, CircuitParams, EcConvention, Spectrum,
};
pub use spectrum::{
    charge_dispersion, eigensolve, eigensolve_lowest, hamiltonian_matrix, spectrum_sweep,
    SweepAxis, DISPERSION_GRID_POINTS,
};
