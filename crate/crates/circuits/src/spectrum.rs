//! Charge-basis Hamiltonian and spectra.
//!
//! In the basis of island charge states |n>, n = -cutoff..cutoff, the device
//! Hamiltonian is symmetric tridiagonal: 4 E_C (n - N_g)^2 on the diagonal
//! and -E_J*/2 coupling neighboring charge states (each Cooper pair tunneled
//! changes n by one). All energies in GHz·h.

use mathieu_core::{MathieuError, SymTridiagonal};
use rayon::prelude::*;

use crate::params::{CircuitParams, Spectrum};

pub fn hamiltonian_matrix(p: &CircuitParams) -> SymTridiagonal {
    let dim = p.basis_dim();
    let cutoff = p.charge_cutoff as f64;
    let diag: Vec<f64> = (0..dim)
        .map(|i| {
            let n = i as f64 - cutoff;
            4.0 * p.e_c * (n - p.n_g) * (n - p.n_g)
        })
        .collect();
    let off = vec![-0.5 * p.e_j_effective(); dim - 1];
    SymTridiagonal::new(diag, off).expect("validated params give a well-formed matrix")
}

/// Full ascending spectrum of the device.
pub fn eigensolve(p: &CircuitParams) -> Result<Spectrum, MathieuError> {
    let eigenvalues = hamiltonian_matrix(p).eigenvalues()?;
    Ok(Spectrum {
        params: *p,
        eigenvalues,
    })
}

/// Only the lowest `count` levels, via Sturm bisection (cheaper for sweeps
/// that need a few bands out of a large basis).
pub fn eigensolve_lowest(p: &CircuitParams, count: usize) -> Result<Vec<f64>, MathieuError> {
    hamiltonian_matrix(p).lowest_eigenvalues(count)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    GateCharge,
    FluxPhase,
}

/// One spectrum per grid value, sweeping either the gate charge or the flux
/// phase. Grid points are independent and evaluated in parallel; the output
/// order is the grid order regardless of scheduling.
pub fn spectrum_sweep(
    base: &CircuitParams,
    axis: SweepAxis,
    grid: &[f64],
) -> Result<Vec<Spectrum>, MathieuError> {
    if grid.is_empty() {
        return Err(MathieuError::InvalidField {
            field: "grid",
            reason: "sweep grid must be nonempty".into(),
        });
    }
    grid.par_iter()
        .map(|&value| {
            let p = match axis {
                SweepAxis::GateCharge => base.with_n_g(value)?,
                SweepAxis::FluxPhase => base.with_delta_flux(value)?,
            };
            eigensolve(&p)
        })
        .collect()
}

/// Number of gate-charge samples used by `charge_dispersion`.
pub const DISPERSION_GRID_POINTS: usize = 51;

/// Peak-to-peak variation of band `m` over one gate-charge period N_g in
/// [0, 1], sampled on a uniform 51-point grid.
pub fn charge_dispersion(p: &CircuitParams, band: usize) -> Result<f64, MathieuError> {
    if band >= p.basis_dim() {
        return Err(MathieuError::InvalidField {
            field: "band",
            reason: format!("band {band} outside basis of dim {}", p.basis_dim()),
        });
    }
    let n = DISPERSION_GRID_POINTS;
    let levels: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let n_g = i as f64 / (n - 1) as f64;
            let point = p.with_n_g(n_g)?;
            Ok(eigensolve_lowest(&point, band + 1)?[band])
        })
        .collect::<Result<_, MathieuError>>()?;
    let max = levels.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = levels.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(max - min)
}
