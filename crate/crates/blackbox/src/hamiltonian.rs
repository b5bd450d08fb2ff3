//! Effective Hamiltonians built on extracted modes.
//!
//! Two constructions live here. The first expands a Josephson element
//! against the linear modes of its embedding network: each mode becomes a
//! harmonic term and the junction contributes the nonlinear remainder
//! -E_J (cos phi + phi^2/2 - 1), whose quadratic part has already been
//! absorbed into the modes. The second is a charge-qubit-plus-resonator
//! product-space Hamiltonian for dispersive-readout studies.

use circuits::constants::{ELEMENTARY_CHARGE, GHZ_H, HBAR};
use circuits::CircuitParams;
use mathieu_core::DenseSym;

use crate::error::BlackboxError;
use crate::modes::{mode_operators, Mode, ModeSet};

/// One harmonic mode dressed with its zero-point amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeTerm {
    /// Mode frequency, rad/s.
    pub omega: f64,
    /// Effective impedance, ohms.
    pub z_eff: f64,
    /// Mode quantum omega/(2 pi) in GHz.
    pub energy_ghz: f64,
    /// Zero-point flux, webers.
    pub phi_zpf: f64,
    /// Zero-point charge, coulombs.
    pub q_zpf: f64,
    /// Zero-point flux in units of the reduced flux quantum hbar/(2e);
    /// this is the dimensionless phase amplitude entering cos(phi).
    pub phi_zpf_reduced: f64,
}

impl ModeTerm {
    pub fn from_mode(mode: &Mode) -> Self {
        let (phi_zpf, q_zpf) = mode_operators(mode);
        Self {
            omega: mode.omega,
            z_eff: mode.z_eff,
            energy_ghz: mode.omega / (2.0 * std::f64::consts::PI * 1e9),
            phi_zpf,
            q_zpf,
            phi_zpf_reduced: phi_zpf / (HBAR / (2.0 * ELEMENTARY_CHARGE)),
        }
    }
}

/// Junction-plus-modes Hamiltonian with the junction's quadratic part
/// already folded into the mode frequencies.
#[derive(Debug, Clone)]
pub struct EffectiveHamiltonian {
    pub modes: Vec<ModeTerm>,
    /// Josephson energy in GHz (units of h).
    pub e_j: f64,
}

impl EffectiveHamiltonian {
    pub fn new(set: &ModeSet, e_j_ghz: f64) -> Result<Self, BlackboxError> {
        if !(e_j_ghz.is_finite() && e_j_ghz >= 0.0) {
            return Err(BlackboxError::InvalidField {
                field: "e_j_ghz",
                reason: format!("must be nonnegative and finite, got {e_j_ghz}"),
            });
        }
        Ok(Self {
            modes: set.modes.iter().map(ModeTerm::from_mode).collect(),
            e_j: e_j_ghz,
        })
    }

    /// Nonlinear remainder -E_J (cos phi + phi^2/2 - 1) in GHz.
    ///
    /// The direct expression cancels catastrophically for small phi (three
    /// O(1) terms summing to O(phi^4)), so below |phi| = 1/2 it switches to
    /// the even Taylor tail through phi^12, whose truncation error at the
    /// crossover is ~3e-13 relative and shrinks rapidly inward.
    pub fn remainder_energy(&self, phi: f64) -> f64 {
        let u = phi * phi;
        let series = if phi.abs() < 0.5 {
            u * u
                * (1.0 / 24.0
                    + u * (-1.0 / 720.0
                        + u * (1.0 / 40_320.0
                            + u * (-1.0 / 3_628_800.0 + u / 479_001_600.0))))
        } else {
            phi.cos() + u / 2.0 - 1.0
        };
        -self.e_j * series
    }

    /// Coefficient of phi^4 in the remainder: -E_J/24, GHz.
    pub fn quartic_coefficient(&self) -> f64 {
        -self.e_j / 24.0
    }

    /// Quartic coefficient projected onto mode j: the prefactor of
    /// (a_j + a_j^dag)^4 after phi -> phi_zpf_reduced (a + a^dag), GHz.
    pub fn quartic_mode_prefactor(&self, j: usize) -> f64 {
        let r = self.modes[j].phi_zpf_reduced;
        self.quartic_coefficient() * r * r * r * r
    }

    /// True when there is no junction and the model is purely harmonic.
    pub fn is_linear(&self) -> bool {
        self.e_j == 0.0
    }
}

/// Charge qubit capacitively coupled to a single resonator mode.
#[derive(Debug, Clone)]
pub struct CqedParams {
    pub circuit: CircuitParams,
    /// Resonator frequency, rad/s.
    pub omega_r: f64,
    /// Resonator capacitance, farads.
    pub c_r: f64,
    /// Capacitive division ratio of the coupling, in [0, 1).
    pub beta: f64,
    /// Highest retained Fock state; photon numbers run 0..=fock_cutoff.
    pub fock_cutoff: usize,
}

/// Hard cap on the product-space dimension; dense eigensolves beyond this
/// are better done with a smarter basis than with more patience.
pub const MAX_PRODUCT_DIM: usize = 20_000;

impl CqedParams {
    pub fn new(
        circuit: CircuitParams,
        omega_r: f64,
        c_r: f64,
        beta: f64,
        fock_cutoff: usize,
    ) -> Result<Self, BlackboxError> {
        if !(omega_r.is_finite() && omega_r > 0.0) {
            return Err(BlackboxError::InvalidField {
                field: "omega_r",
                reason: format!("must be positive and finite, got {omega_r}"),
            });
        }
        if !(c_r.is_finite() && c_r > 0.0) {
            return Err(BlackboxError::InvalidField {
                field: "c_r",
                reason: format!("must be positive and finite, got {c_r}"),
            });
        }
        if !(beta.is_finite() && (0.0..1.0).contains(&beta)) {
            return Err(BlackboxError::InvalidField {
                field: "beta",
                reason: format!("must lie in [0, 1), got {beta}"),
            });
        }
        if fock_cutoff == 0 {
            return Err(BlackboxError::InvalidField {
                field: "fock_cutoff",
                reason: "need at least one photon state above vacuum".into(),
            });
        }
        let p = Self {
            circuit,
            omega_r,
            c_r,
            beta,
            fock_cutoff,
        };
        let dim = p.dim();
        if dim > MAX_PRODUCT_DIM {
            return Err(BlackboxError::DimensionOverflow {
                dim,
                max: MAX_PRODUCT_DIM,
            });
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.circuit.basis_dim() * (self.fock_cutoff + 1)
    }

    /// Root-mean-square vacuum voltage sqrt(hbar omega_r / (2 C_r)), volts.
    pub fn v_rms(&self) -> f64 {
        (HBAR * self.omega_r / (2.0 * self.c_r)).sqrt()
    }
}

/// Dense product-space Hamiltonian in GHz (units of h).
///
/// Basis index is charge-major: state (n, k) with charge index
/// n in -N..=N and photon number k maps to (n + N) * (fock_cutoff + 1) + k.
/// Terms: the charge qubit 4 E_C (n - N_g)^2 - (E_J*/2) sum |n><n+1| + h.c.,
/// the photon energy k * omega_r/(2 pi), and the capacitive coupling
/// 2 beta e V_rms n (a + a^dag).
pub fn cqed_hamiltonian(p: &CqedParams) -> Result<DenseSym, BlackboxError> {
    let cutoff = p.circuit.charge_cutoff as i64;
    let n_charge = p.circuit.basis_dim();
    let n_fock = p.fock_cutoff + 1;
    let mut h = DenseSym::zeros(n_charge * n_fock);
    let idx = |ci: usize, k: usize| ci * n_fock + k;

    let e_c = p.circuit.e_c;
    let e_j = p.circuit.e_j_effective();
    let photon_ghz = p.omega_r / (2.0 * std::f64::consts::PI * 1e9);
    let coupling_ghz = 2.0 * p.beta * ELEMENTARY_CHARGE * p.v_rms() / GHZ_H;

    for ci in 0..n_charge {
        let n = ci as i64 - cutoff;
        let detuned = n as f64 - p.circuit.n_g;
        for k in 0..n_fock {
            h.set(idx(ci, k), idx(ci, k), 4.0 * e_c * detuned * detuned + photon_ghz * k as f64);
            if ci + 1 < n_charge {
                h.set(idx(ci, k), idx(ci + 1, k), -e_j / 2.0);
            }
            if k + 1 < n_fock {
                h.set(
                    idx(ci, k),
                    idx(ci, k + 1),
                    coupling_ghz * n as f64 * ((k + 1) as f64).sqrt(),
                );
            }
        }
    }
    Ok(h)
}
