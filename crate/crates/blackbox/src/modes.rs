//! Normal-mode extraction from the input admittance.
//!
//! For a lossless network the modes sit at the zeros of Im Y(omega), and
//! each mode's effective impedance follows from the slope there:
//!
//! ```text
//!   z_eff = 2 / (omega_m * Im Y'(omega_m))
//! ```
//!
//! Zeros of Y coincide with the branch resonances 1/sqrt(L_j C_j), so each
//! resonance seeds a bisection bracket that is guaranteed to contain exactly
//! one zero. Foster's reactance theorem makes Im Y strictly increasing
//! between poles, so the sign change across each zero is clean.

use num_complex::Complex64;

use circuits::constants::HBAR;

use crate::admittance::{admittance, admittance_derivative};
use crate::error::BlackboxError;
use crate::network::RlcNetwork;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    /// Mode frequency, rad/s.
    pub omega: f64,
    /// Effective impedance sqrt(L_eff/C_eff), ohms.
    pub z_eff: f64,
}

#[derive(Debug, Clone)]
pub struct ModeSet {
    pub modes: Vec<Mode>,
    pub source: RlcNetwork,
}

/// Cap on the relative bisection bracket half-width around each seed.
const MAX_BRACKET_REL: f64 = 1e-3;
/// Bisection stops when the bracket is this narrow relative to omega.
const BISECT_REL_TOL: f64 = 1e-14;

/// Im Y, treating an exact branch-resonance hit as the zero it is.
fn im_y(net: &RlcNetwork, omega: f64) -> Result<f64, BlackboxError> {
    match admittance(net, omega) {
        Ok(y) => Ok(y.im),
        Err(BlackboxError::Singularity { .. }) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// dY/domega, falling back to the dominant branch's derivative when omega
/// sits exactly on that branch's zero (the limit of the full expression).
fn derivative_at_root(net: &RlcNetwork, omega: f64) -> Result<Complex64, BlackboxError> {
    match admittance_derivative(net, omega) {
        Ok(d) => Ok(d),
        Err(BlackboxError::Singularity { .. }) => {
            let branch = net
                .branches()
                .iter()
                .find(|b| b.admittance(omega).norm_sqr() == 0.0)
                .ok_or(BlackboxError::Singularity { omega })?;
            Ok(branch.admittance_derivative(omega))
        }
        Err(e) => Err(e),
    }
}

/// Locate all normal modes of a lossless network.
///
/// Returns one mode per branch, sorted by frequency. Fails if the network
/// has lossy branches, if a bracket fails to straddle a sign change, or if
/// the admittance slope at a root is not positive.
pub fn find_modes(net: &RlcNetwork) -> Result<ModeSet, BlackboxError> {
    if !net.is_lossless() {
        return Err(BlackboxError::ModeSearch {
            reason: "mode extraction requires a lossless network (drop the R terms)".into(),
        });
    }
    let mut seeds: Vec<f64> = net.branches().iter().map(|b| b.resonance()).collect();
    seeds.sort_by(f64::total_cmp);
    let min_gap = seeds
        .windows(2)
        .map(|p| (p[1] - p[0]) / p[1])
        .fold(f64::INFINITY, f64::min);
    let half_width = (0.25 * min_gap).min(MAX_BRACKET_REL);

    let mut modes = Vec::with_capacity(seeds.len());
    for &seed in &seeds {
        let mut lo = seed * (1.0 - half_width);
        let mut hi = seed * (1.0 + half_width);
        let f_lo = im_y(net, lo)?;
        let f_hi = im_y(net, hi)?;
        let root = if f_lo == 0.0 {
            lo
        } else if f_hi == 0.0 {
            hi
        } else if f_lo < 0.0 && f_hi > 0.0 {
            let mut root = None;
            while hi - lo > BISECT_REL_TOL * hi {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let f_mid = im_y(net, mid)?;
                if f_mid == 0.0 {
                    root = Some(mid);
                    break;
                } else if f_mid < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            root.unwrap_or_else(|| 0.5 * (lo + hi))
        } else {
            return Err(BlackboxError::ModeSearch {
                reason: format!(
                    "Im Y does not change sign over [{lo}, {hi}] around seed {seed} rad/s \
                     (endpoints {f_lo} and {f_hi})"
                ),
            });
        };

        let slope = derivative_at_root(net, root)?.im;
        if !(slope > 0.0) {
            return Err(BlackboxError::ModeSearch {
                reason: format!(
                    "Im Y' = {slope} at root {root} rad/s; a passive zero needs positive slope"
                ),
            });
        }
        modes.push(Mode {
            omega: root,
            z_eff: 2.0 / (root * slope),
        });
    }
    modes.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(ModeSet {
        modes,
        source: net.clone(),
    })
}

/// Zero-point amplitudes of the mode's flux and charge operators:
/// phi_zpf = sqrt(hbar z/2) in webers, q_zpf = sqrt(hbar/(2z)) in coulombs.
/// Their product is hbar/2, as the uncertainty bound requires.
pub fn mode_operators(mode: &Mode) -> (f64, f64) {
    let phi_zpf = (HBAR * mode.z_eff / 2.0).sqrt();
    let q_zpf = (HBAR / (2.0 * mode.z_eff)).sqrt();
    (phi_zpf, q_zpf)
}
