//! Mapping the charge-basis device onto the canonical Mathieu problem.
//!
//! Dividing the charge-basis Hamiltonian by E_C makes it the Hill matrix of
//! the canonical Mathieu equation: diagonal (2(n - N_g))^2, off-diagonal
//! q = -E_J*/(2 E_C). Band m at gate charge N_g is therefore a Mathieu
//! characteristic value of fractional order nu = 2(N_g + k) where the
//! integer k picks the branch whose q = 0 limit is the m-th charging level.
//!
//! `k_index` implements a closed-form branch index with two conventions
//! pinned here: int(.) rounds half away from zero, and (m+1)/2 is integer
//! floor division. Hand analysis (mirrored in the tests) shows the closed
//! form selects the physical branch only for N_g strictly inside (0, 1/2):
//! its m = 0 bracket can never reach the k = -1 the upper half-period
//! needs. The spectrum's exact mirror symmetry E_m(N_g) = E_m(1 - N_g)
//! (nu -> -nu, under which the characteristic value is even) supplies the
//! upper half instead, as k -> -1 - k. At the degeneracy points
//! N_g in {0, 1/2, 1} the formula leaves the ascending eigensolve order,
//! so the eigensolve remains the ground truth and cross-validation points
//! avoid exact degeneracies.

use mathieu_core::{char_value, MathieuError, MathieuParams, DEFAULT_TRUNCATION};

use crate::constants::{GHZ_H, HBAR};
use crate::params::CircuitParams;

fn round_half_away(x: f64) -> i64 {
    x.round() as i64
}

/// Branch index k(m, N_g): on the lower half-period the sum over
/// l = +1, -1 of
///
/// ```text
/// k_l = [int(2 N_g + l/2) mod 2] * {int(N_g) + l (-1)^m floor((m+1)/2)}
/// ```
///
/// and on N_g in (1/2, 1] the mirror -1 - k(m, 1 - N_g), so that
/// nu = 2(N_g + k) reproduces the gate-symmetric spectrum everywhere.
/// Defined for m >= 0 and N_g in [0, 1]; piecewise constant in N_g.
pub fn k_index(m: usize, n_g: f64) -> i64 {
    if n_g > 0.5 {
        return -1 - k_index(m, 1.0 - n_g);
    }
    let half_pairs = (m as i64 + 1) / 2;
    let sign = if m % 2 == 0 { 1 } else { -1 };
    let mut k = 0;
    for l in [1i64, -1] {
        let parity = round_half_away(2.0 * n_g + l as f64 / 2.0).rem_euclid(2);
        let bracket = round_half_away(n_g) + l * sign * half_pairs;
        k += parity * bracket;
    }
    k
}

/// Dimensionless Mathieu parameters of the device driven so that the
/// kinetic scale E_k sets the stiffness: delta = 4 E_k / E_C,
/// epsilon = E_J* / E_C, on the pi-periodic clock (Omega = 2), undamped.
pub fn to_mathieu(p: &CircuitParams, e_k: f64) -> Result<MathieuParams, MathieuError> {
    if !e_k.is_finite() {
        return Err(MathieuError::InvalidField {
            field: "e_k",
            reason: format!("must be finite, got {e_k}"),
        });
    }
    MathieuParams::new(4.0 * e_k / p.e_c, p.e_j_effective() / p.e_c, 2.0, 0.0)
}

/// Band energy from the Mathieu characteristic value:
/// E_m(N_g) = E_C a_nu(q) with nu = 2(N_g + k(m, N_g)), q = -E_J*/(2 E_C).
pub fn band_energy_mathieu(
    m: usize,
    n_g: f64,
    p: &CircuitParams,
) -> Result<f64, MathieuError> {
    if !(0.0..=1.0).contains(&n_g) {
        return Err(MathieuError::InvalidField {
            field: "n_g",
            reason: format!("band formula is defined on [0, 1], got {n_g}"),
        });
    }
    let nu = 2.0 * (n_g + k_index(m, n_g) as f64);
    let q = -p.e_j_effective() / (2.0 * p.e_c);
    let truncation = DEFAULT_TRUNCATION.max(2 * nu.abs().ceil() as usize + 24);
    Ok(p.e_c * char_value(nu, q, truncation)?.value)
}

/// Josephson plasma frequency omega_p = sqrt(8 E_J* E_C) / hbar in rad/s
/// (the square-root form, which is the dimensionally consistent one).
pub fn plasma_frequency(p: &CircuitParams) -> f64 {
    (8.0 * p.e_j_effective() * p.e_c).sqrt() * GHZ_H / HBAR
}
