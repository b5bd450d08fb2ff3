//! Total admittance of the series chain and its frequency derivative.
//!
//! With branch admittances y_j, the series impedance is Z = sum_j 1/y_j and
//! the input admittance Y = 1/Z. Zeros of Y sit exactly at the branch
//! resonances: when one y_j vanishes its reciprocal dominates the sum, so Y
//! goes to zero regardless of the other branches.

use num_complex::Complex64;

use crate::error::BlackboxError;
use crate::network::RlcNetwork;

fn branch_admittances(
    net: &RlcNetwork,
    omega: f64,
) -> Result<Vec<Complex64>, BlackboxError> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(BlackboxError::InvalidField {
            field: "omega",
            reason: format!("must be positive and finite, got {omega}"),
        });
    }
    let ys: Vec<Complex64> = net.branches().iter().map(|b| b.admittance(omega)).collect();
    if ys.iter().any(|y| y.norm_sqr() == 0.0) {
        return Err(BlackboxError::Singularity { omega });
    }
    Ok(ys)
}

/// Input admittance Y(omega) = [sum_j 1/y_j]^{-1}, siemens.
pub fn admittance(net: &RlcNetwork, omega: f64) -> Result<Complex64, BlackboxError> {
    let ys = branch_admittances(net, omega)?;
    let z: Complex64 = ys.iter().map(|y| y.inv()).sum();
    if z.norm_sqr() == 0.0 {
        return Err(BlackboxError::Singularity { omega });
    }
    Ok(z.inv())
}

/// Analytic dY/domega.
///
/// Direct differentiation of Y = 1/Z gives Y' = sum_j y_j'/y_j^2 / Z^2,
/// which loses all precision at a branch resonance where one y_j tends to
/// zero (0/0 after the 1/Z^2 cancellation). Factoring out the smallest
/// branch admittance y_j and writing Z = (1 + y_j R)/y_j with
/// R = sum_{k != j} 1/y_k turns this into
///
/// ```text
///   Y' = (y_j' - y_j^2 R') / (1 + y_j R)^2,   R' = -sum_{k != j} y_k'/y_k^2
/// ```
///
/// which is perfectly conditioned as y_j -> 0: the limit is simply y_j'.
pub fn admittance_derivative(
    net: &RlcNetwork,
    omega: f64,
) -> Result<Complex64, BlackboxError> {
    let ys = branch_admittances(net, omega)?;
    let j = ys
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.norm_sqr().total_cmp(&b.norm_sqr()))
        .map(|(i, _)| i)
        .expect("network is nonempty");
    let mut r = Complex64::new(0.0, 0.0);
    let mut r_prime = Complex64::new(0.0, 0.0);
    for (k, (y, branch)) in ys.iter().zip(net.branches()).enumerate() {
        if k == j {
            continue;
        }
        r += y.inv();
        r_prime -= branch.admittance_derivative(omega) / (y * y);
    }
    let y_j = ys[j];
    let y_j_prime = net.branches()[j].admittance_derivative(omega);
    let denom = Complex64::new(1.0, 0.0) + y_j * r;
    if denom.norm_sqr() == 0.0 {
        return Err(BlackboxError::Singularity { omega });
    }
    Ok((y_j_prime - y_j * y_j * r_prime) / (denom * denom))
}

/// Central finite difference with relative step, for cross-checking the
/// analytic derivative away from resonances.
pub fn admittance_derivative_fd(
    net: &RlcNetwork,
    omega: f64,
    rel_step: f64,
) -> Result<Complex64, BlackboxError> {
    let h = omega * rel_step;
    let hi = admittance(net, omega + h)?;
    let lo = admittance(net, omega - h)?;
    Ok((hi - lo) / (2.0 * h))
}

/// Sample Y over a uniform frequency grid; rows are (omega, Re Y, Im Y).
/// Frequencies that land exactly on a branch resonance are reported with
/// Y = 0, which is the true limiting value there.
pub fn admittance_scan(
    net: &RlcNetwork,
    omega_min: f64,
    omega_max: f64,
    count: usize,
) -> Result<Vec<(f64, f64, f64)>, BlackboxError> {
    if !(omega_min.is_finite() && omega_min > 0.0 && omega_max > omega_min) {
        return Err(BlackboxError::InvalidField {
            field: "omega range",
            reason: format!("need 0 < omega_min < omega_max, got [{omega_min}, {omega_max}]"),
        });
    }
    if count < 2 {
        return Err(BlackboxError::InvalidField {
            field: "count",
            reason: "need at least 2 scan points".into(),
        });
    }
    let n = count as f64 - 1.0;
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let w = (omega_min * (n - i as f64) + omega_max * i as f64) / n;
        match admittance(net, w) {
            Ok(y) => rows.push((w, y.re, y.im)),
            Err(BlackboxError::Singularity { .. }) => rows.push((w, 0.0, 0.0)),
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}
