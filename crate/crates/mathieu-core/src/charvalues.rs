//! Characteristic values of the canonical Mathieu equation
//!
//! ```text
//! y'' + (a - 2 q cos 2t) y = 0
//! ```
//!
//! Expanding a solution of Floquet order nu as sum_k c_k exp(i (nu + 2k) t)
//! turns the equation into an eigenvalue problem for the infinite symmetric
//! tridiagonal Hill matrix with diagonal (nu + 2k)^2 and off-diagonal q; the
//! characteristic value a_nu(q) is the eigenvalue continued from nu^2 at
//! q = 0. Integer orders split by parity into the classical a_n (even) and
//! b_n (odd) families, each with its own tridiagonal matrix over cosine or
//! sine Fourier coefficients.
//!
//! All matrices are truncated; every returned value carries a convergence
//! certificate: the change under doubling the matrix dimension, which must
//! stay below 1e-10 or the computation is rejected.
//!
//! The drive form delta + epsilon cos 2t maps onto the canonical form with
//! a = delta, q = -epsilon / 2; `canonical_params` is the single place that
//! encodes this convention.

use crate::error::MathieuError;
use crate::linalg::SymTridiagonal;

/// Map the drive-form coefficients (delta + epsilon cos 2t) to the canonical
/// (a, q) of a - 2 q cos 2t: a = delta, q = -epsilon / 2.
pub fn canonical_params(delta: f64, epsilon: f64) -> (f64, f64) {
    (delta, -epsilon / 2.0)
}

/// Matrix dimension used when the caller has no reason to pick one.
pub const DEFAULT_TRUNCATION: usize = 60;

/// A converged characteristic value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharValue {
    /// Floquet order nu (integer orders are the a_n / b_n families).
    pub order: f64,
    pub q: f64,
    pub value: f64,
    /// Matrix dimension actually used.
    pub truncation: usize,
    /// Convergence certificate: |value(2 * dim) - value(dim)|.
    pub doubling_delta: f64,
}

/// The (a_n, b_n) pair for integer order n; b_0 does not exist.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPair {
    pub a: CharValue,
    pub b: Option<CharValue>,
}

const CERTIFICATE_TOL: f64 = 1e-10;

fn validate_inputs(order: f64, q: f64, truncation: usize) -> Result<(), MathieuError> {
    if !order.is_finite() {
        return Err(MathieuError::InvalidField {
            field: "order",
            reason: format!("must be finite, got {order}"),
        });
    }
    if !q.is_finite() {
        return Err(MathieuError::InvalidField {
            field: "q",
            reason: format!("must be finite, got {q}"),
        });
    }
    let min_dim = 2 * order.abs().ceil() as usize + 20;
    if truncation < min_dim {
        return Err(MathieuError::InvalidField {
            field: "truncation",
            reason: format!(
                "dimension {truncation} too small for order {order}; need at least {min_dim}"
            ),
        });
    }
    Ok(())
}

/// Characteristic value a_nu(q) for Floquet order nu.
///
/// Integer orders return the even-parity a_n; fractional orders use the
/// exponential-basis Hill matrix, tracking the eigenvalue continued from
/// nu^2 by stepping q from 0 to avoid branch jumps. For fractional nu the
/// value is even in both nu and q.
pub fn char_value(order: f64, q: f64, truncation: usize) -> Result<CharValue, MathieuError> {
    validate_inputs(order, q, truncation)?;
    if order.fract() == 0.0 {
        let n = order.abs() as u32;
        integer_char(n, q, truncation, Parity::Even)
    } else {
        fractional_char(order, q, truncation)
    }
}

/// The classical pair (a_n, b_n) for integer order n; b_0 does not exist.
pub fn char_pair(n: u32, q: f64, truncation: usize) -> Result<CharPair, MathieuError> {
    validate_inputs(n as f64, q, truncation)?;
    let a = integer_char(n, q, truncation, Parity::Even)?;
    let b = if n == 0 {
        None
    } else {
        Some(integer_char(n, q, truncation, Parity::Odd)?)
    };
    Ok(CharPair { a, b })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Parity {
    Even, // a_n, cosine-series solutions
    Odd,  // b_n, sine-series solutions
}

fn integer_char(
    n: u32,
    q: f64,
    truncation: usize,
    parity: Parity,
) -> Result<CharValue, MathieuError> {
    if parity == Parity::Odd && n == 0 {
        return Err(MathieuError::InvalidField {
            field: "order",
            reason: "b_0 does not exist; odd-parity orders start at n = 1".into(),
        });
    }
    let v1 = integer_eigenvalue(n, q, truncation, parity)?;
    let v2 = integer_eigenvalue(n, q, 2 * truncation, parity)?;
    let delta = (v2 - v1).abs();
    if delta > CERTIFICATE_TOL {
        return Err(MathieuError::CharNonConvergence {
            order: n as f64,
            q,
            truncation,
            delta,
        });
    }
    Ok(CharValue {
        order: n as f64,
        q,
        value: v1,
        truncation,
        doubling_delta: delta,
    })
}

/// Eigenvalue selection for the parity-split matrices. Within one parity
/// class the characteristic curves never cross, so ascending order indexes
/// them directly.
fn integer_eigenvalue(
    n: u32,
    q: f64,
    dim: usize,
    parity: Parity,
) -> Result<f64, MathieuError> {
    let n = n as usize;
    let (matrix, index) = match (parity, n % 2) {
        (Parity::Even, 0) => {
            // ce_{2r}: diag (2m)^2 with the sqrt(2) q corner coupling A_0-A_2.
            let diag: Vec<f64> = (0..dim).map(|m| (2.0 * m as f64).powi(2)).collect();
            let mut off = vec![q; dim - 1];
            off[0] = std::f64::consts::SQRT_2 * q;
            (SymTridiagonal::new(diag, off)?, n / 2)
        }
        (Parity::Even, _) => {
            // ce_{2r+1}: diag (2m+1)^2 with the 1 + q corner.
            let mut diag: Vec<f64> = (0..dim).map(|m| (2.0 * m as f64 + 1.0).powi(2)).collect();
            diag[0] = 1.0 + q;
            (SymTridiagonal::new(diag, vec![q; dim - 1])?, (n - 1) / 2)
        }
        (Parity::Odd, 0) => {
            // se_{2r+2}: diag (2m+2)^2.
            let diag: Vec<f64> = (0..dim).map(|m| (2.0 * m as f64 + 2.0).powi(2)).collect();
            (SymTridiagonal::new(diag, vec![q; dim - 1])?, n / 2 - 1)
        }
        (Parity::Odd, _) => {
            // se_{2r+1}: diag (2m+1)^2 with the 1 - q corner.
            let mut diag: Vec<f64> = (0..dim).map(|m| (2.0 * m as f64 + 1.0).powi(2)).collect();
            diag[0] = 1.0 - q;
            (SymTridiagonal::new(diag, vec![q; dim - 1])?, (n - 1) / 2)
        }
    };
    Ok(matrix.eigenvalues()?[index])
}

fn fractional_char(order: f64, q: f64, truncation: usize) -> Result<CharValue, MathieuError> {
    // The Hill matrix is centered on the k = 0 frequency, so the dimension is
    // odd: 2K + 1 >= truncation.
    let k_half = truncation / 2;
    let v1 = track_branch(order, q, k_half)?;
    let v2 = track_branch(order, q, 2 * k_half)?;
    let delta = (v2 - v1).abs();
    if delta > CERTIFICATE_TOL {
        return Err(MathieuError::CharNonConvergence {
            order,
            q,
            truncation,
            delta,
        });
    }
    Ok(CharValue {
        order,
        q,
        value: v1,
        truncation: 2 * k_half + 1,
        doubling_delta: delta,
    })
}

/// Follow the eigenvalue branch starting at order^2 from q = 0 to the target
/// by stepping q and picking the nearest eigenvalue at each step. For
/// fractional orders the spectrum is even in q (a diagonal similarity flips
/// the off-diagonal sign), so only |q| matters.
fn track_branch(order: f64, q: f64, k_half: usize) -> Result<f64, MathieuError> {
    let dim = 2 * k_half + 1;
    let diag: Vec<f64> = (0..dim)
        .map(|i| {
            let k = i as f64 - k_half as f64;
            let freq = order + 2.0 * k;
            freq * freq
        })
        .collect();
    let q_abs = q.abs();
    let steps = ((q_abs / 0.25).ceil() as usize).max(1);
    let mut tracked = order * order;
    for step in 1..=steps {
        let qi = q_abs * step as f64 / steps as f64;
        let m = SymTridiagonal::new(diag.clone(), vec![qi; dim - 1])?;
        let evs = m.eigenvalues()?;
        tracked = *evs
            .iter()
            .min_by(|a, b| {
                (*a - tracked)
                    .abs()
                    .partial_cmp(&(*b - tracked).abs())
                    .expect("eigenvalues are finite")
            })
            .expect("matrix dimension is at least 1");
    }
    Ok(tracked)
}
