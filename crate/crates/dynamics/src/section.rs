//! Stroboscopic (Poincare) sections of the driven pendulum.
//!
//! The phase point (x, v) is recorded once per drive period, with the
//! angle wrapped into (-pi, pi]. Regular trajectories trace closed curves
//! or finite point sets on the section; chaotic ones smear into area.

use mathieu_core::{IntegratorControls, MathieuError, OscState};
use rayon::prelude::*;

use crate::pendulum::PendulumParams;

/// Wrap an angle into the half-open interval (-pi, pi].
///
/// Inputs already in range pass through bit-exactly; out-of-range ones go
/// through `rem_euclid`, which puts the branch cut at -pi (excluded)
/// rather than +pi.
pub fn wrap_angle(x: f64) -> f64 {
    use std::f64::consts::PI;
    if x > -PI && x <= PI {
        return x;
    }
    PI - (PI - x).rem_euclid(2.0 * PI)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoincareSection {
    /// Strobed (x, v) pairs, x wrapped into (-pi, pi]; entry k is taken at
    /// t = k * period, so there are `n_drive_periods + 1` of them.
    pub points: Vec<(f64, f64)>,
    /// Strobe interval (the drive period).
    pub period: f64,
    /// Number of drive periods integrated.
    pub n_drive_periods: usize,
    /// Unwrapped initial condition the section was launched from.
    pub initial: OscState,
}

/// Strobe one trajectory at t = 0, T, 2T, ..., n*T.
pub fn poincare_section(
    p: &PendulumParams,
    init: &OscState,
    n_drive_periods: usize,
    controls: &IntegratorControls,
) -> Result<PoincareSection, MathieuError> {
    let period = p.period();
    let times: Vec<f64> = (0..=n_drive_periods).map(|k| k as f64 * period).collect();
    let t_end = times[n_drive_periods];
    let (states, overflow) =
        mathieu_core::integrate_sampled(p, init, t_end, controls, &times)?;
    if overflow {
        return Err(MathieuError::InvalidField {
            field: "trajectory",
            reason: "pendulum state overflowed the integrator guard".into(),
        });
    }
    let points = states
        .iter()
        .map(|s| (wrap_angle(s.x), s.v))
        .collect();
    Ok(PoincareSection {
        points,
        period,
        n_drive_periods,
        initial: *init,
    })
}

/// Sixteen standard launch points: v = 0, x evenly spaced over
/// [0.1, pi - 0.1]. Spanning libration amplitudes from near the bottom of
/// the well to near the separatrix without starting on either.
pub fn ensemble_inits() -> Vec<OscState> {
    use std::f64::consts::PI;
    let n = 16;
    let lo = 0.1;
    let hi = PI - 0.1;
    (0..n)
        .map(|i| {
            let x = (lo * (n - 1 - i) as f64 + hi * i as f64) / (n - 1) as f64;
            OscState::new(x, 0.0, 0.0).unwrap()
        })
        .collect()
}

/// Strobe a whole family of initial conditions in parallel. Results keep
/// the input order.
pub fn ensemble_sections(
    p: &PendulumParams,
    inits: &[OscState],
    n_drive_periods: usize,
    controls: &IntegratorControls,
) -> Result<Vec<PoincareSection>, MathieuError> {
    inits
        .par_iter()
        .map(|init| poincare_section(p, init, n_drive_periods, controls))
        .collect()
}
