//! Parametrically driven pendulum: the nonlinear parent of the chart's
//! linear oscillator.
//!
//! ```text
//!   x'' + gamma x' + (delta + epsilon cos(Omega t)) sin x = 0
//! ```
//!
//! For |x| << 1 this linearizes to the damped Mathieu equation with the
//! same coefficients, so chart labels predict the small-amplitude fate of
//! pendulum trajectories; at large amplitude the sin x saturation bends
//! growth into rotation, libration islands, or chaos.

use mathieu_core::{
    integrate_ode, IntegratorControls, MathieuError, OscState, SecondOrderOde, Trajectory,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendulumParams {
    /// Dimensionless stiffness; may be negative (inverted pendulum).
    pub delta: f64,
    /// Parametric drive amplitude.
    pub epsilon: f64,
    /// Drive frequency.
    pub omega: f64,
    /// Velocity damping coefficient.
    pub gamma: f64,
}

impl PendulumParams {
    pub fn new(delta: f64, epsilon: f64, omega: f64, gamma: f64) -> Result<Self, MathieuError> {
        for (field, value) in [("delta", delta), ("epsilon", epsilon)] {
            if !value.is_finite() {
                return Err(MathieuError::InvalidField {
                    field,
                    reason: format!("must be finite, got {value}"),
                });
            }
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(MathieuError::InvalidField {
                field: "omega",
                reason: format!("drive frequency must be positive, got {omega}"),
            });
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
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

    /// Drive period 2 pi / Omega.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }

    /// Mechanical energy v^2/2 - delta cos x, conserved when
    /// epsilon = gamma = 0.
    pub fn energy(&self, state: &OscState) -> f64 {
        0.5 * state.v * state.v - self.delta * state.x.cos()
    }
}

impl SecondOrderOde for PendulumParams {
    fn accel(&self, t: f64, x: f64, v: f64) -> f64 {
        -self.gamma * v - (self.delta + self.epsilon * (self.omega * t).cos()) * x.sin()
    }

    fn period(&self) -> f64 {
        PendulumParams::period(self)
    }
}

/// Integrate the pendulum from `init` to `t_end` under the given controls.
pub fn integrate_pendulum(
    p: &PendulumParams,
    init: &OscState,
    t_end: f64,
    controls: &IntegratorControls,
) -> Result<Trajectory, MathieuError> {
    integrate_ode(p, init, t_end, controls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mathieu_core::{integrate_ode, MathieuParams};

    #[test]
    fn validation() {
        assert!(PendulumParams::new(1.0, 0.5, 2.0, 0.0).is_ok());
        assert!(PendulumParams::new(-1.0, 0.5, 2.0, 0.1).is_ok());
        assert!(PendulumParams::new(1.0, 0.5, 0.0, 0.0).is_err());
        assert!(PendulumParams::new(1.0, 0.5, 2.0, -0.1).is_err());
        assert!(PendulumParams::new(f64::NAN, 0.5, 2.0, 0.0).is_err());
    }

    #[test]
    fn fixed_point_stays_fixed() {
        let p = PendulumParams::new(1.0, 0.8, 2.0, 0.0).unwrap();
        let init = OscState::new(0.0, 0.0, 0.0).unwrap();
        let traj = integrate_pendulum(&p, &init, 50.0, &IntegratorControls::default()).unwrap();
        for s in &traj.states {
            assert_eq!(s.x, 0.0);
            assert_eq!(s.v, 0.0);
        }
    }

    #[test]
    fn undriven_energy_is_conserved() {
        // Large-amplitude libration for 1000 drive periods.
        let p = PendulumParams::new(1.0, 0.0, 2.0, 0.0).unwrap();
        let controls = IntegratorControls::adaptive(1e-12, 1e-14);
        let init = OscState::new(2.5, 0.0, 0.0).unwrap();
        let e0 = p.energy(&init);
        let traj =
            integrate_pendulum(&p, &init, 1000.0 * p.period(), &controls).unwrap();
        let drift = traj
            .states
            .iter()
            .map(|s| (p.energy(s) - e0).abs())
            .fold(0.0, f64::max);
        assert!(drift < 1e-8, "energy drift {drift}");
    }

    #[test]
    fn small_angles_follow_the_linear_equation() {
        // While |x| stays below ~1e-3 the sin x correction to the
        // stiffness is under x^2/6 ~ 2e-7; the pendulum must shadow the
        // linear Mathieu trajectory to a comparable relative accuracy.
        let p = PendulumParams::new(1.0, 0.5, 2.0, 0.0).unwrap();
        let linear = MathieuParams::new(1.0, 0.5, 2.0, 0.0).unwrap();
        let controls = IntegratorControls::adaptive(1e-12, 1e-16);
        let init = OscState::new(1e-4, 0.0, 0.0).unwrap();
        let horizon = 4.0 * p.period();
        let bent = integrate_pendulum(&p, &init, horizon, &controls).unwrap();
        let straight = integrate_ode(&linear, &init, horizon, &controls).unwrap();
        // Growth happens (delta = 1 is mid-tongue) but stays small-angle.
        let scale = bent.max_abs_x();
        assert!(scale > 1.5e-4, "expected parametric growth, got {scale}");
        assert!(scale < 2e-3, "left the small-angle window: {scale}");
        let (bx, sx) = (bent.last().x, straight.last().x);
        assert!(
            (bx - sx).abs() < 1e-5 * scale,
            "pendulum {bx} vs linear {sx}"
        );
    }

    #[test]
    fn growth_saturates_at_large_angles() {
        // The same unstable drive, started larger: linear theory explodes,
        // sin x does not let the pendulum follow it.
        let p = PendulumParams::new(1.0, 0.8, 2.0, 0.0).unwrap();
        let init = OscState::new(0.3, 0.0, 0.0).unwrap();
        let traj =
            integrate_pendulum(&p, &init, 60.0 * p.period(), &IntegratorControls::default())
                .unwrap();
        assert!(!traj.overflow);
        // Energy stays bounded by the separatrix scale rather than growing
        // exponentially: |v| bounded by a few.
        let vmax = traj.states.iter().map(|s| s.v.abs()).fold(0.0, f64::max);
        assert!(vmax < 10.0, "runaway velocity {vmax}");
    }
}
