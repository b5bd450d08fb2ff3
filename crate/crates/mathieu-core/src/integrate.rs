//! Time-domain integration of second-order oscillator equations.
//!
//! The workhorse is an adaptive Dormand-Prince 5(4) embedded pair with the
//! standard quartic continuous extension for dense output; a fixed-step
//! classical fourth-order mode is available for determinism checks. Both
//! modes report the final state exactly at the requested end time, integrate
//! in either time direction, and stop early (flagged, not an error) if |x|
//! crosses the overflow guard.

use std::ops::ControlFlow;

use crate::error::MathieuError;
use crate::model::OscState;

/// A second-order scalar ODE x'' = accel(t, x, x').
pub trait SecondOrderOde {
    fn accel(&self, t: f64, x: f64, v: f64) -> f64;
    /// Drive period; fixed-step mode derives its step from this.
    fn period(&self) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepMethod {
    /// Embedded 5(4) pair; local error kept below atol + rtol * |y|.
    Adaptive { rtol: f64, atol: f64 },
    /// Classical fourth-order with the given number of steps per drive
    /// period. Dense output falls back to cubic Hermite interpolation.
    FixedStep { steps_per_period: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorControls {
    pub method: StepMethod,
    /// Hard cap on attempted steps, a guard against runaway loops.
    pub max_steps: usize,
    /// |x| beyond this stops the integration with the overflow flag set.
    pub overflow_guard: f64,
}

impl IntegratorControls {
    pub fn adaptive(rtol: f64, atol: f64) -> Self {
        Self {
            method: StepMethod::Adaptive { rtol, atol },
            ..Self::default()
        }
    }

    pub fn fixed(steps_per_period: u32) -> Self {
        Self {
            method: StepMethod::FixedStep { steps_per_period },
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), MathieuError> {
        match self.method {
            StepMethod::Adaptive { rtol, atol } => {
                if !(rtol.is_finite() && rtol > 0.0) {
                    return Err(MathieuError::InvalidField {
                        field: "rtol",
                        reason: format!("must be a positive finite number, got {rtol}"),
                    });
                }
                if !(atol.is_finite() && atol > 0.0) {
                    return Err(MathieuError::InvalidField {
                        field: "atol",
                        reason: format!("must be a positive finite number, got {atol}"),
                    });
                }
            }
            StepMethod::FixedStep { steps_per_period } => {
                if steps_per_period == 0 {
                    return Err(MathieuError::InvalidField {
                        field: "steps_per_period",
                        reason: "must be at least 1".into(),
                    });
                }
            }
        }
        if !(self.overflow_guard.is_finite() && self.overflow_guard > 0.0) {
            return Err(MathieuError::InvalidField {
                field: "overflow_guard",
                reason: "must be a positive finite number".into(),
            });
        }
        Ok(())
    }
}

impl Default for IntegratorControls {
    fn default() -> Self {
        Self {
            method: StepMethod::Adaptive {
                rtol: 1e-10,
                atol: 1e-12,
            },
            max_steps: 50_000_000,
            overflow_guard: 1e12,
        }
    }
}

/// One accepted step with enough information to interpolate inside it.
#[derive(Debug, Clone)]
pub struct DenseSegment {
    pub t0: f64,
    pub h: f64,
    pub y0: [f64; 2],
    pub y1: [f64; 2],
    f0: [f64; 2],
    f1: [f64; 2],
    /// Quartic continuous-extension coefficients (adaptive mode only).
    rcont: Option<[[f64; 2]; 5]>,
}

impl DenseSegment {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// Interpolated state at time t, valid for t inside [t0, t1].
    pub fn eval(&self, t: f64) -> [f64; 2] {
        let th = (t - self.t0) / self.h;
        match &self.rcont {
            Some(r) => {
                let th1 = 1.0 - th;
                let mut out = [0.0; 2];
                for i in 0..2 {
                    out[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
                }
                out
            }
            None => {
                // Cubic Hermite from endpoint values and derivatives.
                let th2 = th * th;
                let th3 = th2 * th;
                let h00 = 2.0 * th3 - 3.0 * th2 + 1.0;
                let h10 = th3 - 2.0 * th2 + th;
                let h01 = -2.0 * th3 + 3.0 * th2;
                let h11 = th3 - th2;
                let mut out = [0.0; 2];
                for i in 0..2 {
                    out[i] = h00 * self.y0[i]
                        + h10 * self.h * self.f0[i]
                        + h01 * self.y1[i]
                        + h11 * self.h * self.f1[i];
                }
                out
            }
        }
    }
}

/// Result of driving an ODE without recording every state.
#[derive(Debug, Clone, Copy)]
pub struct DriveOutcome {
    pub last: OscState,
    pub overflow: bool,
    /// True if the observer requested an early stop (threshold crossings).
    pub stopped_by_observer: bool,
    pub steps: usize,
    /// Maximum |x| over accepted step endpoints, including the start.
    pub max_abs_x: f64,
}

/// Full trajectory of accepted steps.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub states: Vec<OscState>,
    pub overflow: bool,
    pub steps: usize,
}

impl Trajectory {
    pub fn max_abs_x(&self) -> f64 {
        self.states.iter().fold(0.0, |m, s| m.max(s.x.abs()))
    }

    pub fn last(&self) -> &OscState {
        self.states.last().expect("trajectory contains the initial state")
    }
}

// Dormand-Prince 5(4) tableau (FSAL form).
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
// Fifth-order weights; the FSAL property makes these the a7 row as well.
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Error weights b5 - b4.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Quartic continuous-extension weights.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[inline]
fn rhs<O: SecondOrderOde>(ode: &O, t: f64, y: [f64; 2]) -> [f64; 2] {
    [y[1], ode.accel(t, y[0], y[1])]
}

/// Core driver: advances the state to t_end, handing each accepted step to
/// the observer as a dense segment. The observer may stop the run early.
pub fn drive<O, F>(
    ode: &O,
    init: &OscState,
    t_end: f64,
    controls: &IntegratorControls,
    mut observe: F,
) -> Result<DriveOutcome, MathieuError>
where
    O: SecondOrderOde,
    F: FnMut(&DenseSegment) -> ControlFlow<()>,
{
    controls.validate()?;
    if !t_end.is_finite() {
        return Err(MathieuError::InvalidField {
            field: "t_end",
            reason: format!("must be finite, got {t_end}"),
        });
    }
    if t_end == init.t {
        return Ok(DriveOutcome {
            last: *init,
            overflow: false,
            stopped_by_observer: false,
            steps: 0,
            max_abs_x: init.x.abs(),
        });
    }

    match controls.method {
        StepMethod::Adaptive { rtol, atol } => {
            drive_adaptive(ode, init, t_end, controls, rtol, atol, &mut observe)
        }
        StepMethod::FixedStep { steps_per_period } => {
            drive_fixed(ode, init, t_end, controls, steps_per_period, &mut observe)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn drive_adaptive<O, F>(
    ode: &O,
    init: &OscState,
    t_end: f64,
    controls: &IntegratorControls,
    rtol: f64,
    atol: f64,
    observe: &mut F,
) -> Result<DriveOutcome, MathieuError>
where
    O: SecondOrderOde,
    F: FnMut(&DenseSegment) -> ControlFlow<()>,
{
    let dir = (t_end - init.t).signum();
    let mut t = init.t;
    let mut y = [init.x, init.v];
    let mut f = rhs(ode, t, y);
    let mut h = dir * (t_end - init.t).abs().min(1e-3);
    let mut steps = 0usize;
    let mut max_abs_x = init.x.abs();
    let mut overflow = false;
    let mut stopped = false;

    while dir * (t_end - t) > 0.0 {
        steps += 1;
        if steps > controls.max_steps {
            return Err(MathieuError::MaxStepsExceeded {
                t,
                max_steps: controls.max_steps,
            });
        }
        // Land exactly on t_end: the final step uses the exact remaining span.
        let span = t_end - t;
        let last_step = h.abs() >= span.abs();
        if last_step {
            h = span;
        }
        if h.abs() < 16.0 * f64::EPSILON * t.abs().max(1.0) && !last_step {
            return Err(MathieuError::StepSizeUnderflow {
                t,
                x: y[0],
                v: y[1],
            });
        }

        let k1 = f;
        let k2 = rhs(ode, t + C[1] * h, add1(y, h, A21, k1));
        let k3 = rhs(ode, t + C[2] * h, add2(y, h, A31, k1, A32, k2));
        let k4 = rhs(ode, t + C[3] * h, add3(y, h, A41, k1, A42, k2, A43, k3));
        let k5 = rhs(
            ode,
            t + C[4] * h,
            add4(y, h, A51, k1, A52, k2, A53, k3, A54, k4),
        );
        let k6 = rhs(
            ode,
            t + C[5] * h,
            add5(y, h, A61, k1, A62, k2, A63, k3, A64, k4, A65, k5),
        );
        let mut y1 = [0.0; 2];
        for i in 0..2 {
            y1[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        let k7 = rhs(ode, t + h, y1);

        // Scaled RMS error over the two components.
        let mut err_sq = 0.0;
        for i in 0..2 {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = atol + rtol * y[i].abs().max(y1[i].abs());
            err_sq += (e / sc) * (e / sc);
        }
        let err = (0.5 * err_sq).sqrt();

        if err.is_finite() && err <= 1.0 {
            // Accepted: build the continuous extension and hand it out.
            let mut rcont = [[0.0; 2]; 5];
            for i in 0..2 {
                let ydiff = y1[i] - y[i];
                let bspl = h * k1[i] - ydiff;
                rcont[0][i] = y[i];
                rcont[1][i] = ydiff;
                rcont[2][i] = bspl;
                rcont[3][i] = ydiff - h * k7[i] - bspl;
                rcont[4][i] = h
                    * (D1 * k1[i]
                        + D3 * k3[i]
                        + D4 * k4[i]
                        + D5 * k5[i]
                        + D6 * k6[i]
                        + D7 * k7[i]);
            }
            let seg = DenseSegment {
                t0: t,
                h,
                y0: y,
                y1,
                f0: k1,
                f1: k7,
                rcont: Some(rcont),
            };
            t = if last_step { t_end } else { t + h };
            y = y1;
            f = k7; // FSAL
            max_abs_x = max_abs_x.max(y[0].abs());
            let flow = observe(&seg);
            if y[0].abs() > controls.overflow_guard {
                overflow = true;
                break;
            }
            if flow.is_break() {
                stopped = true;
                break;
            }
            let fac = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
            h *= fac;
        } else {
            // Rejected: shrink and retry. NaN errors shrink hard.
            let fac = if err.is_finite() {
                (0.9 * err.powf(-0.2)).clamp(0.2, 1.0)
            } else {
                0.2
            };
            h *= fac;
        }
    }

    Ok(DriveOutcome {
        last: OscState {
            x: y[0],
            v: y[1],
            t,
        },
        overflow,
        stopped_by_observer: stopped,
        steps,
        max_abs_x,
    })
}

fn drive_fixed<O, F>(
    ode: &O,
    init: &OscState,
    t_end: f64,
    controls: &IntegratorControls,
    steps_per_period: u32,
    observe: &mut F,
) -> Result<DriveOutcome, MathieuError>
where
    O: SecondOrderOde,
    F: FnMut(&DenseSegment) -> ControlFlow<()>,
{
    let dir = (t_end - init.t).signum();
    let dt = dir * ode.period() / steps_per_period as f64;
    let mut t = init.t;
    let mut y = [init.x, init.v];
    let mut steps = 0usize;
    let mut max_abs_x = init.x.abs();
    let mut overflow = false;
    let mut stopped = false;

    while dir * (t_end - t) > 0.0 {
        steps += 1;
        if steps > controls.max_steps {
            return Err(MathieuError::MaxStepsExceeded {
                t,
                max_steps: controls.max_steps,
            });
        }
        let mut h = dt;
        let span = t_end - t;
        let last_step = h.abs() >= span.abs();
        if last_step {
            h = span;
        }
        let k1 = rhs(ode, t, y);
        let k2 = rhs(ode, t + 0.5 * h, add1(y, h, 0.5, k1));
        let k3 = rhs(ode, t + 0.5 * h, add1(y, h, 0.5, k2));
        let k4 = rhs(ode, t + h, add1(y, h, 1.0, k3));
        let mut y1 = [0.0; 2];
        for i in 0..2 {
            y1[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if !(y1[0].is_finite() && y1[1].is_finite()) {
            return Err(MathieuError::StepSizeUnderflow {
                t,
                x: y[0],
                v: y[1],
            });
        }
        let f1 = rhs(ode, t + h, y1);
        let seg = DenseSegment {
            t0: t,
            h,
            y0: y,
            y1,
            f0: k1,
            f1,
            rcont: None,
        };
        t = if last_step { t_end } else { t + h };
        y = y1;
        max_abs_x = max_abs_x.max(y[0].abs());
        let flow = observe(&seg);
        if y[0].abs() > controls.overflow_guard {
            overflow = true;
            break;
        }
        if flow.is_break() {
            stopped = true;
            break;
        }
    }

    Ok(DriveOutcome {
        last: OscState {
            x: y[0],
            v: y[1],
            t,
        },
        overflow,
        stopped_by_observer: stopped,
        steps,
        max_abs_x,
    })
}

#[inline]
fn add1(y: [f64; 2], h: f64, a: f64, k: [f64; 2]) -> [f64; 2] {
    [y[0] + h * a * k[0], y[1] + h * a * k[1]]
}

#[inline]
fn add2(y: [f64; 2], h: f64, a1: f64, k1: [f64; 2], a2: f64, k2: [f64; 2]) -> [f64; 2] {
    [
        y[0] + h * (a1 * k1[0] + a2 * k2[0]),
        y[1] + h * (a1 * k1[1] + a2 * k2[1]),
    ]
}

#[inline]
#[allow(clippy::too_many_arguments)]
fn add3(
    y: [f64; 2],
    h: f64,
    a1: f64,
    k1: [f64; 2],
    a2: f64,
    k2: [f64; 2],
    a3: f64,
    k3: [f64; 2],
) -> [f64; 2] {
    [
        y[0] + h * (a1 * k1[0] + a2 * k2[0] + a3 * k3[0]),
        y[1] + h * (a1 * k1[1] + a2 * k2[1] + a3 * k3[1]),
    ]
}

#[inline]
#[allow(clippy::too_many_arguments)]
fn add4(
    y: [f64; 2],
    h: f64,
    a1: f64,
    k1: [f64; 2],
    a2: f64,
    k2: [f64; 2],
    a3: f64,
    k3: [f64; 2],
    a4: f64,
    k4: [f64; 2],
) -> [f64; 2] {
    [
        y[0] + h * (a1 * k1[0] + a2 * k2[0] + a3 * k3[0] + a4 * k4[0]),
        y[1] + h * (a1 * k1[1] + a2 * k2[1] + a3 * k3[1] + a4 * k4[1]),
    ]
}

#[inline]
#[allow(clippy::too_many_arguments)]
fn add5(
    y: [f64; 2],
    h: f64,
    a1: f64,
    k1: [f64; 2],
    a2: f64,
    k2: [f64; 2],
    a3: f64,
    k3: [f64; 2],
    a4: f64,
    k4: [f64; 2],
    a5: f64,
    k5: [f64; 2],
) -> [f64; 2] {
    [
        y[0] + h * (a1 * k1[0] + a2 * k2[0] + a3 * k3[0] + a4 * k4[0] + a5 * k5[0]),
        y[1] + h * (a1 * k1[1] + a2 * k2[1] + a3 * k3[1] + a4 * k4[1] + a5 * k5[1]),
    ]
}

/// Integrate and record every accepted step (plus the initial state).
pub fn integrate_ode<O: SecondOrderOde>(
    ode: &O,
    init: &OscState,
    t_end: f64,
    controls: &IntegratorControls,
) -> Result<Trajectory, MathieuError> {
    let mut states = vec![*init];
    let outcome = drive(ode, init, t_end, controls, |seg| {
        states.push(OscState {
            x: seg.y1[0],
            v: seg.y1[1],
            t: seg.t1(),
        });
        ControlFlow::Continue(())
    })?;
    // The final accepted state is reported exactly at t_end.
    if let Some(last) = states.last_mut() {
        if !outcome.overflow && !outcome.stopped_by_observer {
            last.t = outcome.last.t;
        }
    }
    Ok(Trajectory {
        states,
        overflow: outcome.overflow,
        steps: outcome.steps,
    })
}

/// Integrate and sample the dense output at the given times, which must be
/// sorted in the direction of integration and lie within [init.t, t_end].
/// Returns the sampled states; if the run overflows, samples beyond the stop
/// time are omitted.
pub fn integrate_sampled<O: SecondOrderOde>(
    ode: &O,
    init: &OscState,
    t_end: f64,
    controls: &IntegratorControls,
    times: &[f64],
) -> Result<(Vec<OscState>, bool), MathieuError> {
    let dir = (t_end - init.t).signum();
    let mut out = Vec::with_capacity(times.len());
    let mut idx = 0;
    while idx < times.len() && dir * (times[idx] - init.t) <= 0.0 {
        // Samples at or before the start evaluate to the initial state.
        out.push(OscState {
            x: init.x,
            v: init.v,
            t: times[idx],
        });
        idx += 1;
    }
    let outcome = drive(ode, init, t_end, controls, |seg| {
        while idx < times.len() && dir * (times[idx] - seg.t1()) <= 0.0 {
            let y = seg.eval(times[idx]);
            out.push(OscState {
                x: y[0],
                v: y[1],
                t: times[idx],
            });
            idx += 1;
        }
        ControlFlow::Continue(())
    })?;
    // The final segment can end one ulp short of t_end; samples at the exact
    // endpoint take the final state, which is reported exactly at t_end.
    if !outcome.overflow && !outcome.stopped_by_observer {
        while idx < times.len() && dir * (times[idx] - t_end) <= 0.0 {
            out.push(OscState {
                x: outcome.last.x,
                v: outcome.last.v,
                t: times[idx],
            });
            idx += 1;
        }
    }
    Ok((out, outcome.overflow))
}
