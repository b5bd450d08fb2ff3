//! Nonlinear dynamics of the parametrically driven pendulum: trajectories,
//! stroboscopic sections, and a box-counting chaos indicator.

mod chaos;
mod pendulum;
mod section;

pub use chaos::chaos_indicator;
pub use pendulum::{integrate_pendulum, PendulumParams};
pub use section::{
    ensemble_inits, ensemble_sections, poincare_section, wrap_angle, PoincareSection,
};
