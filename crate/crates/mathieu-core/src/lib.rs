//! Core numerics for parametrically driven oscillators.
//!
//! The central object is the damped Mathieu-type equation
//!
//! ```text
//! x'' + gamma x' + (delta + epsilon cos(Omega t)) x = 0
//! ```
//!
//! handled along two complementary routes:
//!
//! - time domain: adaptive and fixed-step integration with dense output
//!   ([`integrate`]), and Floquet analysis of the period map with stability
//!   classification ([`floquet`]);
//! - spectral: characteristic values of the canonical form
//!   y'' + (a - 2 q cos 2t) y = 0 via truncated Hill matrices
//!   ([`charvalues`]), with symmetric tridiagonal and dense eigensolvers in
//!   [`linalg`].
//!
//! Every computed quantity is validated or certified: integrator controls
//! and model parameters reject non-finite or out-of-range fields, and
//! characteristic values carry a truncation-doubling convergence
//! certificate.

pub mod charvalues;
pub mod error;
pub mod floquet;
pub mod integrate;
pub mod linalg;
pub mod model;

pub use charvalues::{canonical_params, char_pair, char_value, CharPair, CharValue, DEFAULT_TRUNCATION};
pub use error::MathieuError;
pub use floquet::{
    classify, classify_detail, monodromy, ClassifyCriteria, ClassifyMethod, ClassifyOutcome,
    FloquetResult, StabilityLabel, TimeDomainReport,
};
pub use integrate::{
    drive, integrate_ode, integrate_sampled, DenseSegment, DriveOutcome, IntegratorControls,
    SecondOrderOde, StepMethod, Trajectory,
};
pub use linalg::{DenseSym, SymTridiagonal};
pub use model::{MathieuParams, OscState};
