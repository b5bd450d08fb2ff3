//! Arnold-tongue chart engine.
//!
//! Sweeps rectangles of (delta, epsilon) drive parameters through the
//! Floquet and time-domain classifiers, extracts tongue boundaries by
//! bisection on the spectral radius, and runs seeded Monte Carlo scans of
//! fabrication spread mapped through the circuit-to-chart pipeline. All
//! engines are embarrassingly parallel with deterministic output: cells,
//! columns and samples are keyed by index, never by completion order.

mod boundary;
mod grid;
mod montecarlo;
mod rng;

pub use boundary::{tongue_boundary, BOUNDARY_EPS_TOL};
pub use grid::{sweep, Cell, Range1D, StabilityGrid, SweepSpec};
pub use montecarlo::{fabrication_scan, DriveSpec, McOutcome, McSample, McSpec};
pub use rng::SampleRng;
