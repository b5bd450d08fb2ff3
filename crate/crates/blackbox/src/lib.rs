//! Linear-network mode analysis for Josephson circuits.
//!
//! A junction shunted by an arbitrary lossless RLC ladder is equivalent, up
//! to the junction's nonlinear remainder, to a set of independent harmonic
//! modes. This crate finds those modes from the network's input admittance
//! and assembles the resulting effective Hamiltonians:
//!
//! 1. Describe the linear embedding as series-connected parallel-RLC
//!    branches ([`RlcNetwork`], or [`parse_netlist`] for the text format).
//! 2. Locate the zeros of Im Y(omega) and their slopes ([`find_modes`]);
//!    each zero is a mode with effective impedance 2/(omega Im Y').
//! 3. Attach the junction's nonlinearity ([`EffectiveHamiltonian`]) or
//!    build a qubit-resonator product Hamiltonian ([`cqed_hamiltonian`]).

mod admittance;
mod error;
mod hamiltonian;
mod modes;
mod network;

pub use admittance::{
    admittance, admittance_derivative, admittance_derivative_fd, admittance_scan,
};
pub use error::BlackboxError;
pub use hamiltonian::{
    cqed_hamiltonian, CqedParams, EffectiveHamiltonian, ModeTerm, MAX_PRODUCT_DIM,
};
pub use modes::{find_modes, mode_operators, Mode, ModeSet};
pub use network::{parse_netlist, RlcBranch, RlcNetwork, MIN_RESONANCE_SEPARATION};
