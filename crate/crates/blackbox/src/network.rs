//! Lumped RLC networks: a series chain of parallel-RLC blocks.
//!
//! Each branch is a capacitor, inductor, and optional resistor in parallel;
//! branch impedances add. An absent resistor is represented by an infinite
//! R (lossless). Branch resonances 1/sqrt(L C) must be pairwise distinct,
//! which keeps every impedance pole simple.

use num_complex::Complex64;

use crate::error::BlackboxError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RlcBranch {
    /// Capacitance, farads.
    pub c_star: f64,
    /// Inductance, henries.
    pub l_star: f64,
    /// Resistance, ohms; infinite for a lossless branch.
    pub r_star: f64,
}

impl RlcBranch {
    pub fn new(c_star: f64, l_star: f64, r_star: f64) -> Result<Self, BlackboxError> {
        for (field, value) in [("c_star", c_star), ("l_star", l_star)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(BlackboxError::InvalidField {
                    field,
                    reason: format!("must be positive and finite, got {value}"),
                });
            }
        }
        if !(r_star > 0.0) {
            // Accepts +infinity, rejects zero, negatives and NaN.
            return Err(BlackboxError::InvalidField {
                field: "r_star",
                reason: format!("must be positive (or infinite for lossless), got {r_star}"),
            });
        }
        Ok(Self {
            c_star,
            l_star,
            r_star,
        })
    }

    pub fn lossless(c_star: f64, l_star: f64) -> Result<Self, BlackboxError> {
        Self::new(c_star, l_star, f64::INFINITY)
    }

    pub fn is_lossless(&self) -> bool {
        self.r_star.is_infinite()
    }

    /// Parallel resonance 1/sqrt(L C) in rad/s.
    pub fn resonance(&self) -> f64 {
        1.0 / (self.l_star * self.c_star).sqrt()
    }

    /// Branch admittance i omega C + 1/(i omega L) + 1/R.
    pub fn admittance(&self, omega: f64) -> Complex64 {
        let re = if self.is_lossless() {
            0.0
        } else {
            1.0 / self.r_star
        };
        Complex64::new(re, omega * self.c_star - 1.0 / (omega * self.l_star))
    }

    /// Frequency derivative of the branch admittance: i (C + 1/(omega^2 L)).
    pub fn admittance_derivative(&self, omega: f64) -> Complex64 {
        Complex64::new(0.0, self.c_star + 1.0 / (omega * omega * self.l_star))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RlcNetwork {
    branches: Vec<RlcBranch>,
}

/// Minimum relative separation between branch resonances.
pub const MIN_RESONANCE_SEPARATION: f64 = 1e-6;

impl RlcNetwork {
    pub fn new(branches: Vec<RlcBranch>) -> Result<Self, BlackboxError> {
        if branches.is_empty() {
            return Err(BlackboxError::InvalidField {
                field: "branches",
                reason: "network needs at least one branch".into(),
            });
        }
        for (i, a) in branches.iter().enumerate() {
            for b in branches.iter().skip(i + 1) {
                let (wa, wb) = (a.resonance(), b.resonance());
                let rel = (wa - wb).abs() / wa.max(wb);
                if rel <= MIN_RESONANCE_SEPARATION {
                    return Err(BlackboxError::InvalidField {
                        field: "branches",
                        reason: format!(
                            "branch resonances {wa} and {wb} rad/s are closer than \
                             relative {MIN_RESONANCE_SEPARATION}"
                        ),
                    });
                }
            }
        }
        Ok(Self { branches })
    }

    pub fn branches(&self) -> &[RlcBranch] {
        &self.branches
    }

    pub fn is_lossless(&self) -> bool {
        self.branches.iter().all(RlcBranch::is_lossless)
    }
}

/// Parse the plain-text netlist format: one branch per line as
/// `C=<farads> L=<henries> [R=<ohms>]`, `#` starting a comment, blank lines
/// ignored. Keys may appear in any order; R defaults to infinite.
pub fn parse_netlist(text: &str) -> Result<RlcNetwork, BlackboxError> {
    let mut branches = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (mut c, mut l, mut r) = (None, None, None);
        for token in line.split_whitespace() {
            let (key, value) = token.split_once('=').ok_or_else(|| BlackboxError::Netlist {
                line: line_no,
                reason: format!("expected key=value, got `{token}`"),
            })?;
            let slot = match key {
                "C" => &mut c,
                "L" => &mut l,
                "R" => &mut r,
                _ => {
                    return Err(BlackboxError::Netlist {
                        line: line_no,
                        reason: format!("unknown key `{key}` (expected C, L or R)"),
                    })
                }
            };
            if slot.is_some() {
                return Err(BlackboxError::Netlist {
                    line: line_no,
                    reason: format!("duplicate key `{key}`"),
                });
            }
            let parsed: f64 = if value.eq_ignore_ascii_case("inf") {
                f64::INFINITY
            } else {
                value.parse().map_err(|_| BlackboxError::Netlist {
                    line: line_no,
                    reason: format!("cannot parse `{value}` as a number"),
                })?
            };
            *slot = Some(parsed);
        }
        let c = c.ok_or_else(|| BlackboxError::Netlist {
            line: line_no,
            reason: "missing C=<farads>".into(),
        })?;
        let l = l.ok_or_else(|| BlackboxError::Netlist {
            line: line_no,
            reason: "missing L=<henries>".into(),
        })?;
        let branch =
            RlcBranch::new(c, l, r.unwrap_or(f64::INFINITY)).map_err(|e| match e {
                BlackboxError::InvalidField { field, reason } => BlackboxError::Netlist {
                    line: line_no,
                    reason: format!("{field}: {reason}"),
                },
                other => other,
            })?;
        branches.push(branch);
    }
    RlcNetwork::new(branches)
}
