//! Device parameters for charge-type Josephson circuits.
//!
//! A single island couples to a gate through C_g and to one or two junctions
//! of total Josephson energy E_J_sigma; a two-junction loop is tuned by the
//! flux phase `delta_flux` and junction asymmetry `d`. The island charge
//! lives in the truncated basis |n| <= charge_cutoff.

use mathieu_core::MathieuError;

use crate::constants::{joules_to_ghz, ELEMENTARY_CHARGE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams {
    /// Charging energy, GHz·h.
    pub e_c: f64,
    /// Total Josephson energy of the junction pair, GHz·h.
    pub e_j_sigma: f64,
    /// Junction asymmetry, |d| <= 1 (0 for identical junctions).
    pub d: f64,
    /// Dimensionless gate offset charge.
    pub n_g: f64,
    /// Phase offset from external flux, radians.
    pub delta_flux: f64,
    /// Maximum |n| kept in the charge basis.
    pub charge_cutoff: usize,
}

impl CircuitParams {
    pub fn new(
        e_c: f64,
        e_j_sigma: f64,
        d: f64,
        n_g: f64,
        delta_flux: f64,
        charge_cutoff: usize,
    ) -> Result<Self, MathieuError> {
        let p = Self {
            e_c,
            e_j_sigma,
            d,
            n_g,
            delta_flux,
            charge_cutoff,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), MathieuError> {
        if !(self.e_c.is_finite() && self.e_c > 0.0) {
            return Err(MathieuError::InvalidField {
                field: "e_c",
                reason: format!("must be positive, got {}", self.e_c),
            });
        }
        if !(self.e_j_sigma.is_finite() && self.e_j_sigma >= 0.0) {
            return Err(MathieuError::InvalidField {
                field: "e_j_sigma",
                reason: format!("must be nonnegative, got {}", self.e_j_sigma),
            });
        }
        if !(self.d.is_finite() && self.d.abs() <= 1.0) {
            return Err(MathieuError::InvalidField {
                field: "d",
                reason: format!("asymmetry must satisfy |d| <= 1, got {}", self.d),
            });
        }
        if !self.n_g.is_finite() {
            return Err(MathieuError::InvalidField {
                field: "n_g",
                reason: format!("must be finite, got {}", self.n_g),
            });
        }
        if !self.delta_flux.is_finite() {
            return Err(MathieuError::InvalidField {
                field: "delta_flux",
                reason: format!("must be finite, got {}", self.delta_flux),
            });
        }
        // The basis window must both cover the gate offset and leave room
        // for the low-lying states: cutoff >= max(10 |N_g|, 10).
        let needed = (10.0 * self.n_g.abs()).max(10.0).ceil() as usize;
        if self.charge_cutoff < needed {
            return Err(MathieuError::InvalidField {
                field: "charge_cutoff",
                reason: format!(
                    "cutoff {} too small for n_g = {}; need at least {needed}",
                    self.charge_cutoff, self.n_g
                ),
            });
        }
        Ok(())
    }

    /// Same device at a different gate charge (revalidates the cutoff rule).
    pub fn with_n_g(&self, n_g: f64) -> Result<Self, MathieuError> {
        Self::new(
            self.e_c,
            self.e_j_sigma,
            self.d,
            n_g,
            self.delta_flux,
            self.charge_cutoff,
        )
    }

    /// Same device at a different flux phase.
    pub fn with_delta_flux(&self, delta_flux: f64) -> Result<Self, MathieuError> {
        Self::new(
            self.e_c,
            self.e_j_sigma,
            self.d,
            self.n_g,
            delta_flux,
            self.charge_cutoff,
        )
    }

    pub fn basis_dim(&self) -> usize {
        2 * self.charge_cutoff + 1
    }

    /// Flux-effective Josephson energy of this device.
    pub fn e_j_effective(&self) -> f64 {
        effective_ej(self.e_j_sigma, self.d, self.delta_flux)
    }
}

/// Effective Josephson energy of a two-junction loop at flux phase `delta`:
///
/// ```text
/// E_J* = E_J_sigma |cos(delta/2)| sqrt(1 + d^2 tan^2(delta/2))
///      = E_J_sigma sqrt(cos^2(delta/2) + d^2 sin^2(delta/2))
/// ```
///
/// The second form is used: it is algebraically identical, finite at
/// delta = pi (where it gives the limit E_J_sigma |d|), and monotone between
/// the bounds |d| E_J_sigma <= E_J* <= E_J_sigma.
pub fn effective_ej(e_j_sigma: f64, d: f64, delta_flux: f64) -> f64 {
    let half = 0.5 * delta_flux;
    e_j_sigma * (half.cos().powi(2) + (d * half.sin()).powi(2)).sqrt()
}

/// Two conventions for the island charging energy, differing by a factor 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EcConvention {
    /// e^2 / (2 C_sigma), the single-electron convention (default).
    Standard,
    /// e^2 / C_sigma, used by treatments that fold the factor 2 into E_C.
    Doubled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacitanceSpec {
    /// Gate capacitance, farads.
    pub c_g: f64,
    /// Junction capacitance, farads.
    pub c_j: f64,
    pub convention: EcConvention,
}

impl CapacitanceSpec {
    pub fn new(c_g: f64, c_j: f64, convention: EcConvention) -> Result<Self, MathieuError> {
        for (field, value) in [("c_g", c_g), ("c_j", c_j)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(MathieuError::InvalidField {
                    field,
                    reason: format!("capacitance must be positive, got {value}"),
                });
            }
        }
        Ok(Self {
            c_g,
            c_j,
            convention,
        })
    }
}

/// Charging energy in GHz·h from the island capacitances.
pub fn charging_energy(spec: &CapacitanceSpec) -> f64 {
    let c_sigma = spec.c_g + spec.c_j;
    let e_sq_over_c = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / c_sigma;
    let joules = match spec.convention {
        EcConvention::Standard => 0.5 * e_sq_over_c,
        EcConvention::Doubled => e_sq_over_c,
    };
    joules_to_ghz(joules)
}

/// One energy spectrum of a device: ascending eigenvalues in GHz·h.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub params: CircuitParams,
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn basis_dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn level(&self, m: usize) -> f64 {
        self.eigenvalues[m]
    }

    /// Transition energy from level 0 to level m.
    pub fn gap(&self, m: usize) -> f64 {
        self.eigenvalues[m] - self.eigenvalues[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn base_params() -> CircuitParams {
        CircuitParams::new(0.3, 15.0, 0.1, 0.25, 0.4, 12).unwrap()
    }

    #[test]
    fn rejects_out_of_range_fields() {
        assert!(CircuitParams::new(0.0, 1.0, 0.0, 0.0, 0.0, 10).is_err());
        assert!(CircuitParams::new(1.0, -1.0, 0.0, 0.0, 0.0, 10).is_err());
        assert!(CircuitParams::new(1.0, 1.0, 1.5, 0.0, 0.0, 10).is_err());
        assert!(CircuitParams::new(1.0, 1.0, 0.0, f64::NAN, 0.0, 10).is_err());
        // Cutoff rule: 10 |n_g| with a floor of 10.
        assert!(CircuitParams::new(1.0, 1.0, 0.0, 0.0, 0.0, 9).is_err());
        assert!(CircuitParams::new(1.0, 1.0, 0.0, 1.5, 0.0, 12).is_err());
        assert!(CircuitParams::new(1.0, 1.0, 0.0, 1.5, 0.0, 15).is_ok());
    }

    #[test]
    fn effective_ej_special_points() {
        // Symmetric loop at half flux quantum: complete interference.
        assert!(effective_ej(7.0, 0.0, std::f64::consts::PI).abs() < 7.0 * 1e-15);
        // Zero flux leaves the full Josephson energy for any asymmetry.
        assert_eq!(effective_ej(7.0, 0.63, 0.0), 7.0);
        // d = 1 makes the loop flux-insensitive.
        assert!((effective_ej(7.0, 1.0, 2.0) - 7.0).abs() < 7.0 * 1e-15);
        // Fully asymmetric loop at half flux: limit value |d| E_J_sigma.
        assert!((effective_ej(7.0, 0.4, std::f64::consts::PI) - 2.8).abs() < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn effective_ej_stays_between_bounds(
            d in -1.0f64..=1.0,
            delta in -10.0f64..10.0,
        ) {
            let e_j = effective_ej(5.0, d, delta);
            prop_assert!(e_j <= 5.0 * (1.0 + 1e-12));
            prop_assert!(e_j >= 5.0 * d.abs() * (1.0 - 1e-12));
        }
    }

    #[test]
    fn charging_energy_matches_direct_arithmetic() {
        // C_g = 10 aF, C_j = 1 fF.
        let spec = CapacitanceSpec::new(1e-17, 1e-15, EcConvention::Standard).unwrap();
        let e_c = charging_energy(&spec);
        let expect = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (2.0 * 1.01e-15) / crate::constants::GHZ_H;
        assert!((e_c - expect).abs() < 1e-12 * expect);
        // Order of magnitude sanity: about 19.2 GHz for these values.
        assert!(e_c > 19.0 && e_c < 19.4, "e_c = {e_c}");
    }

    #[test]
    fn doubled_convention_is_exactly_twice_standard() {
        let std_spec = CapacitanceSpec::new(3e-17, 2e-15, EcConvention::Standard).unwrap();
        let dbl_spec = CapacitanceSpec::new(3e-17, 2e-15, EcConvention::Doubled).unwrap();
        assert_eq!(charging_energy(&dbl_spec), 2.0 * charging_energy(&std_spec));
    }

    #[test]
    fn doubling_capacitances_halves_charging_energy() {
        let spec = CapacitanceSpec::new(1e-17, 1e-15, EcConvention::Standard).unwrap();
        let double = CapacitanceSpec::new(2e-17, 2e-15, EcConvention::Standard).unwrap();
        let ratio = charging_energy(&spec) / charging_energy(&double);
        assert!((ratio - 2.0).abs() < 1e-12);
    }

    #[test]
    fn param_update_helpers_revalidate() {
        let p = base_params();
        assert_eq!(p.with_n_g(0.5).unwrap().n_g, 0.5);
        assert!(p.with_n_g(2.0).is_err()); // cutoff 12 < 20
        assert_eq!(p.with_delta_flux(1.0).unwrap().delta_flux, 1.0);
        assert!(p.with_delta_flux(f64::INFINITY).is_err());
    }
}
