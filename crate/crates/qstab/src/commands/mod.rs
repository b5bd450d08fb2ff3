pub mod bands;
pub mod bbq;
pub mod charvals;
pub mod mc;
pub mod poincare;
pub mod spectrum;
pub mod tongue;

use circuits::{charging_energy, CapacitanceSpec, CircuitParams, EcConvention};
use stability::Range1D;

use crate::config::Config;
use crate::error::{as_config, CliError};

/// The [run] section is accepted by every subcommand; its values are
/// overridden by the matching global flags.
pub const RUN_SCHEMA: (&str, &[&str]) = ("run", &["out", "workers", "seed"]);

pub const CIRCUIT_SCHEMA: (&str, &[&str]) = (
    "circuit",
    &[
        "e_c",
        "e_j_sigma",
        "d",
        "n_g",
        "delta_flux",
        "charge_cutoff",
        "c_g",
        "c_j",
        "ec_convention",
    ],
);

/// Build device parameters from the [circuit] section. The charging
/// energy comes either directly (`e_c`, GHz) or from gate and junction
/// capacitances (`c_g`, `c_j`, farads) via the chosen convention.
pub fn circuit_from(cfg: &Config) -> Result<CircuitParams, CliError> {
    let from_caps = cfg.raw("circuit", "c_g").is_some() || cfg.raw("circuit", "c_j").is_some();
    let e_c = match (cfg.f64("circuit", "e_c")?, from_caps) {
        (Some(_), true) => {
            return Err(CliError::config(
                "[circuit]: set either e_c or c_g + c_j, not both",
            ));
        }
        (Some(e_c), false) => e_c,
        (None, true) => {
            let c_g = cfg.require_f64("circuit", "c_g")?;
            let c_j = cfg.require_f64("circuit", "c_j")?;
            let convention = match cfg
                .choice("circuit", "ec_convention", &["standard", "doubled"], "standard")?
                .as_str()
            {
                "doubled" => EcConvention::Doubled,
                _ => EcConvention::Standard,
            };
            let spec = CapacitanceSpec::new(c_g, c_j, convention).map_err(as_config)?;
            charging_energy(&spec)
        }
        (None, false) => {
            return Err(CliError::config(
                "[circuit] e_c is required (GHz), or give c_g + c_j in farads",
            ));
        }
    };
    let e_j_sigma = cfg.require_f64("circuit", "e_j_sigma")?;
    let d = cfg.f64_or("circuit", "d", 0.0)?;
    let n_g = cfg.f64_or("circuit", "n_g", 0.0)?;
    let delta_flux = cfg.f64_or("circuit", "delta_flux", 0.0)?;
    let charge_cutoff = cfg.usize_or("circuit", "charge_cutoff", 30)?;
    CircuitParams::new(e_c, e_j_sigma, d, n_g, delta_flux, charge_cutoff).map_err(as_config)
}

/// Read a `<prefix>_min/_max/_count` triple into a grid range, tagging
/// errors with the section and prefix.
pub fn range_from(
    cfg: &Config,
    section: &str,
    prefix: &str,
    default: (f64, f64, usize),
) -> Result<Range1D, CliError> {
    let min = cfg.f64_or(section, &format!("{prefix}_min"), default.0)?;
    let max = cfg.f64_or(section, &format!("{prefix}_max"), default.1)?;
    let count = cfg.usize_or(section, &format!("{prefix}_count"), default.2)?;
    Range1D::new(min, max, count)
        .map_err(|e| CliError::config(format!("[{section}] {prefix} range: {e}")))
}
