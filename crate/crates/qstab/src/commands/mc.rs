//! `qstab mc`: Monte Carlo fabrication scatter around a base device,
//! every sample mapped through the circuit-to-chart pipeline.

use stability::{fabrication_scan, DriveSpec, McSpec};

use crate::config::Config;
use crate::error::{as_config, as_runtime, CliError};
use crate::output::Outputs;

use super::{circuit_from, CIRCUIT_SCHEMA, RUN_SCHEMA};

const MC_KEYS: &[&str] = &[
    "e_k",
    "omega",
    "gamma",
    "rel_sigma_ej",
    "rel_sigma_ec",
    "samples",
];

pub fn run(cfg: &Config, seed: u64, out: &mut Outputs) -> Result<(), CliError> {
    cfg.restrict(&[RUN_SCHEMA, CIRCUIT_SCHEMA, ("mc", MC_KEYS)])?;
    let base = circuit_from(cfg)?;
    let spec = McSpec {
        base,
        rel_sigma_ej: cfg.f64_or("mc", "rel_sigma_ej", 0.0)?,
        rel_sigma_ec: cfg.f64_or("mc", "rel_sigma_ec", 0.0)?,
        samples: cfg.require_usize("mc", "samples")?,
        seed,
        drive: DriveSpec {
            e_k: cfg.require_f64("mc", "e_k")?,
            omega: cfg.f64_or("mc", "omega", 2.0)?,
            gamma: cfg.f64_or("mc", "gamma", 0.0)?,
        },
    };
    spec.validate().map_err(as_config)?;

    let outcome = fabrication_scan(&spec).map_err(as_runtime)?;
    out.write("mc.csv", outcome.to_csv().as_bytes())?;
    println!(
        "mc: {} samples, unstable fraction {}, {} rejected draws",
        outcome.samples.len(),
        outcome.unstable_fraction,
        outcome.rejections
    );
    Ok(())
}
