//! `qstab spectrum`: eigenenergies along a gate-charge or flux sweep.

use std::fmt::Write as _;

use circuits::{spectrum_sweep, SweepAxis};

use crate::config::Config;
use crate::error::{as_runtime, CliError};
use crate::output::Outputs;

use super::{circuit_from, CIRCUIT_SCHEMA, RUN_SCHEMA};

const SPECTRUM_KEYS: &[&str] = &["axis", "min", "max", "count", "levels"];

pub fn run(cfg: &Config, out: &mut Outputs) -> Result<(), CliError> {
    cfg.restrict(&[RUN_SCHEMA, CIRCUIT_SCHEMA, ("spectrum", SPECTRUM_KEYS)])?;
    let base = circuit_from(cfg)?;
    let axis = match cfg.choice("spectrum", "axis", &["n_g", "flux"], "n_g")?.as_str() {
        "flux" => SweepAxis::FluxPhase,
        _ => SweepAxis::GateCharge,
    };
    let default_span = match axis {
        SweepAxis::GateCharge => (0.0, 1.0, 101),
        SweepAxis::FluxPhase => (0.0, std::f64::consts::PI, 101),
    };
    let min = cfg.f64_or("spectrum", "min", default_span.0)?;
    let max = cfg.f64_or("spectrum", "max", default_span.1)?;
    let count = cfg.usize_or("spectrum", "count", default_span.2)?;
    let grid = stability::Range1D::new(min, max, count)
        .map_err(|e| CliError::config(format!("[spectrum] range: {e}")))?;
    let levels = cfg.usize_or("spectrum", "levels", 4)?;
    if levels == 0 || levels > base.basis_dim() {
        return Err(CliError::config(format!(
            "[spectrum] levels: need between 1 and the basis dimension {}, got {levels}",
            base.basis_dim()
        )));
    }

    let values = grid.values();
    let spectra = spectrum_sweep(&base, axis, &values).map_err(as_runtime)?;

    let mut csv = String::from("axis_value,level_index,energy_ghz\n");
    for (value, spectrum) in values.iter().zip(&spectra) {
        for m in 0..levels {
            writeln!(csv, "{value},{m},{}", spectrum.level(m)).unwrap();
        }
    }
    out.write("spectrum.csv", csv.as_bytes())?;
    println!(
        "spectrum: {} grid points x {levels} levels",
        values.len()
    );
    Ok(())
}
