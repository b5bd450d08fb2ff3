//! `qstab bands`: closed-form band energies side by side with the
//! eigensolver across a gate-charge grid.

use std::fmt::Write as _;

use circuits::{band_energy_mathieu, spectrum_sweep, SweepAxis};

use crate::config::Config;
use crate::error::{as_runtime, CliError};
use crate::output::Outputs;

use super::{circuit_from, range_from, CIRCUIT_SCHEMA, RUN_SCHEMA};

const BANDS_KEYS: &[&str] = &["n_g_min", "n_g_max", "n_g_count", "bands"];

pub fn run(cfg: &Config, out: &mut Outputs) -> Result<(), CliError> {
    cfg.restrict(&[RUN_SCHEMA, CIRCUIT_SCHEMA, ("bands", BANDS_KEYS)])?;
    let base = circuit_from(cfg)?;
    let grid = range_from(cfg, "bands", "n_g", (0.0, 1.0, 101))?;
    if grid.min < 0.0 || grid.max > 1.0 {
        return Err(CliError::config(format!(
            "[bands] n_g range: the band formula is defined on [0, 1], \
             got [{}, {}]",
            grid.min, grid.max
        )));
    }
    let bands = cfg.usize_or("bands", "bands", 3)?;
    if bands == 0 || bands > base.basis_dim() {
        return Err(CliError::config(format!(
            "[bands] bands: need between 1 and the basis dimension {}, got {bands}",
            base.basis_dim()
        )));
    }

    let values = grid.values();
    let spectra = spectrum_sweep(&base, SweepAxis::GateCharge, &values).map_err(as_runtime)?;

    let mut csv = String::from("n_g,band,e_mathieu_ghz,e_eigensolve_ghz,rel_error\n");
    let mut worst: f64 = 0.0;
    for (n_g, spectrum) in values.iter().zip(&spectra) {
        for m in 0..bands {
            let formula = band_energy_mathieu(m, *n_g, &base).map_err(as_runtime)?;
            let exact = spectrum.level(m);
            let rel = (formula - exact).abs() / exact.abs().max(1e-12);
            worst = worst.max(rel);
            writeln!(csv, "{n_g},{m},{formula},{exact},{rel}").unwrap();
        }
    }
    out.write("bands.csv", csv.as_bytes())?;
    println!(
        "bands: {} gate-charge points x {bands} bands, worst rel_error {worst:.3e}",
        values.len()
    );
    Ok(())
}
