//! `qstab tongue`: chart a (delta, epsilon) rectangle, render it as CSV
//! and PGM, and trace the refined tongue boundary.

use std::fmt::Write as _;

use mathieu_core::{ClassifyCriteria, ClassifyMethod};
use stability::{sweep, tongue_boundary, SweepSpec};

use crate::config::Config;
use crate::error::{as_config, as_runtime, CliError};
use crate::output::Outputs;

use super::{range_from, RUN_SCHEMA};

const SWEEP_KEYS: &[&str] = &[
    "delta_min",
    "delta_max",
    "delta_count",
    "epsilon_min",
    "epsilon_max",
    "epsilon_count",
    "omega",
    "gamma",
    "method",
];
const CLASSIFY_KEYS: &[&str] = &["threshold_ratio", "horizon_periods", "marginal_half_width"];

pub fn spec_from(cfg: &Config) -> Result<SweepSpec, CliError> {
    let delta = range_from(cfg, "sweep", "delta", (0.0, 6.0, 400))?;
    let epsilon = range_from(cfg, "sweep", "epsilon", (0.0, 3.0, 200))?;
    let omega = cfg.f64_or("sweep", "omega", 2.0)?;
    let gamma = cfg.f64_or("sweep", "gamma", 0.0)?;
    let method = match cfg
        .choice("sweep", "method", &["floquet", "time-domain", "both"], "floquet")?
        .as_str()
    {
        "floquet" => ClassifyMethod::Floquet,
        "time-domain" => ClassifyMethod::TimeDomain,
        _ => ClassifyMethod::Both,
    };
    let defaults = ClassifyCriteria::default();
    let criteria = ClassifyCriteria {
        threshold_ratio: cfg.f64_or("classify", "threshold_ratio", defaults.threshold_ratio)?,
        horizon_periods: cfg.f64_or("classify", "horizon_periods", defaults.horizon_periods)?,
        marginal_half_width: cfg.f64_or(
            "classify",
            "marginal_half_width",
            defaults.marginal_half_width,
        )?,
        ..defaults
    };
    let spec = SweepSpec {
        delta,
        epsilon,
        omega,
        gamma,
        method,
        criteria,
    };
    spec.validate().map_err(as_config)?;
    Ok(spec)
}

pub fn run(cfg: &Config, out: &mut Outputs) -> Result<(), CliError> {
    cfg.restrict(&[RUN_SCHEMA, ("sweep", SWEEP_KEYS), ("classify", CLASSIFY_KEYS)])?;
    let spec = spec_from(cfg)?;
    if spec.method == ClassifyMethod::TimeDomain {
        return Err(CliError::config(
            "[sweep] method: boundary extraction needs Floquet data; \
             use `floquet` or `both`",
        ));
    }
    let grid = sweep(&spec).map_err(as_config)?;
    let boundary = tongue_boundary(&grid).map_err(as_runtime)?;

    out.write("tongue.csv", grid.to_csv().as_bytes())?;
    out.write("tongue.pgm", &grid.to_pgm())?;
    let mut csv = String::from("delta,epsilon\n");
    for (delta, epsilon) in &boundary {
        writeln!(csv, "{delta},{epsilon}").unwrap();
    }
    out.write("boundary.csv", csv.as_bytes())?;

    println!(
        "tongue: {} cells ({} unstable, {} errored), {} boundary points",
        grid.cells.len(),
        grid.unstable_count(),
        grid.errored_count(),
        boundary.len()
    );
    Ok(())
}
