//! `qstab poincare`: stroboscopic sections of the driven pendulum, one
//! CSV row per strobe point, trajectories in launch order.

use std::fmt::Write as _;

use dynamics::{ensemble_inits, ensemble_sections, PendulumParams};
use mathieu_core::{IntegratorControls, OscState};

use crate::config::Config;
use crate::error::{as_config, as_runtime, CliError};
use crate::output::Outputs;

use super::RUN_SCHEMA;

const PENDULUM_KEYS: &[&str] = &["delta", "epsilon", "omega", "gamma"];
const SECTION_KEYS: &[&str] = &["n_periods", "inits", "x0", "v0"];

pub fn run(cfg: &Config, out: &mut Outputs) -> Result<(), CliError> {
    cfg.restrict(&[
        RUN_SCHEMA,
        ("pendulum", PENDULUM_KEYS),
        ("section", SECTION_KEYS),
    ])?;
    let params = PendulumParams::new(
        cfg.require_f64("pendulum", "delta")?,
        cfg.require_f64("pendulum", "epsilon")?,
        cfg.f64_or("pendulum", "omega", 2.0)?,
        cfg.f64_or("pendulum", "gamma", 0.0)?,
    )
    .map_err(as_config)?;
    let n_periods = cfg.usize_or("section", "n_periods", 2000)?;

    let inits = match cfg
        .choice("section", "inits", &["ensemble", "single"], "ensemble")?
        .as_str()
    {
        "single" => {
            let x0 = cfg.require_f64("section", "x0")?;
            let v0 = cfg.f64_or("section", "v0", 0.0)?;
            vec![OscState::new(x0, v0, 0.0).map_err(as_config)?]
        }
        _ => {
            if cfg.raw("section", "x0").is_some() || cfg.raw("section", "v0").is_some() {
                return Err(CliError::config(
                    "[section] x0/v0 only apply when inits = single",
                ));
            }
            ensemble_inits()
        }
    };

    let sections = ensemble_sections(&params, &inits, n_periods, &IntegratorControls::default())
        .map_err(as_runtime)?;

    let mut csv = String::from("traj_id,k,x,v\n");
    for (traj_id, section) in sections.iter().enumerate() {
        for (k, (x, v)) in section.points.iter().enumerate() {
            writeln!(csv, "{traj_id},{k},{x},{v}").unwrap();
        }
    }
    out.write("section.csv", csv.as_bytes())?;
    println!(
        "poincare: {} trajectories x {} strobe points",
        sections.len(),
        n_periods + 1
    );
    Ok(())
}
