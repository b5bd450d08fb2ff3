//! `qstab bbq`: scan a netlist's admittance and extract its linear modes.

use std::fmt::Write as _;
use std::fs;

use blackbox::{admittance_scan, find_modes, parse_netlist};

use crate::config::Config;
use crate::error::{as_config, as_runtime, CliError};
use crate::output::Outputs;

use super::RUN_SCHEMA;

const NETWORK_KEYS: &[&str] = &["netlist"];
const YSCAN_KEYS: &[&str] = &["omega_min", "omega_max", "count"];

pub fn run(cfg: &Config, out: &mut Outputs) -> Result<(), CliError> {
    cfg.restrict(&[RUN_SCHEMA, ("network", NETWORK_KEYS), ("yscan", YSCAN_KEYS)])?;
    let path = cfg.require_str("network", "netlist")?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read netlist {path}: {e}")))?;
    let net = parse_netlist(&text).map_err(as_config)?;

    // Default scan window brackets every branch resonance with margin.
    let resonances: Vec<f64> = net.branches().iter().map(|b| b.resonance()).collect();
    let lowest = resonances.iter().cloned().fold(f64::MAX, f64::min);
    let highest = resonances.iter().cloned().fold(f64::MIN, f64::max);
    let omega_min = cfg.f64_or("yscan", "omega_min", 0.5 * lowest)?;
    let omega_max = cfg.f64_or("yscan", "omega_max", 1.5 * highest)?;
    let count = cfg.usize_or("yscan", "count", 501)?;

    let scan = admittance_scan(&net, omega_min, omega_max, count).map_err(as_config)?;
    let mut csv = String::from("omega_rad_s,re_y_s,im_y_s\n");
    for (omega, re, im) in &scan {
        writeln!(csv, "{omega},{re},{im}").unwrap();
    }
    out.write("yscan.csv", csv.as_bytes())?;

    // Mode extraction is defined for lossless networks; a lossy netlist
    // still gets its admittance scan, with an empty mode table.
    let mut csv = String::from("mode_index,omega_rad_s,z_eff_ohm\n");
    let mode_count = if net.is_lossless() {
        let set = find_modes(&net).map_err(as_runtime)?;
        for (index, mode) in set.modes.iter().enumerate() {
            writeln!(csv, "{index},{},{}", mode.omega, mode.z_eff).unwrap();
        }
        set.modes.len()
    } else {
        println!("bbq: network is lossy; modes.csv has no rows");
        0
    };
    out.write("modes.csv", csv.as_bytes())?;

    println!("bbq: {} scan points, {mode_count} modes", scan.len());
    Ok(())
}
