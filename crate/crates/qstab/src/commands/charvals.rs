//! `qstab charvals`: tabulate the integer-order characteristic curves
//! a_n(q) and b_n(q) that frame the stability chart.

use std::fmt::Write as _;

use mathieu_core::{char_pair, DEFAULT_TRUNCATION};

use crate::config::Config;
use crate::error::{as_runtime, CliError};
use crate::output::Outputs;

use super::{range_from, RUN_SCHEMA};

const CHARVALS_KEYS: &[&str] = &["q_min", "q_max", "q_count", "n_max"];

pub fn run(cfg: &Config, out: &mut Outputs) -> Result<(), CliError> {
    cfg.restrict(&[RUN_SCHEMA, ("charvals", CHARVALS_KEYS)])?;
    let grid = range_from(cfg, "charvals", "q", (0.0, 5.0, 201))?;
    let n_max = cfg.usize_or("charvals", "n_max", 4)?;
    if n_max > 50 {
        return Err(CliError::config(format!(
            "[charvals] n_max: orders above 50 are not supported, got {n_max}"
        )));
    }
    let truncation = DEFAULT_TRUNCATION.max(2 * n_max + 24);

    let mut csv = String::from("q,n,a,b\n");
    for q in grid.values() {
        for n in 0..=n_max as u32 {
            let pair = char_pair(n, q, truncation).map_err(as_runtime)?;
            let a = pair.a.value;
            match pair.b {
                Some(b) => writeln!(csv, "{q},{n},{a},{}", b.value).unwrap(),
                None => writeln!(csv, "{q},{n},{a},nan").unwrap(),
            }
        }
    }
    out.write("charvals.csv", csv.as_bytes())?;
    println!(
        "charvals: {} q points x orders 0..={n_max}",
        grid.count
    );
    Ok(())
}
