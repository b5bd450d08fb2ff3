//! Box-counting occupancy of a Poincare section.
//!
//! A regular trajectory strobes onto a curve (or a few points), filling
//! O(box_count) of the box_count^2 cells; a chaotic one wanders over an
//! area and fills O(box_count^2). The occupied fraction therefore
//! separates the two regimes by an order of magnitude once enough periods
//! are accumulated.

use mathieu_core::MathieuError;
use std::f64::consts::PI;

use crate::section::PoincareSection;

/// Fraction of an x-v grid's cells visited by the section's points.
///
/// The grid covers x in (-pi, pi] and v in [-v_max, v_max] with
/// `box_count` cells per axis, where v_max is 1.05 times the largest |v|
/// observed (so every point lands strictly inside). Returns a value in
/// (0, 1].
pub fn chaos_indicator(
    section: &PoincareSection,
    box_count: usize,
) -> Result<f64, MathieuError> {
    if box_count < 8 {
        return Err(MathieuError::InvalidField {
            field: "box_count",
            reason: format!("need at least 8 boxes per axis, got {box_count}"),
        });
    }
    if section.points.is_empty() {
        return Err(MathieuError::InvalidField {
            field: "section",
            reason: "cannot box-count an empty section".into(),
        });
    }
    let mut v_max = section
        .points
        .iter()
        .map(|&(_, v)| v.abs())
        .fold(0.0, f64::max)
        * 1.05;
    if v_max == 0.0 {
        // All strobes at v = 0 (e.g. a fixed point): any finite height
        // works, every point falls in the middle row.
        v_max = 1.0;
    }

    let mut occupied = vec![false; box_count * box_count];
    let nx = box_count as f64;
    for &(x, v) in &section.points {
        // x in (-pi, pi]: map to [0, box_count), clamp the x = pi edge in.
        let ix = (((x + PI) / (2.0 * PI)) * nx) as usize;
        let iv = (((v + v_max) / (2.0 * v_max)) * nx) as usize;
        let ix = ix.min(box_count - 1);
        let iv = iv.min(box_count - 1);
        occupied[ix * box_count + iv] = true;
    }
    let filled = occupied.iter().filter(|&&b| b).count();
    Ok(filled as f64 / (box_count * box_count) as f64)
}
