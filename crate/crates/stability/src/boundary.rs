//! Tongue-boundary extraction: per delta column, the lowest unstable
//! epsilon, sharpened by bisection on the spectral radius.

use mathieu_core::{monodromy, MathieuError, MathieuParams, StabilityLabel};
use rayon::prelude::*;

use crate::grid::StabilityGrid;

/// Bisection stops once the epsilon bracket is this tight.
pub const BOUNDARY_EPS_TOL: f64 = 1e-4;

/// For every delta column that contains an unstable cell, return the
/// boundary point (delta, epsilon) where the Floquet spectral radius first
/// exceeds 1, refined to `BOUNDARY_EPS_TOL` in epsilon between the last
/// stable and first unstable grid rows. Columns that are unstable already
/// at the lowest epsilon are reported at that epsilon unrefined.
pub fn tongue_boundary(grid: &StabilityGrid) -> Result<Vec<(f64, f64)>, MathieuError> {
    if grid.cells.iter().any(|c| c.floquet_label.is_none()) {
        return Err(MathieuError::InvalidField {
            field: "grid",
            reason: "tongue_boundary needs a grid swept with the floquet method".into(),
        });
    }
    let spec = &grid.spec;
    let columns: Vec<Option<(f64, f64)>> = (0..spec.delta.count)
        .into_par_iter()
        .map(|di| {
            let delta = spec.delta.value(di);
            let first_unstable = (0..spec.epsilon.count)
                .find(|&ei| grid.cell(di, ei).label == StabilityLabel::Unstable)?;
            if first_unstable == 0 {
                return Some((delta, spec.epsilon.value(0)));
            }
            let lo = spec.epsilon.value(first_unstable - 1);
            let hi = spec.epsilon.value(first_unstable);
            Some((delta, refine_crossing(delta, lo, hi, spec)))
        })
        .collect();
    Ok(columns.into_iter().flatten().collect())
}

/// Bisect the radius crossing inside (lo, hi]. The stable side may sit at
/// radius exactly 1 (undamped elliptic cells), so the crossing test uses
/// the top of the marginal band rather than 1 itself.
fn refine_crossing(delta: f64, mut lo: f64, mut hi: f64, spec: &crate::grid::SweepSpec) -> f64 {
    let threshold = 1.0 + spec.criteria.marginal_half_width;
    let exceeds = |epsilon: f64| -> bool {
        MathieuParams::new(delta, epsilon, spec.omega, spec.gamma)
            .and_then(|p| monodromy(&p, &spec.criteria.controls))
            .map(|f| f.spectral_radius > threshold)
            // An integration failure inside the bracket is treated as the
            // unstable side, biasing the boundary downward (conservative).
            .unwrap_or(true)
    };
    while hi - lo > BOUNDARY_EPS_TOL {
        let mid = 0.5 * (lo + hi);
        if exceeds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
