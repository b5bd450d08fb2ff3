//! Whole-chart behavior on reduced grids: tongue geometry, damping
//! monotonicity and classifier agreement.

use mathieu_core::{ClassifyCriteria, ClassifyMethod, StabilityLabel};
use stability::{sweep, tongue_boundary, Range1D, StabilityGrid, SweepSpec};

fn chart(gamma: f64, method: ClassifyMethod, nd: usize, ne: usize) -> StabilityGrid {
    let spec = SweepSpec {
        delta: Range1D::new(0.0, 6.0, nd).unwrap(),
        epsilon: Range1D::new(0.0, 3.0, ne).unwrap(),
        omega: 2.0,
        gamma,
        method,
        criteria: ClassifyCriteria::default(),
    };
    sweep(&spec).unwrap()
}

#[test]
fn lobes_root_at_the_resonant_detunings() {
    let grid = chart(0.0, ClassifyMethod::Floquet, 61, 31);
    // Near-axis row (epsilon = 0.1): instability only hugs delta = 1 and 4.
    let near_axis: Vec<f64> = (0..61)
        .filter(|&di| grid.cell(di, 1).label == StabilityLabel::Unstable)
        .map(|di| grid.cell(di, 1).delta)
        .collect();
    assert!(!near_axis.is_empty(), "no unstable cells on the second row");
    for d in &near_axis {
        let near_tip = (d - 1.0).abs() < 0.2 || (d - 4.0).abs() < 0.2;
        assert!(near_tip, "unstable at delta = {d} far from any tongue tip");
    }
    assert!(
        near_axis.iter().any(|d| (d - 1.0).abs() < 0.2),
        "tongue 1 missing"
    );
    assert!(
        near_axis.iter().any(|d| (d - 4.0).abs() < 0.2),
        "tongue 2 missing"
    );
    // Wedges widen with drive: count unstable cells per epsilon row.
    let row_count = |ei: usize| {
        (0..61)
            .filter(|&di| grid.cell(di, ei).label == StabilityLabel::Unstable)
            .count()
    };
    assert!(row_count(30) > row_count(15));
    assert!(row_count(15) > row_count(1));
}

#[test]
fn damping_shrinks_the_unstable_area_monotonically() {
    let counts: Vec<usize> = [0.0, 0.05, 0.1, 0.2]
        .iter()
        .map(|&g| chart(g, ClassifyMethod::Floquet, 41, 21).unstable_count())
        .collect();
    assert!(
        counts.windows(2).all(|w| w[0] >= w[1]),
        "counts not non-increasing: {counts:?}"
    );
    assert!(
        counts[0] > counts[2],
        "gamma = 0.1 should strictly shrink the lobes: {counts:?}"
    );
}

#[test]
fn classifiers_agree_away_from_boundaries() {
    let grid = chart(0.0, ClassifyMethod::Both, 31, 16);
    let frac = grid
        .agreement_fraction()
        .expect("both-method grid must yield an agreement figure");
    assert!(frac >= 0.97, "agreement {frac}");
}

#[test]
fn refined_boundary_traces_the_first_wedge() {
    let spec = SweepSpec {
        delta: Range1D::new(0.5, 1.5, 11).unwrap(),
        epsilon: Range1D::new(0.0, 1.0, 11).unwrap(),
        omega: 2.0,
        gamma: 0.0,
        method: ClassifyMethod::Floquet,
        criteria: ClassifyCriteria::default(),
    };
    let grid = sweep(&spec).unwrap();
    let pts = tongue_boundary(&grid).unwrap();
    // Boundary epsilon grows with distance from the tip, symmetrically to
    // first order: eps_boundary ~ 2|delta - 1|.
    for (d, e) in &pts {
        let expected = 2.0 * (d - 1.0).abs();
        assert!(
            (e - expected).abs() < 0.15 + 0.3 * expected,
            "boundary ({d}, {e}) far from the linear wedge {expected}"
        );
    }
    let tip = pts.iter().find(|(d, _)| (d - 1.0).abs() < 1e-12).unwrap();
    assert!(tip.1 < 0.05);
}
