//! End-to-end behavior of the strobe-and-count pipeline: a weak drive
//! leaves trajectories on invariant curves, a strong one dissolves them
//! into a chaotic sea, and the box occupancy tells the two apart by an
//! order of magnitude.

use dynamics::{
    chaos_indicator, ensemble_inits, ensemble_sections, poincare_section, PendulumParams,
};
use mathieu_core::{IntegratorControls, OscState};

#[test]
fn drive_strength_separates_occupancy_by_an_order_of_magnitude() {
    let controls = IntegratorControls::default();
    let init = OscState::new(0.8, 0.0, 0.0).unwrap();
    let n_periods = 4000;
    let boxes = 64;

    let weak = PendulumParams::new(2.5, 0.1, 2.0, 0.0).unwrap();
    let strong = PendulumParams::new(2.5, 2.5, 2.0, 0.0).unwrap();

    let quiet = poincare_section(&weak, &init, n_periods, &controls).unwrap();
    let stormy = poincare_section(&strong, &init, n_periods, &controls).unwrap();

    let f_quiet = chaos_indicator(&quiet, boxes).unwrap();
    let f_stormy = chaos_indicator(&stormy, boxes).unwrap();

    // The invariant curve saturates around 4% of the grid; the sea keeps
    // filling and passes 45% well before 4000 periods.
    assert!(f_quiet < 0.08, "regular occupancy {f_quiet}");
    assert!(f_stormy > 0.4, "chaotic occupancy {f_stormy}");
    assert!(
        f_stormy > 10.0 * f_quiet,
        "contrast {f_stormy} / {f_quiet} below 10x"
    );
}

#[test]
fn weakly_driven_ensemble_stays_on_curves() {
    let p = PendulumParams::new(2.5, 0.1, 2.0, 0.0).unwrap();
    let controls = IntegratorControls::default();
    let inits = ensemble_inits();
    let sections = ensemble_sections(&p, &inits, 600, &controls).unwrap();
    assert_eq!(sections.len(), 16);
    for (s, init) in sections.iter().zip(&inits) {
        assert_eq!(s.points.len(), 601);
        assert_eq!(s.initial, *init);
        let f = chaos_indicator(s, 64).unwrap();
        assert!(
            f < 0.12,
            "launch x0 = {} left its invariant curve: occupancy {f}",
            init.x
        );
    }
}

#[test]
fn strong_drive_spreads_the_angle_across_the_cylinder() {
    // Chaotic rotation visits the whole wrapped interval; a librating
    // trajectory cannot reach |x| near pi.
    let controls = IntegratorControls::default();
    let init = OscState::new(0.8, 0.0, 0.0).unwrap();

    let strong = PendulumParams::new(2.5, 2.5, 2.0, 0.0).unwrap();
    let s = poincare_section(&strong, &init, 2000, &controls).unwrap();
    let xs: Vec<f64> = s.points.iter().map(|&(x, _)| x).collect();
    let span = xs.iter().cloned().fold(f64::MIN, f64::max)
        - xs.iter().cloned().fold(f64::MAX, f64::min);
    assert!(span > 5.0, "angle span {span} too narrow for rotation");

    let weak = PendulumParams::new(2.5, 0.1, 2.0, 0.0).unwrap();
    let s = poincare_section(&weak, &init, 2000, &controls).unwrap();
    let max_x = s.points.iter().map(|&(x, _)| x.abs()).fold(0.0, f64::max);
    assert!(max_x < 1.5, "libration should stay inside the well: {max_x}");
}
