//! Device-to-chart pipeline checks: capacitances to charging energy to band
//! structure, and the two band-energy routes against each other.

use circuits::{
    band_energy_mathieu, charge_dispersion, charging_energy, eigensolve, plasma_frequency,
    to_mathieu, CapacitanceSpec, CircuitParams, EcConvention,
};
use mathieu_core::{classify, ClassifyCriteria, ClassifyMethod, StabilityLabel};

#[test]
fn mathieu_route_tracks_eigensolve_across_regimes() {
    // Away from the band degeneracies at integer and half-integer gate
    // charge, the two routes solve the same operator and must agree far
    // more tightly than either is ever used.
    for &ratio in &[0.2, 1.0, 5.0] {
        for &n_g in &[0.1, 0.25, 0.4] {
            let p = CircuitParams::new(1.0, ratio, 0.0, n_g, 0.0, 40).unwrap();
            let spectrum = eigensolve(&p).unwrap();
            for m in 0..3 {
                let via_chart = band_energy_mathieu(m, n_g, &p).unwrap();
                let via_matrix = spectrum.level(m);
                let scale = via_matrix.abs().max(1.0);
                let rel = (via_chart - via_matrix).abs() / scale;
                assert!(
                    rel < 1e-6,
                    "band {m}, n_g {n_g}, ratio {ratio}: {via_chart} vs {via_matrix} (rel {rel})"
                );
            }
        }
    }
}

#[test]
fn dispersion_collapses_with_junction_energy() {
    let disp = |ratio: f64| {
        let p = CircuitParams::new(1.0, ratio, 0.0, 0.0, 0.0, 30).unwrap();
        charge_dispersion(&p, 0).unwrap()
    };
    let weak = disp(0.2);
    let mid = disp(5.0);
    let strong = disp(50.0);
    assert!(weak > mid && mid > strong, "{weak} > {mid} > {strong} fails");
    assert!(strong < 1e-3 * weak);
}

#[test]
fn driven_device_lands_in_the_expected_chart_region() {
    let criteria = ClassifyCriteria::default();
    // Weak junction: epsilon = E_J*/E_C = 0.4. Driving at twice the probe
    // energy delta = 1 sits mid-tongue; delta = 2.5 is deep in a band.
    let device = CircuitParams::new(1.0, 0.4, 0.0, 0.0, 0.0, 10).unwrap();
    let on_tongue = to_mathieu(&device, 0.25).unwrap();
    assert_eq!(on_tongue.delta, 1.0);
    assert_eq!(on_tongue.epsilon, 0.4);
    assert_eq!(
        classify(&on_tongue, ClassifyMethod::Floquet, &criteria).unwrap(),
        StabilityLabel::Unstable
    );
    let off_tongue = to_mathieu(&device, 0.625).unwrap();
    assert_eq!(
        classify(&off_tongue, ClassifyMethod::Floquet, &criteria).unwrap(),
        StabilityLabel::Stable
    );

    // Flux-frustrated symmetric pair: the drive term collapses to rounding
    // noise (cos(pi/2) is ~6e-17, not zero), so off the resonant detunings
    // the motion is plain stable rotation. Exactly at delta = n^2 the
    // degenerate multipliers would read Marginal instead, correctly.
    let frustrated = CircuitParams::new(1.0, 0.4, 0.0, 0.0, std::f64::consts::PI, 10).unwrap();
    let quiet = to_mathieu(&frustrated, 0.625).unwrap();
    assert!(quiet.epsilon.abs() < 1e-16);
    assert_eq!(
        classify(&quiet, ClassifyMethod::Floquet, &criteria).unwrap(),
        StabilityLabel::Stable
    );
}

#[test]
fn capacitances_to_plasma_frequency() {
    // 10 aF gate, 1 fF junction: E_C just over 19 GHz in the standard
    // convention, double that in the doubled convention.
    let std_spec = CapacitanceSpec::new(1e-17, 1e-15, EcConvention::Standard).unwrap();
    let e_c = charging_energy(&std_spec);
    assert!((e_c - 19.18).abs() < 0.05, "E_C = {e_c} GHz");
    let doubled = CapacitanceSpec::new(1e-17, 1e-15, EcConvention::Doubled).unwrap();
    assert!((charging_energy(&doubled) - 2.0 * e_c).abs() < 1e-12 * e_c);

    // In the well-type regime the 0 -> 1 gap approaches the plasma
    // frequency from below, short by roughly one charging energy.
    let p = CircuitParams::new(e_c, 50.0 * e_c, 0.0, 0.0, 0.0, 60).unwrap();
    let gap_ghz = eigensolve(&p).unwrap().gap(1);
    let plasma_ghz = plasma_frequency(&p) / (2.0 * std::f64::consts::PI * 1e9);
    assert!(gap_ghz < plasma_ghz);
    assert!((plasma_ghz - gap_ghz - e_c).abs() < 0.2 * e_c);
}
