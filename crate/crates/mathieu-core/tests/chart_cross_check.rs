//! Cross-validation between the two independent computational routes:
//! spectral characteristic values from truncated Hill matrices, and
//! time-domain Floquet analysis from the monodromy integrator. Agreement
//! here means a bug would have to exist in both methods at once.

use mathieu_core::{
    canonical_params, char_pair, char_value, classify, monodromy, ClassifyCriteria,
    ClassifyMethod, IntegratorControls, MathieuParams, StabilityLabel,
};

/// Chart parameters (delta, epsilon) whose canonical image is (a, q).
fn from_canonical(a: f64, q: f64) -> MathieuParams {
    // canonical_params maps (delta, epsilon) -> (delta, -epsilon/2).
    MathieuParams::new(a, -2.0 * q, 2.0, 0.0).unwrap()
}

#[test]
fn canonical_map_round_trips() {
    let p = from_canonical(1.7, -0.45);
    let (a, q) = canonical_params(p.delta, p.epsilon);
    assert_eq!(a, 1.7);
    assert_eq!(q, -0.45);
}

#[test]
fn characteristic_values_delimit_the_first_tongue() {
    // The epsilon = 1 cut: q = -1/2. The unstable strip around delta = 1
    // is bounded by the order-1 characteristic values at that q.
    let q = -0.5;
    let pair = char_pair(1, q, 60).unwrap();
    let b1 = pair.b.unwrap().value;
    let a1 = pair.a.value;
    let (lo, hi) = (a1.min(b1), a1.max(b1));
    assert!(hi - lo > 0.5, "first tongue should be wide at q = {q}");

    let criteria = ClassifyCriteria::default();
    let labels: Vec<StabilityLabel> = [
        0.5 * (lo + hi), // mid-tongue
        lo - 0.1,        // below the tongue
        hi + 0.1,        // above the tongue
        lo + 0.02,       // just inside the lower edge
        hi - 0.02,       // just inside the upper edge
    ]
    .iter()
    .map(|&delta| {
        classify(
            &from_canonical(delta, q),
            ClassifyMethod::Floquet,
            &criteria,
        )
        .unwrap()
    })
    .collect();
    assert_eq!(labels[0], StabilityLabel::Unstable);
    assert_eq!(labels[1], StabilityLabel::Stable);
    assert_eq!(labels[2], StabilityLabel::Stable);
    assert_eq!(labels[3], StabilityLabel::Unstable);
    assert_eq!(labels[4], StabilityLabel::Unstable);
}

#[test]
fn characteristic_values_delimit_the_second_tongue() {
    // The order-2 tongue is O(q^2) thin, a much sharper test of both sides.
    let q = -0.5;
    let pair = char_pair(2, q, 60).unwrap();
    let b2 = pair.b.unwrap().value;
    let a2 = pair.a.value;
    let (lo, hi) = (a2.min(b2), a2.max(b2));
    assert!(hi - lo < 0.2, "second tongue should be thin at q = {q}");

    let criteria = ClassifyCriteria::default();
    let mid = classify(
        &from_canonical(0.5 * (lo + hi), q),
        ClassifyMethod::Floquet,
        &criteria,
    )
    .unwrap();
    let below = classify(
        &from_canonical(lo - 0.05, q),
        ClassifyMethod::Floquet,
        &criteria,
    )
    .unwrap();
    let above = classify(
        &from_canonical(hi + 0.05, q),
        ClassifyMethod::Floquet,
        &criteria,
    )
    .unwrap();
    assert_eq!(mid, StabilityLabel::Unstable);
    assert_eq!(below, StabilityLabel::Stable);
    assert_eq!(above, StabilityLabel::Stable);
}

#[test]
fn stable_band_exponent_recovers_fractional_order() {
    // Inside a stability band the Floquet exponent is +-i nu where nu is the
    // fractional order whose characteristic value equals a. The spectral
    // route fixes (nu, q) -> a; the integrator must return the same nu.
    let controls = IntegratorControls::default();
    for &(nu, q) in &[(0.3, 0.4), (0.5, 0.8), (0.7, 1.5), (0.25, 2.0)] {
        let a = char_value(nu, q, 80).unwrap().value;
        let result = monodromy(&from_canonical(a, q), &controls).unwrap();
        // Pure rotation: multipliers on the unit circle.
        assert!(
            (result.spectral_radius - 1.0).abs() < 1e-8,
            "radius {} at nu = {nu}, q = {q}",
            result.spectral_radius
        );
        let beta = result
            .exponents
            .iter()
            .map(|e| e.im.abs())
            .fold(0.0, f64::max);
        assert!(
            (beta - nu).abs() < 1e-8,
            "recovered {beta}, expected {nu} at q = {q}"
        );
        for e in &result.exponents {
            assert!(e.re.abs() < 1e-9, "nonzero growth {} in a band", e.re);
        }
    }
}

#[test]
fn damping_lifts_a_thin_tongue() {
    // At epsilon = 0.05 the first tongue's undamped growth rate is about
    // epsilon/4; gamma = 0.1 overwhelms it and restores stability.
    let criteria = ClassifyCriteria::default();
    let undamped = MathieuParams::new(1.0, 0.05, 2.0, 0.0).unwrap();
    let damped = MathieuParams::new(1.0, 0.05, 2.0, 0.1).unwrap();
    assert_eq!(
        classify(&undamped, ClassifyMethod::Floquet, &criteria).unwrap(),
        StabilityLabel::Unstable
    );
    assert_eq!(
        classify(&damped, ClassifyMethod::Floquet, &criteria).unwrap(),
        StabilityLabel::Stable
    );
}
