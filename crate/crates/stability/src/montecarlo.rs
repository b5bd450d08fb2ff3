//! Monte Carlo fabrication scans: how much junction/island parameter
//! spread a chart operating point tolerates.

use circuits::{to_mathieu, CircuitParams};
use mathieu_core::{
    classify, ClassifyCriteria, ClassifyMethod, MathieuError, MathieuParams, StabilityLabel,
};
use rayon::prelude::*;

use crate::rng::SampleRng;

/// Drive applied to every sampled device: probe energy E_k (GHz) plus the
/// chart's frequency and damping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSpec {
    pub e_k: f64,
    pub omega: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone)]
pub struct McSpec {
    pub base: CircuitParams,
    /// Relative standard deviation of E_J_sigma.
    pub rel_sigma_ej: f64,
    /// Relative standard deviation of E_C.
    pub rel_sigma_ec: f64,
    pub samples: usize,
    pub seed: u64,
    pub drive: DriveSpec,
}

impl McSpec {
    pub fn validate(&self) -> Result<(), MathieuError> {
        for (field, value) in [
            ("rel_sigma_ej", self.rel_sigma_ej),
            ("rel_sigma_ec", self.rel_sigma_ec),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(MathieuError::InvalidField {
                    field,
                    reason: format!("must be nonnegative and finite, got {value}"),
                });
            }
        }
        if self.samples == 0 {
            return Err(MathieuError::InvalidField {
                field: "samples",
                reason: "need at least one sample".into(),
            });
        }
        if !(self.drive.omega.is_finite() && self.drive.omega > 0.0) {
            return Err(MathieuError::InvalidField {
                field: "drive.omega",
                reason: format!("must be positive, got {}", self.drive.omega),
            });
        }
        if !(self.drive.gamma.is_finite() && self.drive.gamma >= 0.0) {
            return Err(MathieuError::InvalidField {
                field: "drive.gamma",
                reason: format!("must be nonnegative, got {}", self.drive.gamma),
            });
        }
        if !(self.drive.e_k.is_finite()) {
            return Err(MathieuError::InvalidField {
                field: "drive.e_k",
                reason: format!("must be finite, got {}", self.drive.e_k),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSample {
    pub index: u64,
    pub e_j: f64,
    pub e_c: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub label: StabilityLabel,
}

#[derive(Debug, Clone)]
pub struct McOutcome {
    pub samples: Vec<McSample>,
    pub unstable_fraction: f64,
    /// Draws discarded for producing unphysical parameters (E_C <= 0 or
    /// E_J < 0), summed over all samples.
    pub rejections: u64,
}

impl McOutcome {
    /// CSV with header `sample,e_j,e_c,delta,epsilon,label`.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.samples.len() * 48 + 40);
        out.push_str("sample,e_j,e_c,delta,epsilon,label\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                s.index,
                s.e_j,
                s.e_c,
                s.delta,
                s.epsilon,
                s.label.code()
            ));
        }
        out
    }
}

/// Draw perturbed devices, map each onto the chart, classify via Floquet.
///
/// Sample i consumes only the (seed, i) counter stream; rejected draws call
/// the stream again, so results are reproducible for any worker count and
/// any subset of sample indices.
pub fn fabrication_scan(mc: &McSpec) -> Result<McOutcome, MathieuError> {
    mc.validate()?;
    let criteria = ClassifyCriteria::default();
    let results: Vec<Result<(McSample, u64), MathieuError>> = (0..mc.samples as u64)
        .into_par_iter()
        .map(|i| one_sample(mc, i, &criteria))
        .collect();
    let mut samples = Vec::with_capacity(mc.samples);
    let mut rejections = 0;
    for r in results {
        let (s, rej) = r?;
        samples.push(s);
        rejections += rej;
    }
    let unstable = samples
        .iter()
        .filter(|s| s.label == StabilityLabel::Unstable)
        .count();
    Ok(McOutcome {
        unstable_fraction: unstable as f64 / samples.len() as f64,
        samples,
        rejections,
    })
}

fn one_sample(
    mc: &McSpec,
    index: u64,
    criteria: &ClassifyCriteria,
) -> Result<(McSample, u64), MathieuError> {
    let mut rng = SampleRng::new(mc.seed, index);
    let mut rejections = 0u64;
    let (e_j, e_c) = loop {
        let (g_ej, g_ec) = rng.normal_pair();
        let e_j = mc.base.e_j_sigma * (1.0 + mc.rel_sigma_ej * g_ej);
        let e_c = mc.base.e_c * (1.0 + mc.rel_sigma_ec * g_ec);
        if e_c > 0.0 && e_j >= 0.0 {
            break (e_j, e_c);
        }
        rejections += 1;
        if rejections > 10_000 {
            return Err(MathieuError::InvalidField {
                field: "rel_sigma",
                reason: format!(
                    "sample {index} rejected {rejections} times; sigmas leave almost \
                     no physical parameter mass"
                ),
            });
        }
    };
    let device = CircuitParams::new(
        e_c,
        e_j,
        mc.base.d,
        mc.base.n_g,
        mc.base.delta_flux,
        mc.base.charge_cutoff,
    )?;
    // to_mathieu fixes the canonical drive (omega = 2, gamma = 0); the scan
    // re-drives the same (delta, epsilon) point per its own DriveSpec.
    let canonical = to_mathieu(&device, mc.drive.e_k)?;
    let driven = MathieuParams::new(
        canonical.delta,
        canonical.epsilon,
        mc.drive.omega,
        mc.drive.gamma,
    )?;
    let label = classify(&driven, ClassifyMethod::Floquet, criteria)?;
    Ok((
        McSample {
            index,
            e_j,
            e_c,
            delta: canonical.delta,
            epsilon: canonical.epsilon,
            label,
        },
        rejections,
    ))
}
