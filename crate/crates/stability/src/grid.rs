//! The chart engine: classify a rectangle of (delta, epsilon) cells.

use mathieu_core::{
    classify_detail, ClassifyCriteria, ClassifyMethod, MathieuError, MathieuParams,
    StabilityLabel,
};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range1D {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Range1D {
    /// A regular grid over [min, max]. A single-point range (count = 1)
    /// pins one axis value, which requires min == max.
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self, MathieuError> {
        if count == 0 {
            return Err(MathieuError::InvalidField {
                field: "range",
                reason: "need at least 1 grid point".into(),
            });
        }
        let ordered = if count == 1 { min == max } else { min < max };
        if !(min.is_finite() && max.is_finite() && ordered) {
            return Err(MathieuError::InvalidField {
                field: "range",
                reason: format!(
                    "need finite min < max (or min == max with a single point), \
                     got [{min}, {max}] with {count} points"
                ),
            });
        }
        Ok(Self { min, max, count })
    }

    /// i-th grid value. The two-sided lerp hits both endpoints exactly and
    /// keeps interior points reproducible regardless of iteration direction.
    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 {
            return self.min;
        }
        let n = (self.count - 1) as f64;
        (self.min * (n - i as f64) + self.max * i as f64) / n
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }

    pub fn step(&self) -> f64 {
        if self.count == 1 {
            return 0.0;
        }
        (self.max - self.min) / (self.count - 1) as f64
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub delta: Range1D,
    pub epsilon: Range1D,
    pub omega: f64,
    pub gamma: f64,
    pub method: ClassifyMethod,
    pub criteria: ClassifyCriteria,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), MathieuError> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(MathieuError::InvalidField {
                field: "omega",
                reason: format!("drive frequency must be positive, got {}", self.omega),
            });
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(MathieuError::InvalidField {
                field: "gamma",
                reason: format!("damping must be nonnegative, got {}", self.gamma),
            });
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.delta.count * self.epsilon.count
    }
}

/// One grid point. `label` is the overall verdict (Floquet wins when both
/// methods ran); missing metrics are NaN. A cell whose integration failed
/// keeps the error text and reads as Marginal, i.e. "not classified".
#[derive(Debug, Clone)]
pub struct Cell {
    pub delta: f64,
    pub epsilon: f64,
    pub label: StabilityLabel,
    pub floquet_label: Option<StabilityLabel>,
    pub time_label: Option<StabilityLabel>,
    /// Largest real part among Floquet exponents, 1/time.
    pub growth_rate: f64,
    /// Peak |x| over the time-domain horizon relative to |x(0)|.
    pub max_amp_ratio: f64,
    pub agree: Option<bool>,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct StabilityGrid {
    pub spec: SweepSpec,
    /// Row-major: index = delta_index * epsilon_count + epsilon_index.
    pub cells: Vec<Cell>,
}

/// Classify every cell of the grid. Cells are independent; rayon schedules
/// them but results land in index order, so output is identical for any
/// worker count. Integration failures stay inside their cell.
pub fn sweep(spec: &SweepSpec) -> Result<StabilityGrid, MathieuError> {
    spec.validate()?;
    let ec = spec.epsilon.count;
    let cells: Vec<Cell> = (0..spec.cell_count())
        .into_par_iter()
        .map(|flat| {
            let delta = spec.delta.value(flat / ec);
            let epsilon = spec.epsilon.value(flat % ec);
            classify_cell(delta, epsilon, spec)
        })
        .collect();
    Ok(StabilityGrid {
        spec: spec.clone(),
        cells,
    })
}

fn classify_cell(delta: f64, epsilon: f64, spec: &SweepSpec) -> Cell {
    let outcome = MathieuParams::new(delta, epsilon, spec.omega, spec.gamma)
        .and_then(|p| classify_detail(&p, spec.method, &spec.criteria));
    match outcome {
        Ok(out) => {
            let floquet_label = out.floquet.as_ref().map(|_| out.label);
            let time_label = out.time_domain.as_ref().map(|t| t.label);
            let agree = match (floquet_label, time_label) {
                (Some(f), Some(t)) => Some(f == t),
                _ => None,
            };
            // For time-domain-only runs the overall label is the time label.
            let label = out.label;
            Cell {
                delta,
                epsilon,
                label,
                floquet_label,
                time_label,
                growth_rate: out
                    .floquet
                    .as_ref()
                    .map_or(f64::NAN, |f| f.exponents[0].re.max(f.exponents[1].re)),
                max_amp_ratio: out
                    .time_domain
                    .as_ref()
                    .map_or(f64::NAN, |t| t.max_amp_ratio),
                agree,
                error: None,
            }
        }
        Err(e) => Cell {
            delta,
            epsilon,
            label: StabilityLabel::Marginal,
            floquet_label: None,
            time_label: None,
            growth_rate: f64::NAN,
            max_amp_ratio: f64::NAN,
            agree: None,
            error: Some(e.to_string()),
        },
    }
}

impl StabilityGrid {
    pub fn cell(&self, delta_index: usize, epsilon_index: usize) -> &Cell {
        &self.cells[delta_index * self.spec.epsilon.count + epsilon_index]
    }

    pub fn unstable_count(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| c.label == StabilityLabel::Unstable)
            .count()
    }

    pub fn errored_count(&self) -> usize {
        self.cells.iter().filter(|c| c.error.is_some()).count()
    }

    /// Fraction of cells where the two classifiers agree, excluding cells
    /// whose Floquet spectral radius falls inside the marginal band (their
    /// growth is below the time-domain detection floor by construction).
    /// None when no cell carries both labels.
    pub fn agreement_fraction(&self) -> Option<f64> {
        let period = 2.0 * std::f64::consts::PI / self.spec.omega;
        let band = self.spec.criteria.marginal_half_width;
        let mut considered = 0usize;
        let mut agreed = 0usize;
        for c in &self.cells {
            let Some(agree) = c.agree else { continue };
            let radius = (c.growth_rate * period).exp();
            if (radius - 1.0).abs() <= band {
                continue;
            }
            considered += 1;
            agreed += agree as usize;
        }
        (considered > 0).then(|| agreed as f64 / considered as f64)
    }

    /// CSV with header `delta,epsilon,label,growth_rate,max_amp_ratio`;
    /// labels are 0 unstable, 1 stable, 2 marginal; missing metrics "nan".
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() * 40 + 48);
        out.push_str("delta,epsilon,label,growth_rate,max_amp_ratio\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                c.delta,
                c.epsilon,
                c.label.code(),
                fmt_metric(c.growth_rate),
                fmt_metric(c.max_amp_ratio),
            ));
        }
        out
    }

    /// Binary P5 image, one pixel per cell: white (255) unstable, gray (170)
    /// otherwise. Row 0 is the highest epsilon so tongues grow upward from
    /// the bottom edge, matching the usual chart orientation.
    pub fn to_pgm(&self) -> Vec<u8> {
        let (w, h) = (self.spec.delta.count, self.spec.epsilon.count);
        let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
        out.reserve(w * h);
        for row in 0..h {
            let ei = h - 1 - row;
            for di in 0..w {
                let px = match self.cell(di, ei).label {
                    StabilityLabel::Unstable => 255u8,
                    _ => 170u8,
                };
                out.push(px);
            }
        }
        out
    }
}

fn fmt_metric(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v}")
    }
}
