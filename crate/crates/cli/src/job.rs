//! The reconstruction pipeline shared by `reconstruct` and `serve`.

use mbspline::sampling::{
    apply_filter, consistency_check, invert_filter, reconstruct, system_matrix, AnalysisFunctional, Boundary,
    Measurements,
};
use mbspline::{GeneratorSet, Side};
use serde::Serialize;

use crate::CliError;

/// Upper bound on dense-curve points per dimension.
pub const MAX_POINTS: usize = 1 << 22;

#[derive(Debug, Clone)]
pub struct ReconstructJob {
    pub gs: GeneratorSet,
    pub functionals: Vec<AnalysisFunctional>,
    /// Integer position of the first sample.
    pub start: i64,
    /// Per dimension, one sample vector per channel.
    pub dims: Vec<Vec<Vec<f64>>>,
    /// Curve points per unit interval.
    pub grid: usize,
    pub boundary: Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub x: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub consistency: f64,
}

impl ReconstructJob {
    pub fn run(&self) -> Result<Curve, CliError> {
        if self.grid < 2 {
            return Err(CliError::Usage(format!("grid density must be at least 2, got {}", self.grid)));
        }
        if self.dims.is_empty() {
            return Err(CliError::Usage("no sample data".into()));
        }
        let q = invert_filter(&system_matrix(&self.gs, &self.functionals)?)?;
        let mut curve = Curve {
            x: Vec::new(),
            y: Vec::with_capacity(self.dims.len()),
            consistency: 0.0,
        };
        let mut span = None;
        for channels in &self.dims {
            let g = Measurements::new(channels.clone(), self.boundary);
            let f = reconstruct(&self.gs, apply_filter(&q, &g)?)?;
            let (lo, hi) = f.covered();
            if span.is_some_and(|s| s != (lo, hi)) {
                return Err(CliError::Usage("dimensions have different sample counts".into()));
            }
            span = Some((lo, hi));
            if hi <= lo {
                return Err(CliError::Usage("too few samples to cover any interval".into()));
            }
            let cells = (hi - lo).round() as usize;
            if cells.saturating_mul(self.grid) >= MAX_POINTS {
                return Err(CliError::Usage(format!("curve would exceed {MAX_POINTS} points")));
            }
            let count = cells * self.grid;
            let us: Vec<f64> = (0..=count).map(|i| lo + i as f64 / self.grid as f64).collect();
            let y = us
                .iter()
                .enumerate()
                .map(|(i, &u)| f.eval_derivative(u, 0, if i == count { Side::Left } else { Side::Right }))
                .collect::<Result<Vec<_>, _>>()?;
            if curve.x.is_empty() {
                curve.x = us.iter().map(|u| u + self.start as f64).collect();
            }
            curve.y.push(y);
            curve.consistency = curve.consistency.max(consistency_check(&f, &self.functionals, &g));
        }
        Ok(curve)
    }
}
