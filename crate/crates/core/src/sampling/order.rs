use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::basis::GeneratorSet;

use super::{apply_filter, invert_filter, reconstruct, sample_function, system_matrix};
use super::{AnalysisFunctional, Boundary, Measurements, SamplingError};

/// Smooth test signals with closed-form derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    Sin,
    Cos,
    Exp,
    /// `x^m`
    Monomial(u32),
}

impl TestFunction {
    /// `f^{(d)}(x)`
    pub fn eval(&self, x: f64, d: u32) -> f64 {
        match self {
            TestFunction::Sin => [x.sin(), x.cos(), -x.sin(), -x.cos()][(d % 4) as usize],
            TestFunction::Cos => [x.cos(), -x.sin(), -x.cos(), x.sin()][(d % 4) as usize],
            TestFunction::Exp => x.exp(),
            TestFunction::Monomial(m) => {
                if d > *m {
                    return 0.0;
                }
                let fall: f64 = (0..d).map(|r| (m - r) as f64).product();
                fall * x.powi((m - d) as i32)
            }
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Sin => f.write_str("sin"),
            TestFunction::Cos => f.write_str("cos"),
            TestFunction::Exp => f.write_str("exp"),
            TestFunction::Monomial(m) => write!(f, "x^{m}"),
        }
    }
}

impl FromStr for TestFunction {
    type Err = SamplingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sin" => Ok(TestFunction::Sin),
            "cos" => Ok(TestFunction::Cos),
            "exp" => Ok(TestFunction::Exp),
            _ => s
                .strip_prefix("x^")
                .and_then(|m| m.parse().ok())
                .map(TestFunction::Monomial)
                .ok_or_else(|| SamplingError::Parse(format!("unknown test function `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderReport {
    pub function: String,
    pub steps: Vec<f64>,
    /// Max error on the evaluation window for each step.
    pub errors: Vec<f64>,
    /// Least-squares slope of `log₂ error` against `log₂ h`; `None` when
    /// some error is exactly zero.
    pub slope: Option<f64>,
    /// Every error is at rounding level relative to `max |f|` on the window.
    pub exact: bool,
}

/// Error window and sampling range in units of `x`.
const WINDOW: (f64, f64) = (0.0, 8.0);
const SAMPLED: (f64, f64) = (-8.0, 16.0);
const POINTS_PER_CELL: usize = 8;
const EXACT_TOL: f64 = 1e-12;

/// Samples `f` at step `h`, reconstructs and measures the L∞ error on
/// `[0, 8]` for each step, then fits the convergence slope.
pub fn order_experiment(
    gs: &GeneratorSet,
    psi: &[AnalysisFunctional],
    f: TestFunction,
    steps: &[f64],
) -> Result<OrderReport, SamplingError> {
    let q = invert_filter(&system_matrix(gs, psi)?)?;
    let mut errors = Vec::with_capacity(steps.len());
    let mut peak: f64 = 1.0;
    for &h in steps {
        let start = (SAMPLED.0 / h).floor() as i64;
        let len = ((SAMPLED.1 - SAMPLED.0) / h).ceil() as usize + 1;
        let g = Measurements::new(sample_function(|x, d| f.eval(x, d), psi, start, len, h), Boundary::Mirror);
        let rec = reconstruct(gs, apply_filter(&q, &g)?)?;
        let cells = ((WINDOW.1 - WINDOW.0) / h).round() as usize;
        let count = cells * POINTS_PER_CELL;
        let mut worst: f64 = 0.0;
        for i in 0..count {
            let x = WINDOW.0 + (WINDOW.1 - WINDOW.0) * i as f64 / count as f64;
            let y = rec.eval(x / h - start as f64)?;
            let want = f.eval(x, 0);
            peak = peak.max(want.abs());
            worst = worst.max((y - want).abs());
        }
        errors.push(worst);
    }
    let exact = errors.iter().all(|e| *e < EXACT_TOL * peak);
    Ok(OrderReport {
        function: f.to_string(),
        steps: steps.to_vec(),
        slope: fit_slope(steps, &errors),
        errors,
        exact,
    })
}

fn fit_slope(steps: &[f64], errors: &[f64]) -> Option<f64> {
    if errors.iter().any(|e| e.is_nan() || *e <= 0.0) {
        return None;
    }
    let pts: Vec<(f64, f64)> = steps.iter().zip(errors).map(|(h, e)| (h.log2(), e.log2())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    Some(sxy / sxx)
}
