use crate::basis::{named_basis, BasisId, GeneratorSet};
use crate::poly::Side;
use crate::rational;

use super::{apply_filter, canonical_functionals, invert_filter, system_matrix, AnalysisFunctional, Measurements, SamplingError};

/// Float copy of one generator: ascending coefficients per unit piece.
#[derive(Debug, Clone)]
struct FloatGen {
    start: i64,
    pieces: Vec<Vec<f64>>,
}

impl FloatGen {
    fn end(&self) -> i64 {
        self.start + self.pieces.len() as i64
    }

    /// `d`-th derivative of piece `j` at local `t`.
    fn eval(&self, j: i64, t: f64, order: u32) -> f64 {
        if j < self.start || j >= self.end() {
            return 0.0;
        }
        let c = &self.pieces[(j - self.start) as usize];
        let mut acc = 0.0;
        for (i, a) in c.iter().enumerate().skip(order as usize).rev() {
            let fall: f64 = (0..order).map(|r| (i as u32 - r) as f64).product();
            acc = acc * t + a * fall;
        }
        acc
    }
}

/// `f̃(x) = Σ_q Σ_k c_q[k] φ_q(x - k)` for `k` in `0..L`.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    gens: Vec<FloatGen>,
    coeffs: Vec<Vec<f64>>,
}

impl Reconstruction {
    pub fn len(&self) -> usize {
        self.coeffs.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    /// Interval `[lo, hi)` on which every contributing shift has a coefficient.
    pub fn covered(&self) -> (f64, f64) {
        let lo = self.gens.iter().map(|g| g.end() - 1).max().unwrap_or(0);
        let hi = self.gens.iter().map(|g| g.start).min().unwrap_or(0) + self.len() as i64;
        (lo as f64, hi as f64)
    }

    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.covered();
        x >= lo && x < hi
    }

    pub fn eval(&self, x: f64) -> Result<f64, SamplingError> {
        self.eval_derivative(x, 0, Side::Right)
    }

    /// `f̃^{(order)}(x)`; at knots `side` picks the one-sided limit.
    pub fn eval_derivative(&self, x: f64, order: u32, side: Side) -> Result<f64, SamplingError> {
        let (lo, hi) = self.covered();
        let inside = match side {
            Side::Right => x >= lo && x < hi,
            Side::Left => x > lo && x <= hi,
        };
        if !inside {
            return Err(SamplingError::OutsideCoverage { x, lo, hi });
        }
        let mut j = x.floor();
        let mut t = x - j;
        if side == Side::Left && t == 0.0 {
            j -= 1.0;
            t = 1.0;
        }
        let j = j as i64;
        let len = self.len() as i64;
        let mut acc = 0.0;
        for (g, c) in self.gens.iter().zip(&self.coeffs) {
            // φ(x - k) uses piece j - k, nonzero for start ≤ j - k < end
            let k_lo = (j - g.end() + 1).max(0);
            let k_hi = (j - g.start).min(len - 1);
            for k in k_lo..=k_hi {
                acc += c[k as usize] * g.eval(j - k, t, order);
            }
        }
        Ok(acc)
    }

    /// `ψ` applied to `f̃(· + n)`.
    pub fn measure(&self, psi: &AnalysisFunctional, n: i64) -> Result<f64, SamplingError> {
        let x = n as f64 + rational::to_f64(&psi.offset);
        self.eval_derivative(x, psi.order, psi.eval_side())
    }
}

/// Wraps coefficient sequences (`c_q[k]`, `k = 0..L`) as an evaluator.
pub fn reconstruct(gs: &GeneratorSet, c: Vec<Vec<f64>>) -> Result<Reconstruction, SamplingError> {
    if c.len() != gs.len() {
        return Err(SamplingError::ChannelMismatch {
            expected: gs.len(),
            got: c.len(),
        });
    }
    let len = c.first().map_or(0, Vec::len);
    if c.iter().any(|ch| ch.len() != len) {
        return Err(SamplingError::RaggedChannels);
    }
    let gens = gs
        .gens
        .iter()
        .map(|g| FloatGen {
            start: g.start(),
            pieces: g
                .pieces()
                .iter()
                .map(|p| p.coeffs().iter().map(rational::to_f64).collect())
                .collect(),
        })
        .collect();
    Ok(Reconstruction { gens, coeffs: c })
}

/// Largest `|ψ_p(f̃(· + n)) - g_p[n]|` over samples whose measurement
/// lies inside the covered interval.
pub fn consistency_check(f: &Reconstruction, psi: &[AnalysisFunctional], g: &Measurements) -> f64 {
    let mut worst: f64 = 0.0;
    for (p, ch) in psi.iter().zip(&g.channels) {
        for (n, v) in ch.iter().enumerate() {
            if let Ok(m) = f.measure(p, n as i64) {
                worst = worst.max((m - v).abs());
            }
        }
    }
    worst
}

/// Interpolation formula for bases whose measurement matrix has no poles,
/// so the coefficients are the samples up to a shift.
pub fn direct_formulas(id: BasisId, data: &Measurements) -> Result<Reconstruction, SamplingError> {
    let gs = named_basis(id).map_err(|e| SamplingError::Parse(e.to_string()))?;
    let a = system_matrix(&gs, &canonical_functionals(id))?;
    let q = invert_filter(&a)?;
    if q.pole_count() > 0 {
        return Err(SamplingError::NotDirect(id.to_string()));
    }
    reconstruct(&gs, apply_filter(&q, data)?)
}

/// `g_p[i] = h^{d_p} f^{(d_p)}((start + i + τ_p) h)` for a smooth `f` given as
/// `f(x, d) = f^{(d)}(x)`.
pub fn sample_function(
    f: impl Fn(f64, u32) -> f64,
    psi: &[AnalysisFunctional],
    start: i64,
    len: usize,
    h: f64,
) -> Vec<Vec<f64>> {
    psi.iter()
        .map(|p| {
            let tau = rational::to_f64(&p.offset);
            let scale = h.powi(p.order as i32);
            (0..len)
                .map(|i| scale * f((start as f64 + i as f64 + tau) * h, p.order))
                .collect()
        })
        .collect()
}
