use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::laurent::{LaurentPoly, LaurentPolyMatrix};
use super::SamplingError;
use crate::rational;

/// Roots closer than this to the unit circle make the system non-invertible.
pub const UNIT_CIRCLE_TOL: f64 = 1e-9;
/// Relative tolerance for matching `z₀` with `1/z₀`.
pub const PAIR_TOL: f64 = 1e-10;
/// Truncation level of the recursive filters' impulse responses.
const HORIZON_EPS: f64 = 1e-18;

/// Factorized inverse filter
/// `Q(z) = gain · z^{-delay} · fir(z) · Π_r 1/(1 - r z⁻¹) · Π_ρ 1/(1 - ρ z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IIRFilterSpec {
    /// Adjugate of the system matrix.
    pub fir: LaurentPolyMatrix,
    pub gain: f64,
    pub delay: i64,
    /// `z₀` of every reciprocal pair `{z₀, 1/z₀}`, `|z₀| < 1`.
    pub poles: Vec<f64>,
    /// Poles run forward, `y[n] = x[n] + r y[n-1]`.
    pub causal: Vec<f64>,
    /// Poles run backward, `y[n] = x[n] + ρ y[n+1]`.
    pub anticausal: Vec<f64>,
}

impl IIRFilterSpec {
    pub fn channels(&self) -> usize {
        self.fir.size()
    }

    pub fn pole_count(&self) -> usize {
        self.causal.len() + self.anticausal.len()
    }

    /// Samples needed on each side so that truncating the recursions and
    /// the FIR part costs less than `1e-18` relative error.
    pub fn margin(&self) -> usize {
        let horizon = |p: &f64| -> usize {
            let a = p.abs();
            if a == 0.0 {
                0
            } else {
                (HORIZON_EPS.ln() / a.ln()).ceil() as usize
            }
        };
        let h: usize = self.causal.iter().chain(&self.anticausal).map(horizon).sum();
        h + self.fir.reach() as usize + self.delay.unsigned_abs() as usize + 1
    }

    /// Frequency response `Q(z)` evaluated from the factorization.
    pub fn response(&self, z: num_complex::Complex64) -> DMatrix<num_complex::Complex64> {
        let n = self.channels();
        let mut s = num_complex::Complex64::new(self.gain, 0.0) * z.inv().powi(self.delay as i32);
        for r in &self.causal {
            s /= 1.0 - r * z.inv();
        }
        for p in &self.anticausal {
            s /= 1.0 - p * z;
        }
        DMatrix::from_fn(n, n, |i, j| self.fir.get(i, j).eval(z) * s)
    }
}

fn poly_eval(c: &[f64], x: f64) -> (f64, f64) {
    // value and derivative of Σ c_i x^i
    let mut v = 0.0;
    let mut d = 0.0;
    for a in c.iter().rev() {
        d = d * x + v;
        v = v * x + a;
    }
    (v, d)
}

/// Real roots of `Σ_m a_m w^m` (`a_0 ≠ 0`) expressed as `z = 1/w`, i.e. the
/// roots of `Σ_m a_m z^{D-m}`.
fn det_roots(a: &[f64]) -> Result<Vec<f64>, SamplingError> {
    let d = a.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    // monic z^D + (a_1/a_0) z^{D-1} + … + a_D/a_0
    let comp = DMatrix::from_fn(d, d, |i, j| {
        if i == 0 {
            -a[j + 1] / a[0]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    // ascending coefficients of the z-polynomial for polishing
    let zpoly: Vec<f64> = a.iter().rev().copied().collect();
    let mut roots = Vec::with_capacity(d);
    for r in comp.complex_eigenvalues().iter() {
        let scale = r.norm().max(1.0);
        if r.im.abs() > 1e-7 * scale {
            return Err(SamplingError::ComplexRoot { re: r.re, im: r.im });
        }
        let mut x = r.re;
        for _ in 0..3 {
            let (v, dv) = poly_eval(&zpoly, x);
            if dv == 0.0 {
                break;
            }
            let step = v / dv;
            if !step.is_finite() {
                break;
            }
            x -= step;
        }
        if (x.abs() - 1.0).abs() < UNIT_CIRCLE_TOL {
            return Err(SamplingError::UnitCircleRoot(x));
        }
        roots.push(x);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// `Q = adj(A) / det A` with the determinant factored into first-order
/// sections.
pub fn invert_filter(a: &LaurentPolyMatrix) -> Result<IIRFilterSpec, SamplingError> {
    let det = a.det();
    if det.is_zero() {
        return Err(SamplingError::SingularSystem);
    }
    let coeffs: Vec<f64> = det.coeffs.iter().map(rational::to_f64).collect();
    let roots = det_roots(&coeffs)?;
    let (inside, outside): (Vec<f64>, Vec<f64>) = roots.iter().partition(|r| r.abs() < 1.0);
    let mut used = vec![false; outside.len()];
    let mut poles = Vec::new();
    for &r in &inside {
        if let Some(j) = (0..outside.len()).find(|&j| !used[j] && (r * outside[j] - 1.0).abs() < PAIR_TOL) {
            used[j] = true;
            poles.push(r);
        }
    }
    let anticausal: Vec<f64> = outside.iter().map(|r| 1.0 / r).collect();
    // det = a₀ z^{-lo} Π(1 - r z⁻¹) Π(1 - R z⁻¹), and 1/(1 - R z⁻¹) = -ρ z / (1 - ρ z)
    let lead = coeffs[0];
    let gain = anticausal.iter().fold(1.0 / lead, |g, rho| g * -rho);
    let delay = -(det.lo + anticausal.len() as i64);
    Ok(IIRFilterSpec {
        fir: a.adjugate(),
        gain,
        delay,
        poles,
        causal: inside,
        anticausal,
    })
}

/// Extension of a finite sequence past its ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Whole-sample symmetric: `g[-n] = g[n]`, `g[L-1+n] = g[L-1-n]`.
    #[default]
    Mirror,
    Periodic,
    Zero,
}

impl std::str::FromStr for Boundary {
    type Err = SamplingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mirror" => Ok(Boundary::Mirror),
            "periodic" => Ok(Boundary::Periodic),
            "zero" => Ok(Boundary::Zero),
            other => Err(SamplingError::Parse(format!("unknown boundary `{other}`"))),
        }
    }
}

impl Boundary {
    pub fn extend(&self, g: &[f64], n: i64) -> f64 {
        let len = g.len() as i64;
        if len == 0 {
            return 0.0;
        }
        if (0..len).contains(&n) {
            return g[n as usize];
        }
        match self {
            Boundary::Zero => 0.0,
            Boundary::Periodic => g[n.rem_euclid(len) as usize],
            Boundary::Mirror => {
                if len == 1 {
                    return g[0];
                }
                let period = 2 * len - 2;
                let m = n.rem_euclid(period);
                g[(if m >= len { period - m } else { m }) as usize]
            }
        }
    }
}

/// Channel samples `g_p[n]`, `n = 0..L`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Measurements {
    pub channels: Vec<Vec<f64>>,
    pub boundary: Boundary,
}

impl Measurements {
    pub fn new(channels: Vec<Vec<f64>>, boundary: Boundary) -> Self {
        Measurements { channels, boundary }
    }

    pub fn len(&self) -> usize {
        self.channels.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `c = Q ∗ g`, evaluated on the boundary-extended data and cropped to the
/// input length.
pub fn apply_filter(q: &IIRFilterSpec, g: &Measurements) -> Result<Vec<Vec<f64>>, SamplingError> {
    let n = q.channels();
    if g.channels.len() != n {
        return Err(SamplingError::ChannelMismatch {
            expected: n,
            got: g.channels.len(),
        });
    }
    let len = g.len();
    if g.channels.iter().any(|c| c.len() != len) {
        return Err(SamplingError::RaggedChannels);
    }
    let need = 2 * q.pole_count() + 1;
    if len < need {
        return Err(SamplingError::TooShort { len, need });
    }
    let m = q.margin() as i64;
    let lo = -m;
    let hi = len as i64 + m;
    let width = (hi - lo) as usize;
    let mut out = Vec::with_capacity(n);
    for p in 0..n {
        // FIR part with the delay folded in, evaluated directly on the extension
        let mut buf = vec![0.0; width];
        for (qi, ch) in g.channels.iter().enumerate() {
            let e: &LaurentPoly = q.fir.get(p, qi);
            let terms: Vec<(i64, f64)> = e.terms().map(|(k, c)| (k, rational::to_f64(c))).collect();
            if terms.is_empty() {
                continue;
            }
            for (i, slot) in buf.iter_mut().enumerate() {
                let idx = lo + i as i64 - q.delay;
                *slot += terms.iter().map(|(k, c)| c * g.boundary.extend(ch, idx - k)).sum::<f64>();
            }
        }
        for v in buf.iter_mut() {
            *v *= q.gain;
        }
        for &r in &q.causal {
            for i in 1..width {
                buf[i] += r * buf[i - 1];
            }
        }
        for &rho in &q.anticausal {
            for i in (0..width - 1).rev() {
                buf[i] += rho * buf[i + 1];
            }
        }
        out.push(buf[m as usize..m as usize + len].to_vec());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn lp(lo: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::new(lo, c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn identity_passes_through() {
        let q = invert_filter(&LaurentPolyMatrix::identity(2)).unwrap();
        assert!(q.poles.is_empty() && q.causal.is_empty());
        let g = Measurements::new(vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]], Boundary::Mirror);
        assert_eq!(apply_filter(&q, &g).unwrap(), g.channels);
    }

    #[test]
    fn cubic_spline_prefilter() {
        // (z + 4 + z⁻¹)/6 has the pole √3 - 2
        let a = LaurentPolyMatrix::new(vec![vec![lp(-1, &[1, 4, 1]).scale(&rat(1, 6))]]);
        let q = invert_filter(&a).unwrap();
        assert_eq!(q.poles.len(), 1);
        assert!((q.poles[0] - (3f64.sqrt() - 2.0)).abs() < 1e-14);
        let data: Vec<f64> = (0..40).map(|i| (i as f64 * 0.3).sin()).collect();
        let c = apply_filter(&q, &Measurements::new(vec![data.clone()], Boundary::Mirror)).unwrap();
        for i in 1..39 {
            let back = (c[0][i - 1] + 4.0 * c[0][i] + c[0][i + 1]) / 6.0;
            assert!((back - data[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_circle_is_rejected() {
        // 1 - z⁻¹ has its root on the unit circle
        let a = LaurentPolyMatrix::new(vec![vec![lp(0, &[1, -1])]]);
        assert!(matches!(invert_filter(&a), Err(SamplingError::UnitCircleRoot(_))));
        let z = LaurentPolyMatrix::new(vec![vec![LaurentPoly::zero()]]);
        assert_eq!(invert_filter(&z), Err(SamplingError::SingularSystem));
    }

    #[test]
    fn boundaries() {
        let g = [1.0, 2.0, 3.0];
        let m: Vec<f64> = (-3..6).map(|n| Boundary::Mirror.extend(&g, n)).collect();
        assert_eq!(m, vec![2.0, 3.0, 2.0, 1.0, 2.0, 3.0, 2.0, 1.0, 2.0]);
        assert_eq!(Boundary::Periodic.extend(&g, -1), 3.0);
        assert_eq!(Boundary::Zero.extend(&g, 3), 0.0);
        assert_eq!(Boundary::Mirror.extend(&[7.0], -5), 7.0);
    }

    #[test]
    fn short_input_is_rejected() {
        let a = LaurentPolyMatrix::new(vec![vec![lp(-1, &[1, 4, 1])]]);
        let q = invert_filter(&a).unwrap();
        let g = Measurements::new(vec![vec![1.0, 2.0]], Boundary::Mirror);
        assert!(matches!(apply_filter(&q, &g), Err(SamplingError::TooShort { .. })));
    }
}
