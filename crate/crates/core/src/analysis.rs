//! Diagnostics for generator sets: Gramian and Riesz bounds, slice
//! independence, overlap counts, smoothness, dimension counts and
//! polynomial reproduction.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::basis::{default_window, expand, reproduction_coeffs, GeneratorSet, ReproError};
use crate::linalg;
use crate::poly::{PiecewisePoly, Poly, Side};
use crate::rational::{self, int, Rational};

/// Below this smallest Gramian eigenvalue the lower Riesz bound is reported
/// as 0. Eigenvalues of an O(1) Hermitian matrix are resolved to about 1e-16
/// in absolute terms, so this leaves two digits of headroom.
pub const EIG_TOL: f64 = 1e-14;

pub const DEFAULT_GRID: usize = 1024;

/// Exact autocorrelation samples `R[k]_{pq} = ⟨φ_p, φ_q(· - k)⟩`.
#[derive(Debug, Clone)]
pub struct Autocorrelation {
    pub lo: i64,
    pub mats: Vec<Vec<Vec<Rational>>>,
}

impl Autocorrelation {
    pub fn new(gs: &GeneratorSet) -> Self {
        let live: Vec<&PiecewisePoly> = gs.gens.iter().filter(|g| !g.is_zero()).collect();
        let n = gs.len();
        if live.is_empty() {
            return Autocorrelation {
                lo: 0,
                mats: vec![vec![vec![Rational::zero(); n]; n]],
            };
        }
        let span = live.iter().map(|g| g.end() - g.start()).max().unwrap();
        let lo = -span;
        let mats = (lo..=span)
            .map(|k| {
                (0..n)
                    .map(|p| (0..n).map(|q| gs.gens[p].inner_product(&gs.gens[q], k)).collect())
                    .collect()
            })
            .collect();
        Autocorrelation { lo, mats }
    }

    /// `Σ_k R[k] e^{-jωk}`
    pub fn at(&self, omega: f64) -> DMatrix<Complex64> {
        let n = self.mats[0].len();
        let mut g = DMatrix::<Complex64>::zeros(n, n);
        for (i, m) in self.mats.iter().enumerate() {
            let k = self.lo + i as i64;
            let e = Complex64::from_polar(1.0, -omega * k as f64);
            for p in 0..n {
                for q in 0..n {
                    let r = &m[p][q];
                    if !r.is_zero() {
                        g[(p, q)] += e * rational::to_f64(r);
                    }
                }
            }
        }
        g
    }

    /// Exact `Ĝ(0)` (`sign = 1`) or `Ĝ(π)` (`sign = -1`).
    pub fn at_sign(&self, sign: i64) -> Vec<Vec<Rational>> {
        let n = self.mats[0].len();
        let mut g = vec![vec![Rational::zero(); n]; n];
        for (i, m) in self.mats.iter().enumerate() {
            let k = self.lo + i as i64;
            let w = if sign < 0 && k.rem_euclid(2) == 1 { -Rational::one() } else { Rational::one() };
            for p in 0..n {
                for q in 0..n {
                    g[p][q] += &m[p][q] * &w;
                }
            }
        }
        g
    }
}

#[derive(Debug, Clone)]
pub struct GramianSample {
    pub omega: f64,
    pub matrix: DMatrix<Complex64>,
}

impl GramianSample {
    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix.clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn hermitian_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `Ĝ(ω) = Σ_k ⟨φ, φᵀ(· - k)⟩ e^{-jωk}`
pub fn gramian(gs: &GeneratorSet, omega: f64) -> GramianSample {
    GramianSample {
        omega,
        matrix: Autocorrelation::new(gs).at(omega),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RieszReport {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub grid_size: usize,
    pub min_det: f64,
    /// Exact `det Ĝ(0)` and `det Ĝ(π)`.
    #[serde(with = "crate::serde_rational")]
    pub det_zero: Rational,
    #[serde(with = "crate::serde_rational")]
    pub det_pi: Rational,
}

/// Extremal Gramian eigenvalues over `ω_i = 2πi/grid`, `i = 0..grid`.
pub fn riesz_bounds(gs: &GeneratorSet, grid: usize) -> RieszReport {
    assert!(grid >= 2, "grid must have at least two points");
    let ac = Autocorrelation::new(gs);
    let mut lmin = f64::INFINITY;
    let mut lmax = f64::NEG_INFINITY;
    let mut min_det = f64::INFINITY;
    for i in 0..grid {
        let omega = 2.0 * PI * i as f64 / grid as f64;
        let ev = GramianSample {
            omega,
            matrix: ac.at(omega),
        }
        .eigenvalues();
        lmin = lmin.min(ev[0]);
        lmax = lmax.max(*ev.last().unwrap());
        min_det = min_det.min(ev.iter().product());
    }
    let det_zero = linalg::det(&ac.at_sign(1));
    let det_pi = linalg::det(&ac.at_sign(-1));
    let a = if lmin > EIG_TOL && !det_zero.is_zero() && !det_pi.is_zero() {
        lmin.max(0.0).sqrt()
    } else {
        0.0
    };
    RieszReport {
        a,
        b: lmax.max(0.0).sqrt(),
        grid_size: grid,
        min_det,
        det_zero,
        det_pi,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceCertificate {
    pub independent: bool,
    pub rank: usize,
    pub slice_count: usize,
}

/// Exact rank of the Gram matrix `∫₀¹ s_i s_j` of all nonzero slices.
pub fn slice_independence(gs: &GeneratorSet) -> SliceCertificate {
    let slices: Vec<Poly> = gs.gens.iter().flat_map(|g| g.slices().into_iter().map(|(_, p)| p)).collect();
    let gram: Vec<Vec<Rational>> = slices
        .iter()
        .map(|a| slices.iter().map(|b| a.inner01(b)).collect())
        .collect();
    let rank = linalg::rank(&gram);
    SliceCertificate {
        independent: rank == slices.len(),
        rank,
        slice_count: slices.len(),
    }
}

/// `λ(x) = Σ_n Σ_k 1_{supp φ_n}(x + k)`, supports taken as closed sets.
pub fn overlap_count(gs: &GeneratorSet, x: &Rational) -> usize {
    let mut count = 0;
    for g in &gs.gens {
        if g.is_zero() {
            continue;
        }
        let lo = rational::floor_i64(&(int(g.start()) - x)) - 1;
        let hi = rational::floor_i64(&(int(g.end()) - x)) + 1;
        for k in lo..=hi {
            let y = x + int(k);
            let j = rational::floor_i64(&y);
            let inside = |i: i64| g.piece_ref(i).is_some_and(|p| !p.is_zero());
            if inside(j) || (y.is_integer() && inside(j - 1)) {
                count += 1;
            }
        }
    }
    count
}

/// Largest `m` with `f ∈ C^m` at every knot; `-1` for a jump. The zero
/// function is smooth of every order and reports `i32::MAX`.
pub fn smoothness_order(f: &PiecewisePoly) -> i32 {
    if f.is_zero() {
        return i32::MAX;
    }
    let max_order = f.degree().unwrap_or(0) as u32 + 1;
    let mut best = i32::MAX;
    for k in f.start()..=f.end() {
        let x = int(k);
        for d in 0..=max_order {
            let l = f.eval_derivative(&x, d, Side::Left);
            let r = f.eval_derivative(&x, d, Side::Right);
            if l != r {
                best = best.min(d as i32 - 1);
                break;
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("dimension formula gives {formula} but the constraint rank gives {oracle}")]
    DimensionMismatch { formula: usize, oracle: usize },
    #[error("monomial of degree {m} is not reproduced near x = {x}")]
    Reproduction { m: u32, x: String },
}

/// Dimension of the compactly supported functions of `S_n + … + S_{n+N-1}`
/// living on `L` consecutive unit intervals.
///
/// The closed form `(LN - n)₊` is checked against the null space of the
/// `C^{n-1}` constraints on piecewise polynomials of degree `n+N-1`.
pub fn compact_dim(n: usize, big_n: usize, l: usize) -> Result<usize, AnalysisError> {
    assert!(big_n >= 1, "N must be at least 1");
    let formula = (l * big_n).saturating_sub(n);
    let oracle = compact_dim_oracle(n, big_n, l);
    if formula != oracle {
        return Err(AnalysisError::DimensionMismatch { formula, oracle });
    }
    Ok(formula)
}

fn compact_dim_oracle(n: usize, big_n: usize, l: usize) -> usize {
    let deg = n + big_n - 1;
    let per = deg + 1;
    let cols = l * per;
    let mut rows = Vec::new();
    // derivative d of the monomial t^i at t = 0 and t = 1
    let at = |i: usize, d: usize, t1: bool| -> Rational {
        if i < d {
            return Rational::zero();
        }
        let falling: i64 = ((i - d + 1)..=i).map(|v| v as i64).product();
        if t1 || i == d {
            int(falling)
        } else {
            Rational::zero()
        }
    };
    for knot in 0..=l {
        for d in 0..n {
            let mut row = vec![Rational::zero(); cols];
            if knot > 0 {
                for i in 0..per {
                    row[(knot - 1) * per + i] += at(i, d, true);
                }
            }
            if knot < l {
                for i in 0..per {
                    row[knot * per + i] -= at(i, d, false);
                }
            }
            rows.push(row);
        }
    }
    cols - linalg::rank(&rows)
}

/// `x^m` restricted to `[0, window)`.
pub fn monomial_window(m: u32, window: i64) -> PiecewisePoly {
    let p = Poly::monomial(m as usize);
    PiecewisePoly::new(0, (0..window).map(|j| p.translate(&int(j))).collect())
}

fn check_monomial(gs: &GeneratorSet, m: u32, window: i64) -> Result<(), AnalysisError> {
    let margin = gs.max_degree() as i64 + 1;
    let target = monomial_window(m, window);
    let c = reproduction_coeffs(gs, &target, window).map_err(|e| AnalysisError::Reproduction {
        m,
        x: match e {
            ReproError::Inconsistent { slice } => slice.to_string(),
            ReproError::DependentSlices { .. } => "0".into(),
        },
    })?;
    let fit = expand(&gs.gens, &c);
    match (margin..(window - margin)).find(|&j| fit.piece(j) != target.piece(j)) {
        Some(j) => Err(AnalysisError::Reproduction { m, x: j.to_string() }),
        None => Ok(()),
    }
}

/// Checks reproduction of `1, x, …, x^M` on the interior
/// `[n_N+1, K-n_N-1)` of the window `[0, K)`. Returns the exact residual,
/// which is zero on success; failures carry the degree and the slice.
pub fn verify_reproduction(gs: &GeneratorSet, max_m: u32, window: i64) -> Result<Rational, AnalysisError> {
    for m in 0..=max_m {
        check_monomial(gs, m, window)?;
    }
    Ok(Rational::zero())
}

/// Largest `M` for which all monomials up to degree `M` are reproduced, or
/// `-1` if even constants fail.
pub fn repro_degree(gs: &GeneratorSet) -> i64 {
    let window = default_window(gs);
    let cap = gs.max_degree() + 1;
    (0..=cap)
        .take_while(|&m| check_monomial(gs, m, window).is_ok())
        .last()
        .map_or(-1, i64::from)
}

/// Rational points `(2i+1)/(2·count)` in `[0,1)`.
pub fn midpoints(count: usize) -> Vec<Rational> {
    (0..count)
        .map(|i| rational::rat(2 * i as i64 + 1, 2 * count as i64))
        .collect()
}

/// Full validation of a generator set.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub degrees: Vec<u32>,
    pub support_sum: usize,
    pub shortest: bool,
    pub riesz: RieszReport,
    pub slice_rank: usize,
    pub slice_count: usize,
    pub repro_degree: i64,
    pub smoothness: Vec<i32>,
    pub overlap: Vec<usize>,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let degrees: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "{:<16}{}", "degrees", degrees.join(","));
        let _ = writeln!(s, "{:<16}{} (shortest: {})", "support_sum", self.support_sum, self.shortest);
        let _ = writeln!(s, "{:<16}A = {:.6e}, B = {:.6e}", "riesz", self.riesz.a, self.riesz.b);
        let _ = writeln!(
            s,
            "{:<16}det(0) = {}, det(pi) = {}",
            "gramian",
            rational::display(&self.riesz.det_zero),
            rational::display(&self.riesz.det_pi)
        );
        let _ = writeln!(s, "{:<16}{} / {}", "slice_rank", self.slice_rank, self.slice_count);
        let _ = writeln!(s, "{:<16}{}", "repro_degree", self.repro_degree);
        let sm: Vec<String> = self.smoothness.iter().map(i32::to_string).collect();
        let _ = writeln!(s, "{:<16}{}", "smoothness", sm.join(","));
        let _ = writeln!(s, "{:<16}{}", "status", if self.passed() { "pass" } else { "FAIL" });
        for f in &self.failures {
            let _ = writeln!(s, "  - {f}");
        }
        s
    }
}

pub fn check(gs: &GeneratorSet, grid: usize) -> CheckReport {
    let n_max = gs.max_degree();
    let n_min = gs.degrees.first().copied().unwrap_or(0);
    let support_sum = gs.support_sum();
    let shortest = support_sum as u32 == n_max + 1;
    let riesz = riesz_bounds(gs, grid);
    let cert = slice_independence(gs);
    let repro = repro_degree(gs);
    let smoothness: Vec<i32> = gs.gens.iter().map(smoothness_order).collect();
    let overlap: Vec<usize> = midpoints(16).iter().map(|x| overlap_count(gs, x)).collect();

    let mut failures = Vec::new();
    if !shortest {
        failures.push(format!("not shortest: support sum {support_sum} > {}", n_max + 1));
    }
    if riesz.a <= 0.0 {
        failures.push(format!(
            "not a Riesz basis: min det G = {:.3e}, det G(0) = {}",
            riesz.min_det,
            rational::display(&riesz.det_zero)
        ));
    }
    if !cert.independent {
        failures.push(format!("slices dependent: rank {} of {}", cert.rank, cert.slice_count));
    }
    if repro < n_max as i64 {
        failures.push(format!("reproduces degree {repro} only, expected {n_max}"));
    }
    for (i, g) in gs.gens.iter().enumerate() {
        if smoothness[i] < n_min as i32 - 1 {
            failures.push(format!("generator {i} is C^{} but the space needs C^{}", smoothness[i], n_min as i32 - 1));
        }
        if g.degree().unwrap_or(0) > n_max as usize {
            failures.push(format!("generator {i} exceeds degree {n_max}"));
        }
    }
    if overlap.iter().any(|&c| c != overlap[0]) {
        failures.push("overlap count is not constant".into());
    }
    CheckReport {
        degrees: gs.degrees.clone(),
        support_sum,
        shortest,
        riesz,
        slice_rank: cert.rank,
        slice_count: cert.slice_count,
        repro_degree: repro,
        smoothness,
        overlap,
        failures,
    }
}
