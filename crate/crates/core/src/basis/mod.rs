//! Shortest-support generator sets (mB-splines): B-splines, standardization,
//! the increment and insertion steps, the recursive build, named
//! post-processed bases, and reproduction coefficients.

mod coeffs;
mod named;
mod repro;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::PiecewisePoly;
use crate::rational::Rational;

pub use coeffs::CoeffSeq;
pub use named::{named_basis, BasisId, PostProcess, Term};
pub use repro::{default_window, reproduction_coeffs, ReproError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("degree vector must be nonempty and strictly increasing")]
    InvalidDegrees,
    #[error("no generator has a nonzero integral")]
    NoIntegral,
    #[error("step produced a function without compact support (generator {0})")]
    NonCompact(usize),
    #[error("unknown basis id `{0}`")]
    UnknownId(String),
    #[error("design conditions for `{id}` are {reason}")]
    Design { id: String, reason: String },
    #[error("reproduction coefficients are inconsistent: {0}")]
    Bookkeeping(String),
}

/// An ordered tuple of generators with the degree vector of the space they span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub degrees: Vec<u32>,
    #[serde(rename = "generators")]
    pub gens: Vec<PiecewisePoly>,
    /// Causal coefficients of `β^{n_i}` in this basis, one record per degree.
    #[serde(skip)]
    pub repro: Option<Vec<CoeffSeq>>,
    pub postprocess: Option<PostProcess>,
}

impl GeneratorSet {
    pub fn new(degrees: Vec<u32>, gens: Vec<PiecewisePoly>) -> Self {
        GeneratorSet {
            degrees,
            gens,
            repro: None,
            postprocess: None,
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.last().copied().unwrap_or(0)
    }

    /// `|φ| = Σ |supp φ_n|`
    pub fn support_sum(&self) -> usize {
        self.gens.iter().map(PiecewisePoly::support_size).sum()
    }

    pub fn support_sizes(&self) -> Vec<usize> {
        self.gens.iter().map(PiecewisePoly::support_size).collect()
    }

    pub fn integrals(&self) -> Vec<Rational> {
        self.gens.iter().map(PiecewisePoly::integral).collect()
    }

    /// `∫φ ∈ {0,1}` and support starting at 0 for every generator.
    pub fn is_standardized(&self) -> bool {
        self.gens.iter().all(|g| {
            let i = g.integral();
            (i.is_zero() || i.is_one()) && (g.is_zero() || g.start() == 0)
        })
    }

    /// Canonical export form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("generator set serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error> {
        serde_json::from_value(v.clone())
    }
}

/// Causal B-spline of degree `n` by repeated integrate-and-difference of `β⁰`.
pub fn bspline(n: u32) -> PiecewisePoly {
    (0..n).fold(PiecewisePoly::box0(), |b, _| b.antiderivative().finite_difference())
}

/// Per-generator standardization `θ(x) = scale · θ̃(x - shift)`.
#[derive(Debug, Clone)]
struct Standardization {
    scale: Rational,
    shift: i64,
}

fn standardize_one(g: &PiecewisePoly) -> (PiecewisePoly, Standardization) {
    if g.is_zero() {
        return (
            g.clone(),
            Standardization {
                scale: Rational::one(),
                shift: 0,
            },
        );
    }
    let i = g.integral();
    let scale = if i.is_zero() { Rational::one() } else { i };
    let shift = g.start();
    let out = g.shifted(-shift).scale(&(Rational::one() / &scale));
    (out, Standardization { scale, shift })
}

fn apply_standardization(c: &CoeffSeq, st: &[Standardization]) -> CoeffSeq {
    let mut entries = Vec::new();
    for k in c.lo()..c.hi() {
        for (s, t) in st.iter().enumerate() {
            let v = c.get(k, s);
            if !v.is_zero() {
                entries.push((k + t.shift, s, v * &t.scale));
            }
        }
    }
    CoeffSeq::from_entries(c.channels(), entries)
}

/// Rescales each generator to integral 1 (when nonzero) and shifts its
/// support to start at 0. Reproduction records are carried along.
pub fn standardize(gs: &GeneratorSet) -> GeneratorSet {
    let (gens, st): (Vec<_>, Vec<_>) = gs.gens.iter().map(standardize_one).unzip();
    GeneratorSet {
        degrees: gs.degrees.clone(),
        gens,
        repro: gs
            .repro
            .as_ref()
            .map(|r| r.iter().map(|c| apply_standardization(c, &st)).collect()),
        postprocess: None,
    }
}

/// Index of the shortest generator with nonzero integral, ties to the lowest index.
fn pick_s0(gens: &[PiecewisePoly], ints: &[Rational]) -> Option<usize> {
    (0..gens.len())
        .filter(|&s| !ints[s].is_zero())
        .min_by_key(|&s| (gens[s].end() - gens[s].start(), s))
}

/// Carries `c` (coefficients of a target in η) to the coefficients of
/// `Δ∫target` in θ, where `θ_{s0} = ΔH_{s0}`, `θ_s = H_s - H_{s0}` for
/// nonzero-integral `s` and `θ_s = H_s` otherwise.
fn carry_coeffs(c: &CoeffSeq, s0: usize, nonzero: &[bool]) -> Result<CoeffSeq, BasisError> {
    let n = c.channels();
    let (lo, hi) = (c.lo(), c.hi() + 1);
    let mut entries = Vec::new();
    let mut running = Rational::zero();
    for k in lo..hi {
        let d: Vec<Rational> = (0..n).map(|s| c.get(k, s) - c.get(k - 1, s)).collect();
        let mut e = d[s0].clone();
        for s in 0..n {
            if s != s0 {
                if nonzero[s] {
                    e += &d[s];
                }
                entries.push((k, s, d[s].clone()));
            }
        }
        running += e;
        entries.push((k, s0, running.clone()));
    }
    if !running.is_zero() {
        return Err(BasisError::Bookkeeping("telescoped channel has a nonzero tail".into()));
    }
    Ok(CoeffSeq::from_entries(n, entries))
}

/// One increment step: integrate every generator, difference the shortest
/// one with nonzero integral, subtract its antiderivative from the other
/// nonzero-integral ones, then standardize. All degrees rise by one.
pub fn increment_step(gs: &GeneratorSet) -> Result<GeneratorSet, BasisError> {
    let gs = standardize(gs);
    let ints = gs.integrals();
    let s0 = pick_s0(&gs.gens, &ints).ok_or(BasisError::NoIntegral)?;
    let hs: Vec<_> = gs.gens.iter().map(PiecewisePoly::antiderivative).collect();
    let mut theta = Vec::with_capacity(gs.len());
    for s in 0..gs.len() {
        let g = if s == s0 {
            hs[s].finite_difference()
        } else {
            let h = if ints[s].is_zero() { hs[s].clone() } else { &hs[s] - &hs[s0] };
            h.to_compact().ok_or(BasisError::NonCompact(s))?
        };
        theta.push(g);
    }
    let nonzero: Vec<bool> = ints.iter().map(|i| !i.is_zero()).collect();
    let repro = match &gs.repro {
        Some(r) => Some(
            r.iter()
                .map(|c| carry_coeffs(c, s0, &nonzero))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let raw = GeneratorSet {
        degrees: gs.degrees.iter().map(|d| d + 1).collect(),
        gens: theta,
        repro,
        postprocess: None,
    };
    Ok(standardize(&raw))
}

/// Adjoins an `S₀` channel: `θ′₀ = β⁰` and `θ′ₙ = ∫ηₙ` minus a unit step
/// scaled by `∫ηₙ`. Degrees become `(0, n₁+1, …, n_N+1)`.
pub fn insertion_step(gs: &GeneratorSet) -> Result<GeneratorSet, BasisError> {
    let gs = standardize(gs);
    let ints = gs.integrals();
    let mut theta = vec![PiecewisePoly::box0()];
    for (s, g) in gs.gens.iter().enumerate() {
        let h = g.antiderivative();
        let h = if ints[s].is_zero() {
            h
        } else {
            &h - &crate::poly::TailedPiecewisePoly::step(0, ints[s].clone())
        };
        theta.push(h.to_compact().ok_or(BasisError::NonCompact(s + 1))?);
    }
    let repro = match &gs.repro {
        Some(r) => {
            // the Dirac is channel 0 and is always the selected generator
            let mut nonzero = vec![true];
            nonzero.extend(ints.iter().map(|i| !i.is_zero()));
            let mut out = vec![CoeffSeq::from_entries(gs.len() + 1, vec![(0, 0, Rational::one())])];
            for c in r {
                out.push(carry_coeffs(&c.with_leading_channel(), 0, &nonzero)?);
            }
            Some(out)
        }
        None => None,
    };
    let mut degrees = vec![0];
    degrees.extend(gs.degrees.iter().map(|d| d + 1));
    let raw = GeneratorSet {
        degrees,
        gens: theta,
        repro,
        postprocess: None,
    };
    Ok(standardize(&raw))
}

fn check_degrees(n: &[u32]) -> Result<(), BasisError> {
    if n.is_empty() || n.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BasisError::InvalidDegrees);
    }
    Ok(())
}

/// The intermediate bases of the recursive construction, seed first.
pub fn build_trace(n: &[u32]) -> Result<Vec<GeneratorSet>, BasisError> {
    check_degrees(n)?;
    let big_n = n.len();
    let seed_degree = if big_n == 1 { n[0] } else { n[big_n - 1] - n[big_n - 2] - 1 };
    let mut gs = GeneratorSet {
        degrees: vec![seed_degree],
        gens: vec![bspline(seed_degree)],
        repro: Some(vec![CoeffSeq::from_entries(1, vec![(0, 0, Rational::one())])]),
        postprocess: None,
    };
    let mut trace = vec![gs.clone()];
    for j in (1..big_n).rev() {
        gs = insertion_step(&gs)?;
        trace.push(gs.clone());
        let runs = if j >= 2 { n[j - 1] - n[j - 2] - 1 } else { n[0] };
        for _ in 0..runs {
            gs = increment_step(&gs)?;
            trace.push(gs.clone());
        }
    }
    debug_assert_eq!(gs.degrees, n);
    Ok(trace)
}

/// Shortest-support basis of `S_{n₁}+…+S_{n_N}`, standardized, with causal
/// reproduction coefficients for every `β^{nᵢ}`.
pub fn build_mb_spline(n: &[u32]) -> Result<GeneratorSet, BasisError> {
    Ok(build_trace(n)?.pop().expect("trace is nonempty"))
}

/// `Σ_s Σ_k c_s[k] φ_s(x-k)`
pub fn expand(gens: &[PiecewisePoly], c: &CoeffSeq) -> PiecewisePoly {
    let mut coeffs = Vec::new();
    let mut fs = Vec::new();
    let mut shifts = Vec::new();
    for k in c.lo()..c.hi() {
        for (s, g) in gens.iter().enumerate() {
            let v = c.get(k, s);
            if !v.is_zero() {
                coeffs.push(v);
                fs.push(g.clone());
                shifts.push(k);
            }
        }
    }
    PiecewisePoly::combine(&coeffs, &fs, &shifts)
}

/// `Σ_k f(x - k)` on `[0,1)`, i.e. the sum of all slices.
pub fn periodize(f: &PiecewisePoly) -> crate::poly::Poly {
    f.pieces()
        .iter()
        .fold(crate::poly::Poly::zero(), |acc, p| &acc + p)
}
