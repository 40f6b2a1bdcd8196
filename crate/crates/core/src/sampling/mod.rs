//! Generalized sampling: measurement matrix filters, their inversion by
//! recursive filtering, reconstruction and consistency checks.

mod filter;
mod laurent;
mod order;
mod reconstruct;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::smoothness_order;
use crate::basis::{BasisId, GeneratorSet};
use crate::poly::Side;
use crate::rational::{self, int, rat, Rational};

pub use filter::{apply_filter, invert_filter, Boundary, IIRFilterSpec, Measurements, PAIR_TOL, UNIT_CIRCLE_TOL};
pub use laurent::{LaurentPoly, LaurentPolyMatrix};
pub use order::{order_experiment, OrderReport, TestFunction};
pub use reconstruct::{consistency_check, direct_formulas, reconstruct, sample_function, Reconstruction};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SamplingError {
    #[error("expected {expected} channels, got {got}")]
    ChannelMismatch { expected: usize, got: usize },
    #[error("channels have different lengths")]
    RaggedChannels,
    #[error("need at least {need} samples per channel, got {len}")]
    TooShort { len: usize, need: usize },
    #[error("generator {generator} is C^{smoothness}, too rough for derivative order {order} at knots")]
    InsufficientSmoothness { generator: usize, order: u32, smoothness: i32 },
    #[error("measurement matrix determinant vanishes identically")]
    SingularSystem,
    #[error("determinant root {0} lies on the unit circle; the measurement system is not invertible")]
    UnitCircleRoot(f64),
    #[error("determinant root {re}+{im}i is not real")]
    ComplexRoot { re: f64, im: f64 },
    #[error("x = {x} is outside the covered interval [{lo}, {hi})")]
    OutsideCoverage { x: f64, lo: f64, hi: f64 },
    #[error("{0} has no direct interpolation formula")]
    NotDirect(String),
    #[error("{0}")]
    Parse(String),
}

/// Measurement channel `f ↦ f^{(order)}(n + offset)`. At knots a one-sided
/// derivative can be requested; `side = None` needs enough smoothness for
/// both sides to agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnalysisFunctional {
    pub order: u32,
    #[serde(with = "crate::serde_rational")]
    pub offset: Rational,
    pub side: Option<Side>,
}

impl AnalysisFunctional {
    pub fn value(offset: Rational) -> Self {
        AnalysisFunctional {
            order: 0,
            offset,
            side: None,
        }
    }

    pub fn derivative(order: u32, offset: Rational) -> Self {
        AnalysisFunctional {
            order,
            offset,
            side: None,
        }
    }

    pub fn one_sided(order: u32, offset: Rational, side: Side) -> Self {
        AnalysisFunctional {
            order,
            offset,
            side: Some(side),
        }
    }

    pub fn eval_side(&self) -> Side {
        self.side.unwrap_or(Side::Right)
    }
}

impl fmt::Display for AnalysisFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            None => "",
            Some(Side::Left) => "-",
            Some(Side::Right) => "+",
        };
        if self.order == 0 {
            write!(f, "v{side}@{}", rational::display(&self.offset))
        } else {
            write!(f, "d{}{side}@{}", self.order, rational::display(&self.offset))
        }
    }
}

impl FromStr for AnalysisFunctional {
    type Err = SamplingError;

    /// `v@τ`, `d1@τ`, `d2@τ`, with `-`/`+` before `@` for one-sided limits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SamplingError::Parse(format!("bad functional `{s}` (expected v@tau or d1@tau)"));
        let (head, tau) = s.trim().split_once('@').ok_or_else(bad)?;
        let offset = rational::parse(tau).ok_or_else(bad)?;
        let (head, side) = if let Some(h) = head.strip_suffix('-') {
            (h, Some(Side::Left))
        } else if let Some(h) = head.strip_suffix('+') {
            (h, Some(Side::Right))
        } else {
            (head, None)
        };
        let order = match head {
            "v" => 0,
            _ => head.strip_prefix('d').and_then(|d| d.parse().ok()).ok_or_else(bad)?,
        };
        Ok(AnalysisFunctional { order, offset, side })
    }
}

/// Parses a comma-separated functional list such as `v@0,d1@0`.
pub fn parse_functionals(s: &str) -> Result<Vec<AnalysisFunctional>, SamplingError> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

/// Measurement channels matching the direct or filtered formula of a named basis.
pub fn canonical_functionals(id: BasisId) -> Vec<AnalysisFunctional> {
    use AnalysisFunctional as F;
    let v = |r: Rational| F::value(r);
    let d1 = |r: Rational| F::derivative(1, r);
    match id {
        BasisId::HermiteCubic | BasisId::DerivativeSampling(_) => vec![v(int(0)), d1(int(0))],
        BasisId::Lagrange(n) => {
            let n = n as i64;
            let mut out: Vec<_> = (1..n).map(|q| v(rat(q, n))).collect();
            out.push(v(int(0)));
            out
        }
        BasisId::BezierQuadratic => vec![v(int(0)), F::one_sided(1, int(0), Side::Left)],
        BasisId::BezierCubic => vec![
            v(int(0)),
            F::one_sided(1, int(0), Side::Left),
            F::one_sided(1, int(0), Side::Right),
        ],
        BasisId::MixedS2S3S4 => vec![v(int(0)), d1(int(0)), v(rat(1, 2))],
        BasisId::DirectS2345 => vec![v(rat(1, 2)), v(int(0)), d1(rat(1, 2)), d1(int(0))],
        BasisId::BisplineInterp(_) => vec![v(int(0)), v(rat(-1, 2))],
        BasisId::Hybrid(_) => vec![v(int(0)), v(rat(1, 2))],
    }
}

/// Uniform value channels `v@(q/N)`, the default for raw degree vectors.
pub fn uniform_functionals(n: usize) -> Vec<AnalysisFunctional> {
    (0..n)
        .map(|q| AnalysisFunctional::value(rat(q as i64, n as i64)))
        .collect()
}

/// `A[n]_{pq} = φ_q^{(d_p)}(n + τ_p)`, exact.
pub fn system_matrix(gs: &GeneratorSet, psi: &[AnalysisFunctional]) -> Result<LaurentPolyMatrix, SamplingError> {
    let n = gs.len();
    if psi.len() != n {
        return Err(SamplingError::ChannelMismatch {
            expected: n,
            got: psi.len(),
        });
    }
    for f in psi {
        if f.order > 0 && f.side.is_none() && f.offset.is_integer() {
            for (q, g) in gs.gens.iter().enumerate() {
                let s = smoothness_order(g);
                if s < f.order as i32 {
                    return Err(SamplingError::InsufficientSmoothness {
                        generator: q,
                        order: f.order,
                        smoothness: s,
                    });
                }
            }
        }
    }
    let mut entries = vec![vec![LaurentPoly::zero(); n]; n];
    for (p, f) in psi.iter().enumerate() {
        for (q, g) in gs.gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            // n + τ ranges over the closed support [start, end]
            let lo = rational::floor_i64(&(int(g.start()) - &f.offset));
            let hi = rational::floor_i64(&(int(g.end()) - &f.offset)) + 1;
            let coeffs: Vec<Rational> = (lo..=hi)
                .map(|k| g.eval_derivative(&(int(k) + &f.offset), f.order, f.eval_side()))
                .collect();
            entries[p][q] = LaurentPoly::new(lo, coeffs);
        }
    }
    Ok(LaurentPolyMatrix::new(entries))
}
