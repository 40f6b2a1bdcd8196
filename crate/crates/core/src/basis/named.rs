//! Named bases obtained from the raw construction by exact linear
//! combinations of shifted generators.
//!
//! Each named basis is specified by the support of every output function and
//! a list of linear conditions (interpolation, symmetry, normalization). The
//! candidates for an output supported on `[a, b]` are the raw shifts lying
//! inside `[a, b]`; the conditions must pin the combination down uniquely.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{build_mb_spline, periodize, BasisError, GeneratorSet};
use crate::linalg::{solve_unique, SolveError};
use crate::poly::{PiecewisePoly, Poly, Side};
use crate::rational::{int, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisId {
    HermiteCubic,
    DerivativeSampling(u32),
    Lagrange(u32),
    BezierQuadratic,
    BezierCubic,
    MixedS2S3S4,
    DirectS2345,
    BisplineInterp(u32),
    Hybrid(u32),
}

impl BasisId {
    pub fn degrees(&self) -> Vec<u32> {
        match *self {
            BasisId::HermiteCubic => vec![2, 3],
            BasisId::DerivativeSampling(p) => vec![2 * p, 2 * p + 1],
            BasisId::Lagrange(n) => (1..=n).collect(),
            BasisId::BezierQuadratic => vec![1, 2],
            BasisId::BezierCubic => vec![1, 2, 3],
            BasisId::MixedS2S3S4 => vec![2, 3, 4],
            BasisId::DirectS2345 => vec![2, 3, 4, 5],
            BasisId::BisplineInterp(p) => vec![2 * p + 1, 2 * p + 2],
            BasisId::Hybrid(p) => vec![0, p],
        }
    }
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisId::HermiteCubic => write!(f, "hermite_cubic"),
            BasisId::DerivativeSampling(p) => write!(f, "derivative_sampling({p})"),
            BasisId::Lagrange(n) => write!(f, "lagrange({n})"),
            BasisId::BezierQuadratic => write!(f, "bezier_quadratic"),
            BasisId::BezierCubic => write!(f, "bezier_cubic"),
            BasisId::MixedS2S3S4 => write!(f, "mixed_s2s3s4"),
            BasisId::DirectS2345 => write!(f, "direct_s2345"),
            BasisId::BisplineInterp(p) => write!(f, "bispline_interp({p})"),
            BasisId::Hybrid(p) => write!(f, "hybrid(0,{p})"),
        }
    }
}

impl FromStr for BasisId {
    type Err = BasisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || BasisError::UnknownId(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, args) = match compact.split_once('(') {
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
                let args = inner
                    .split(',')
                    .map(|a| a.parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| unknown())?;
                (name.to_string(), args)
            }
            None => (compact.clone(), Vec::new()),
        };
        let id = match (name.as_str(), args.as_slice()) {
            ("hermite_cubic", []) => BasisId::HermiteCubic,
            ("derivative_sampling", [p]) if (1..=4).contains(p) => BasisId::DerivativeSampling(*p),
            ("lagrange", [n]) if *n >= 1 => BasisId::Lagrange(*n),
            ("bezier_quadratic", []) => BasisId::BezierQuadratic,
            ("bezier_cubic", []) => BasisId::BezierCubic,
            ("mixed_s2s3s4", []) => BasisId::MixedS2S3S4,
            ("direct_s2345", []) => BasisId::DirectS2345,
            ("bispline_interp", [p]) => BasisId::BisplineInterp(*p),
            ("hybrid", [0, p]) if *p >= 1 => BasisId::Hybrid(*p),
            _ => return Err(unknown()),
        };
        Ok(id)
    }
}

/// `coeff · raw[generator](· - shift)`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub generator: usize,
    pub shift: i64,
    #[serde(with = "crate::serde_rational")]
    pub coeff: Rational,
}

/// Exact recipe mapping the raw construction output to a named basis:
/// output `i` is `Σ terms[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostProcess {
    pub id: String,
    pub outputs: Vec<Vec<Term>>,
}

impl PostProcess {
    pub fn apply(&self, raw: &[PiecewisePoly]) -> Vec<PiecewisePoly> {
        self.outputs
            .iter()
            .map(|terms| {
                let coeffs: Vec<_> = terms.iter().map(|t| t.coeff.clone()).collect();
                let fs: Vec<_> = terms.iter().map(|t| raw[t.generator].clone()).collect();
                let shifts: Vec<_> = terms.iter().map(|t| t.shift).collect();
                PiecewisePoly::combine(&coeffs, &fs, &shifts)
            })
            .collect()
    }
}

/// One linear condition (or block of conditions) on the output tuple.
enum Cond {
    /// `f_o^{(order)}(x±) = value`
    Value {
        o: usize,
        x: Rational,
        order: u32,
        side: Side,
        value: Rational,
    },
    Integral { o: usize, value: Rational },
    /// `f_o(x) = sign · f_o(c - x)` with `c = a + b` of the output support.
    Symmetric { o: usize, sign: i64 },
    /// `Σ_k Σ_{o ∈ os} f_o(x - k) = p(x)`
    SliceSum { os: Vec<usize>, p: Poly },
    /// `Σ_k f_a(k) = Σ_k f_b(k)`
    IntegerSumEq { a: usize, b: usize },
    /// `f_a(xa) = f_b(xb)`
    ValueEq {
        a: usize,
        xa: Rational,
        b: usize,
        xb: Rational,
    },
}

struct Design {
    supports: Vec<(i64, i64)>,
    conds: Vec<Cond>,
}

impl Design {
    fn new(supports: Vec<(i64, i64)>) -> Self {
        Design {
            supports,
            conds: Vec::new(),
        }
    }

    fn value(&mut self, o: usize, x: Rational, order: u32, value: i64) -> &mut Self {
        self.value_side(o, x, order, Side::Right, value)
    }

    fn value_side(&mut self, o: usize, x: Rational, order: u32, side: Side, value: i64) -> &mut Self {
        self.conds.push(Cond::Value {
            o,
            x,
            order,
            side,
            value: int(value),
        });
        self
    }

    fn push(&mut self, c: Cond) -> &mut Self {
        self.conds.push(c);
        self
    }

    /// Left-hand side and right-hand side rows of every condition.
    fn eval(&self, fs: &[PiecewisePoly], degree: usize) -> Vec<Rational> {
        let mut out = Vec::new();
        for c in &self.conds {
            match c {
                Cond::Value { o, x, order, side, .. } => out.push(fs[*o].eval_derivative(x, *order, *side)),
                Cond::Integral { o, .. } => out.push(fs[*o].integral()),
                Cond::Symmetric { o, sign } => {
                    let (a, b) = self.supports[*o];
                    let defect = &fs[*o] - &fs[*o].reflect(a + b).scale(&int(*sign));
                    for k in a..b {
                        let p = defect.piece(k);
                        out.extend((0..=degree).map(|d| p.coeff(d)));
                    }
                }
                Cond::SliceSum { os, .. } => {
                    let total = os.iter().fold(Poly::zero(), |acc, o| &acc + &periodize(&fs[*o]));
                    out.extend((0..=degree).map(|d| total.coeff(d)));
                }
                Cond::IntegerSumEq { a, b } => {
                    let sum = |f: &PiecewisePoly| -> Rational { f.pieces().iter().map(|p| p.coeff(0)).sum() };
                    out.push(sum(&fs[*a]) - sum(&fs[*b]));
                }
                Cond::ValueEq { a, xa, b, xb } => out.push(fs[*a].eval(xa) - fs[*b].eval(xb)),
            }
        }
        out
    }

    fn rhs(&self, degree: usize) -> Vec<Rational> {
        let mut out = Vec::new();
        for c in &self.conds {
            match c {
                Cond::Value { value, .. } | Cond::Integral { value, .. } => out.push(value.clone()),
                Cond::Symmetric { o, .. } => {
                    let (a, b) = self.supports[*o];
                    out.extend(std::iter::repeat_n(Rational::zero(), (b - a) as usize * (degree + 1)));
                }
                Cond::SliceSum { p, .. } => out.extend((0..=degree).map(|d| p.coeff(d))),
                Cond::IntegerSumEq { .. } | Cond::ValueEq { .. } => out.push(Rational::zero()),
            }
        }
        out
    }

    fn solve(&self, id: BasisId, raw: &GeneratorSet) -> Result<PostProcess, BasisError> {
        let degree = raw.max_degree() as usize;
        let outputs = self.supports.len();
        let mut unknowns: Vec<(usize, usize, i64)> = Vec::new();
        for (o, &(a, b)) in self.supports.iter().enumerate() {
            for (s, g) in raw.gens.iter().enumerate() {
                for k in (a - g.start())..=(b - g.end()) {
                    unknowns.push((o, s, k));
                }
            }
        }
        let mut columns = Vec::with_capacity(unknowns.len());
        for &(o, s, k) in &unknowns {
            let mut fs = vec![PiecewisePoly::zero(); outputs];
            fs[o] = raw.gens[s].shifted(k);
            columns.push(self.eval(&fs, degree));
        }
        let rhs = self.rhs(degree);
        let rows = rhs.len();
        let matrix: Vec<Vec<Rational>> = (0..rows)
            .map(|r| columns.iter().map(|col| col[r].clone()).collect())
            .collect();
        let design_err = |reason: String| BasisError::Design {
            id: id.to_string(),
            reason,
        };
        let x = solve_unique(&matrix, &rhs, unknowns.len()).map_err(|e| match e {
            SolveError::Inconsistent => design_err("inconsistent".into()),
            SolveError::Underdetermined(d) => design_err(format!("underdetermined ({d} free parameters)")),
        })?;
        let mut out = vec![Vec::new(); outputs];
        for ((o, s, k), c) in unknowns.into_iter().zip(x) {
            if !c.is_zero() {
                out[o].push(Term {
                    generator: s,
                    shift: k,
                    coeff: c,
                });
            }
        }
        Ok(PostProcess {
            id: id.to_string(),
            outputs: out,
        })
    }
}

fn design_for(id: BasisId) -> Option<Design> {
    let half = rat(1, 2);
    let d = match id {
        BasisId::HermiteCubic => {
            let mut d = Design::new(vec![(-1, 1), (-1, 1)]);
            d.value(0, int(0), 0, 1).value(0, int(0), 1, 0);
            d.value(1, int(0), 0, 0).value(1, int(0), 1, 1);
            d
        }
        BasisId::DerivativeSampling(1) => {
            let mut d = Design::new(vec![(0, 2), (0, 2)]);
            d.value(0, int(1), 0, 1).value(0, int(1), 1, 0);
            d.value(1, int(1), 0, 0).value(1, int(1), 1, 1);
            d
        }
        BasisId::DerivativeSampling(p) => {
            let e = p as i64 + 1;
            let mut d = Design::new(vec![(0, e), (0, e)]);
            d.push(Cond::Symmetric { o: 0, sign: 1 })
                .push(Cond::Integral { o: 0, value: int(1) })
                .push(Cond::Symmetric { o: 1, sign: -1 })
                .push(Cond::ValueEq {
                    a: 1,
                    xa: int(1),
                    b: 0,
                    xb: int(1),
                });
            d
        }
        BasisId::Lagrange(n) => {
            let n = n as i64;
            let mut supports = vec![(0, 1); n as usize - 1];
            supports.push((0, 2));
            let mut d = Design::new(supports);
            for q in 1..n {
                for j in 1..n {
                    d.value((q - 1) as usize, rat(j, n), 0, i64::from(j == q));
                }
            }
            for j in 1..2 * n {
                d.value((n - 1) as usize, rat(j, n), 0, i64::from(j == n));
            }
            d
        }
        BasisId::BezierQuadratic => {
            let mut d = Design::new(vec![(-1, 1), (-1, 0)]);
            d.value(0, int(0), 0, 1)
                .value_side(0, int(0), 1, Side::Left, 0)
                .value_side(0, int(1), 1, Side::Left, 0);
            d.value_side(1, int(0), 1, Side::Left, 1);
            d
        }
        BasisId::BezierCubic => {
            let mut d = Design::new(vec![(-1, 1), (-1, 0), (0, 1)]);
            d.value(0, int(0), 0, 1)
                .value_side(0, int(0), 1, Side::Left, 0)
                .value_side(0, int(0), 1, Side::Right, 0)
                .value_side(0, int(-1), 1, Side::Right, 0)
                .value_side(0, int(1), 1, Side::Left, 0);
            d.value_side(1, int(0), 1, Side::Left, 1)
                .value_side(1, int(-1), 1, Side::Right, 0);
            d.value_side(2, int(0), 1, Side::Right, 1)
                .value_side(2, int(1), 1, Side::Left, 0);
            d
        }
        BasisId::MixedS2S3S4 => {
            let mut d = Design::new(vec![(-1, 1), (-1, 1), (0, 1)]);
            for (o, v, dv) in [(0, 1, 0), (1, 0, 1)] {
                d.value(o, int(0), 0, v)
                    .value(o, int(0), 1, dv)
                    .value(o, -half.clone(), 0, 0)
                    .value(o, half.clone(), 0, 0);
            }
            d.value(2, half.clone(), 0, 1);
            d
        }
        BasisId::DirectS2345 => {
            let mut d = Design::new(vec![(0, 1), (0, 2), (0, 1), (0, 2)]);
            d.value(0, half.clone(), 0, 1).value(0, half.clone(), 1, 0);
            d.value(2, half.clone(), 0, 0).value(2, half.clone(), 1, 1);
            for (o, v, dv) in [(1, 1, 0), (3, 0, 1)] {
                d.value(o, int(1), 0, v).value(o, int(1), 1, dv);
                for x in [rat(1, 2), rat(3, 2)] {
                    d.value(o, x.clone(), 0, 0).value(o, x, 1, 0);
                }
            }
            d
        }
        BasisId::BisplineInterp(0) => {
            let mut d = Design::new(vec![(0, 1), (0, 2)]);
            d.value(0, half.clone(), 0, 1);
            d.value(1, int(1), 0, 1)
                .value(1, half.clone(), 0, 0)
                .value(1, rat(3, 2), 0, 0);
            d
        }
        BasisId::BisplineInterp(p) => {
            let p = p as i64;
            let mut d = Design::new(vec![(0, p + 1), (0, p + 2)]);
            d.push(Cond::Symmetric { o: 0, sign: 1 })
                .push(Cond::Symmetric { o: 1, sign: 1 })
                .push(Cond::SliceSum {
                    os: vec![0, 1],
                    p: Poly::constant(Rational::one()),
                })
                .push(Cond::IntegerSumEq { a: 0, b: 1 });
            d
        }
        BasisId::Hybrid(_) => return None,
    };
    Some(d)
}

/// Named basis: the raw construction for its degree vector, transformed by
/// the recorded post-processing recipe. `hybrid(0,p)` is the raw output.
pub fn named_basis(id: BasisId) -> Result<GeneratorSet, BasisError> {
    let raw = build_mb_spline(&id.degrees())?;
    let Some(design) = design_for(id) else {
        return Ok(raw);
    };
    let pp = design.solve(id, &raw)?;
    let gens = pp.apply(&raw.gens);
    Ok(GeneratorSet {
        degrees: raw.degrees,
        gens,
        repro: None,
        postprocess: Some(pp),
    })
}
