//! Exact piecewise polynomials on the integer knot lattice.
//!
//! A [`PiecewisePoly`] stores one [`Poly`] per unit interval `[k, k+1)`,
//! written in the local variable `t = x - k`. This is exactly the slice
//! decomposition `S_k{f}`, so slicing, shifting by integers and inner
//! products are all bookkeeping on the piece vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{self, floor_i64, int, Rational};

/// Polynomial with rational coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `t^deg`
    pub fn monomial(deg: usize) -> Self {
        let mut c = vec![Rational::zero(); deg + 1];
        c[deg] = Rational::one();
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + rational::to_f64(c))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: u32) -> Poly {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// `∫_0^t p(s) ds`
    pub fn integral(&self) -> Poly {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(Rational::zero());
        for (i, a) in self.coeffs.iter().enumerate() {
            c.push(a / int(i as i64 + 1));
        }
        Poly::new(c)
    }

    /// `∫_0^1 p(s) ds`
    pub fn integral01(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a / int(i as i64 + 1))
            .sum()
    }

    /// `p(t + a)`
    pub fn translate(&self, a: &Rational) -> Poly {
        // Horner in the polynomial ring: ((c_n)(t+a) + c_{n-1})(t+a) + ...
        let lin = Poly::new(vec![a.clone(), Rational::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `p(1 - t)`
    pub fn reflect01(&self) -> Poly {
        let lin = Poly::new(vec![Rational::one(), -Rational::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `∫_0^1 p q`
    pub fn inner01(&self, other: &Poly) -> Rational {
        let mut acc = Rational::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                acc += a * b / int((i + j + 1) as i64);
            }
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", rational::display(c))?,
                1 => write!(f, "{} t", rational::display(c))?,
                _ => write!(f, "{} t^{}", rational::display(c), i)?,
            }
        }
        Ok(())
    }
}

/// Which one-sided limit to take when a point lands on a knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Limit from the left, `f(x⁻)`.
    Left,
    /// Limit from the right, `f(x⁺)`. Matches the half-open `[k, k+1)` convention.
    #[default]
    Right,
}

/// Compactly supported piecewise polynomial with integer knots.
///
/// Invariant: the first and last stored pieces are nonzero, so `start()` and
/// `end()` bound the support tightly. The zero function has no pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PiecewisePoly {
    start: i64,
    pieces: Vec<Poly>,
}

impl PiecewisePoly {
    pub fn new(start: i64, mut pieces: Vec<Poly>) -> Self {
        while pieces.last().is_some_and(Poly::is_zero) {
            pieces.pop();
        }
        let lead = pieces.iter().take_while(|p| p.is_zero()).count();
        if lead == pieces.len() {
            return PiecewisePoly::zero();
        }
        pieces.drain(..lead);
        PiecewisePoly {
            start: start + lead as i64,
            pieces,
        }
    }

    pub fn zero() -> Self {
        PiecewisePoly {
            start: 0,
            pieces: Vec::new(),
        }
    }

    /// The rectangle `1_[0,1)`.
    pub fn box0() -> Self {
        PiecewisePoly::new(0, vec![Poly::constant(Rational::one())])
    }

    /// `p(x - k)` on `[k, k+1)` for each `(k, p)`, zero elsewhere.
    pub fn from_slices(slices: &[(i64, Poly)]) -> Self {
        slices
            .iter()
            .map(|(k, p)| PiecewisePoly::new(*k, vec![p.clone()]))
            .fold(PiecewisePoly::zero(), |acc, s| &acc + &s)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// One past the last knot interval.
    pub fn end(&self) -> i64 {
        self.start + self.pieces.len() as i64
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    /// Piece on `[k, k+1)`; zero outside the stored range.
    pub fn piece(&self, k: i64) -> Poly {
        self.piece_ref(k).cloned().unwrap_or_default()
    }

    pub fn piece_ref(&self, k: i64) -> Option<&Poly> {
        if k < self.start {
            return None;
        }
        self.pieces.get((k - self.start) as usize)
    }

    /// Highest polynomial degree over all pieces.
    pub fn degree(&self) -> Option<usize> {
        self.pieces.iter().filter_map(Poly::degree).max()
    }

    /// Measure of the support: the number of nonzero pieces.
    pub fn support_size(&self) -> usize {
        self.pieces.iter().filter(|p| !p.is_zero()).count()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let k = floor_i64(x);
        match self.piece_ref(k) {
            Some(p) => p.eval(&(x - int(k))),
            None => Rational::zero(),
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let k = x.floor();
        match self.piece_ref(k as i64) {
            Some(p) => p.eval_f64(x - k),
            None => 0.0,
        }
    }

    /// `f^(order)(x±)`. Away from knots both sides agree.
    pub fn eval_derivative(&self, x: &Rational, order: u32, side: Side) -> Rational {
        let k = floor_i64(x);
        let on_knot = x.is_integer();
        let (k, t) = if on_knot && side == Side::Left {
            (k - 1, Rational::one())
        } else {
            (k, x - int(k))
        };
        match self.piece_ref(k) {
            Some(p) => p.nth_derivative(order).eval(&t),
            None => Rational::zero(),
        }
    }

    /// `f(· - k)`
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        PiecewisePoly {
            start: self.start + k,
            pieces: self.pieces.clone(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        PiecewisePoly::new(self.start, self.pieces.iter().map(|p| p.scale(s)).collect())
    }

    /// Positive `s` such that `s·f` has coprime integer coefficients.
    pub fn primitive_scale(&self) -> Rational {
        let all = self.pieces.iter().flat_map(|p| p.coeffs().iter());
        let (mut num_gcd, mut den_lcm) = (num_bigint::BigInt::zero(), num_bigint::BigInt::one());
        for c in all.filter(|c| !c.is_zero()) {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        Rational::new(den_lcm, num_gcd)
    }

    /// `x ↦ f(c - x)` for an integer `c`.
    pub fn reflect(&self, c: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        // piece j of the result reads piece (c - j - 1) of f at 1 - t
        let new_start = c - self.end();
        let pieces = (0..self.pieces.len())
            .map(|i| {
                let j = new_start + i as i64;
                self.piece(c - j - 1).reflect01()
            })
            .collect();
        PiecewisePoly::new(new_start, pieces)
    }

    /// Per-piece formal derivative; jumps at knots are dropped.
    pub fn derivative(&self, order: u32) -> Self {
        PiecewisePoly::new(
            self.start,
            self.pieces.iter().map(|p| p.nth_derivative(order)).collect(),
        )
    }

    pub fn integral(&self) -> Rational {
        self.pieces.iter().map(Poly::integral01).sum()
    }

    /// Running integral from `-∞`; the constant after the support is `∫ f`.
    pub fn antiderivative(&self) -> TailedPiecewisePoly {
        let mut acc = Rational::zero();
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            pieces.push(&p.integral() + &Poly::constant(acc.clone()));
            acc += p.integral01();
        }
        TailedPiecewisePoly::new(self.start, pieces, acc)
    }

    /// `∫ f(t) g(t - lag) dt`
    pub fn inner_product(&self, g: &PiecewisePoly, lag: i64) -> Rational {
        let lo = self.start.max(g.start + lag);
        let hi = self.end().min(g.end() + lag);
        (lo..hi)
            .filter_map(|k| Some(self.piece_ref(k)?.inner01(g.piece_ref(k - lag)?)))
            .sum()
    }

    /// Nonzero slices `(k, S_k{f})`.
    pub fn slices(&self) -> Vec<(i64, Poly)> {
        self.pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| (self.start + i as i64, p.clone()))
            .collect()
    }

    /// `Σ cᵢ fᵢ(· - sᵢ)`
    pub fn combine(coeffs: &[Rational], fs: &[PiecewisePoly], shifts: &[i64]) -> Self {
        assert!(
            coeffs.len() == fs.len() && fs.len() == shifts.len(),
            "combine: mismatched list lengths"
        );
        let terms: Vec<_> = coeffs
            .iter()
            .zip(fs)
            .zip(shifts)
            .filter(|((c, f), _)| !c.is_zero() && !f.is_zero())
            .collect();
        if terms.is_empty() {
            return PiecewisePoly::zero();
        }
        let lo = terms.iter().map(|((_, f), s)| f.start + **s).min().unwrap();
        let hi = terms.iter().map(|((_, f), s)| f.end() + **s).max().unwrap();
        let mut pieces = vec![Poly::zero(); (hi - lo) as usize];
        for ((c, f), s) in terms {
            for (i, p) in f.pieces.iter().enumerate() {
                let at = (f.start + *s + i as i64 - lo) as usize;
                pieces[at] = &pieces[at] + &p.scale(c);
            }
        }
        PiecewisePoly::new(lo, pieces)
    }

    fn zip_with(&self, rhs: &PiecewisePoly, op: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        if self.is_zero() && rhs.is_zero() {
            return PiecewisePoly::zero();
        }
        let (lo, hi) = match (self.is_zero(), rhs.is_zero()) {
            (true, _) => (rhs.start, rhs.end()),
            (_, true) => (self.start, self.end()),
            _ => (self.start.min(rhs.start), self.end().max(rhs.end())),
        };
        let zero = Poly::zero();
        let pieces = (lo..hi)
            .map(|k| {
                op(
                    self.piece_ref(k).unwrap_or(&zero),
                    rhs.piece_ref(k).unwrap_or(&zero),
                )
            })
            .collect();
        PiecewisePoly::new(lo, pieces)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct PiecewiseWire {
    start: i64,
    pieces: Vec<PolyWire>,
}

#[derive(serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
struct PolyWire(#[serde(with = "crate::serde_rational::vec")] Vec<Rational>);

impl serde::Serialize for PiecewisePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PiecewiseWire {
            start: self.start,
            pieces: self.pieces.iter().map(|p| PolyWire(p.coeffs.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for PiecewisePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = PiecewiseWire::deserialize(d)?;
        Ok(PiecewisePoly::new(w.start, w.pieces.into_iter().map(|p| Poly::new(p.0)).collect()))
    }
}

impl Add for &PiecewisePoly {
    type Output = PiecewisePoly;
    fn add(self, rhs: &PiecewisePoly) -> PiecewisePoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PiecewisePoly {
    type Output = PiecewisePoly;
    fn sub(self, rhs: &PiecewisePoly) -> PiecewisePoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &PiecewisePoly {
    type Output = PiecewisePoly;
    fn neg(self) -> PiecewisePoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for PiecewisePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, p) in self.slices() {
            writeln!(f, "[{}, {}): {}", k, k + 1, p)?;
        }
        Ok(())
    }
}

/// Piecewise polynomial that is zero before `start` and equal to the constant
/// `tail` from `start + pieces.len()` on. Produced by integration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailedPiecewisePoly {
    start: i64,
    pieces: Vec<Poly>,
    tail: Rational,
}

impl TailedPiecewisePoly {
    pub fn new(start: i64, mut pieces: Vec<Poly>, tail: Rational) -> Self {
        let tail_poly = Poly::constant(tail.clone());
        while pieces.last().is_some_and(|p| *p == tail_poly) {
            pieces.pop();
        }
        let lead = pieces.iter().take_while(|p| p.is_zero()).count();
        let start = if lead == pieces.len() && tail.is_zero() {
            0
        } else {
            start + lead as i64
        };
        pieces.drain(..lead);
        TailedPiecewisePoly {
            start,
            pieces,
            tail,
        }
    }

    /// `c · 1_[k, ∞)`
    pub fn step(k: i64, c: Rational) -> Self {
        TailedPiecewisePoly::new(k, Vec::new(), c)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn tail(&self) -> &Rational {
        &self.tail
    }

    fn value_piece(&self, k: i64) -> Poly {
        if k < self.start {
            Poly::zero()
        } else if let Some(p) = self.pieces.get((k - self.start) as usize) {
            p.clone()
        } else {
            Poly::constant(self.tail.clone())
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let k = floor_i64(x);
        self.value_piece(k).eval(&(x - int(k)))
    }

    /// The compact part, if the tail vanishes.
    pub fn to_compact(&self) -> Option<PiecewisePoly> {
        self.tail
            .is_zero()
            .then(|| PiecewisePoly::new(self.start, self.pieces.clone()))
    }

    /// `Δ{F} = F - F(· - 1)`; always compactly supported.
    pub fn finite_difference(&self) -> PiecewisePoly {
        if self.pieces.is_empty() && self.tail.is_zero() {
            return PiecewisePoly::zero();
        }
        let n = self.pieces.len() as i64;
        let pieces = (0..=n)
            .map(|j| {
                let k = self.start + j;
                &self.value_piece(k) - &self.value_piece(k - 1)
            })
            .collect();
        PiecewisePoly::new(self.start, pieces)
    }
}

impl Sub for &TailedPiecewisePoly {
    type Output = TailedPiecewisePoly;
    fn sub(self, rhs: &TailedPiecewisePoly) -> TailedPiecewisePoly {
        let lo = self.start.min(rhs.start);
        let hi = (self.start + self.pieces.len() as i64).max(rhs.start + rhs.pieces.len() as i64);
        let pieces = (lo..hi)
            .map(|k| &self.value_piece(k) - &rhs.value_piece(k))
            .collect();
        TailedPiecewisePoly::new(lo, pieces, &self.tail - &rhs.tail)
    }
}

/// Antiderivative of `f` vanishing at `-∞`.
pub fn antiderivative(f: &PiecewisePoly) -> TailedPiecewisePoly {
    f.antiderivative()
}

pub fn finite_difference(f: &TailedPiecewisePoly) -> PiecewisePoly {
    f.finite_difference()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn beta1() -> PiecewisePoly {
        PiecewisePoly::new(0, vec![Poly::from_ints(&[0, 1]), Poly::from_ints(&[1, -1])])
    }

    #[test]
    fn eval_box_half_open() {
        let b = PiecewisePoly::box0();
        assert_eq!(b.eval(&rat(1, 2)), int(1));
        assert_eq!(b.eval(&int(0)), int(1));
        assert_eq!(b.eval(&int(1)), int(0));
        assert_eq!(b.eval(&int(-1)), int(0));
        assert_eq!(b.eval_f64(0.999), 1.0);
    }

    #[test]
    fn tight_support_after_ops() {
        let b = PiecewisePoly::box0();
        let z = &b - &b;
        assert!(z.is_zero());
        let two = &b + &b.shifted(1);
        assert_eq!((two.start(), two.end()), (0, 2));
        let p = PiecewisePoly::new(-3, vec![Poly::zero(), Poly::from_ints(&[1]), Poly::zero()]);
        assert_eq!((p.start(), p.end()), (-2, -1));
    }

    #[test]
    fn antiderivative_of_box_is_ramp() {
        let h = PiecewisePoly::box0().antiderivative();
        assert_eq!(h.pieces(), &[Poly::from_ints(&[0, 1])]);
        assert_eq!(h.tail(), &int(1));
        assert_eq!(h.finite_difference(), beta1());
    }

    #[test]
    fn antiderivative_of_zero() {
        let h = PiecewisePoly::zero().antiderivative();
        assert!(h.pieces().is_empty());
        assert_eq!(h.tail(), &int(0));
        assert!(h.finite_difference().is_zero());
    }

    #[test]
    fn finite_difference_of_compact() {
        let f = beta1();
        let tailed = TailedPiecewisePoly::new(f.start(), f.pieces().to_vec(), int(0));
        let expect = &f - &f.shifted(1);
        assert_eq!(tailed.finite_difference(), expect);
    }

    #[test]
    fn step_difference_is_box() {
        let u = TailedPiecewisePoly::step(0, int(1));
        assert_eq!(u.finite_difference(), PiecewisePoly::box0());
    }

    #[test]
    fn derivative_of_box_vanishes() {
        assert!(PiecewisePoly::box0().derivative(1).is_zero());
    }

    #[test]
    fn inner_products_of_low_splines() {
        let b = PiecewisePoly::box0();
        assert_eq!(b.inner_product(&b, 0), int(1));
        assert_eq!(b.inner_product(&b, 1), int(0));
        assert_eq!(beta1().inner_product(&beta1(), 0), rat(2, 3));
        assert_eq!(beta1().inner_product(&beta1(), 1), rat(1, 6));
    }

    #[test]
    fn slices_of_box_and_zero() {
        assert_eq!(PiecewisePoly::box0().slices(), vec![(0, Poly::from_ints(&[1]))]);
        assert!(PiecewisePoly::zero().slices().is_empty());
    }

    #[test]
    fn combine_examples() {
        let b = PiecewisePoly::box0();
        let z = PiecewisePoly::combine(&[int(1), int(-1)], &[b.clone(), b.clone()], &[0, 0]);
        assert!(z.is_zero());
        let two = PiecewisePoly::combine(&[int(1), int(1)], &[b.clone(), b.clone()], &[0, 1]);
        assert_eq!(two, PiecewisePoly::new(0, vec![Poly::from_ints(&[1]); 2]));
    }

    #[test]
    fn reflect_triangle_is_itself() {
        assert_eq!(beta1().reflect(2), beta1());
        let ramp = PiecewisePoly::new(0, vec![Poly::from_ints(&[0, 1])]);
        assert_eq!(ramp.reflect(1), PiecewisePoly::new(0, vec![Poly::from_ints(&[1, -1])]));
    }

    #[test]
    fn one_sided_derivatives() {
        let f = beta1();
        assert_eq!(f.eval_derivative(&int(1), 1, Side::Left), int(1));
        assert_eq!(f.eval_derivative(&int(1), 1, Side::Right), int(-1));
        assert_eq!(f.eval_derivative(&rat(1, 2), 1, Side::Left), int(1));
    }

    #[test]
    fn canonical_json() {
        let v = serde_json::to_value(beta1()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"start": 0, "pieces": [[["0","1"],["1","1"]], [["1","1"],["-1","1"]]]})
        );
        let back: PiecewisePoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, beta1());
    }

    #[test]
    fn translate_poly() {
        // (t+1)^2 = 1 + 2t + t^2
        let p = Poly::monomial(2).translate(&int(1));
        assert_eq!(p, Poly::from_ints(&[1, 2, 1]));
        assert_eq!(Poly::from_ints(&[0, 1]).reflect01(), Poly::from_ints(&[1, -1]));
    }

    #[test]
    fn primitive_scale_clears_denominators() {
        let f = PiecewisePoly::new(0, vec![Poly::new(vec![rat(2, 3), rat(-4, 9)])]);
        assert_eq!(f.primitive_scale(), rat(9, 2));
        assert_eq!(PiecewisePoly::zero().primitive_scale(), int(1));
    }
}
