use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

/// `Σ_n c_n z^{-n}` with finitely many nonzero `c_n`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    /// Power of `z^{-1}` of the first coefficient.
    pub lo: i64,
    #[serde(with = "crate::serde_rational::vec")]
    pub coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn new(lo: i64, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentPoly::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            lo: lo + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        LaurentPoly { lo: 0, coeffs: Vec::new() }
    }

    /// `c z^{-n}`
    pub fn monomial(n: i64, c: Rational) -> Self {
        LaurentPoly::new(n, vec![c])
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power of `z^{-1}` (inclusive).
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `z^{-n}`.
    pub fn coeff(&self, n: i64) -> Rational {
        if n < self.lo {
            return Rational::zero();
        }
        self.coeffs
            .get((n - self.lo) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `(power, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zi = z.inv();
        self.terms()
            .map(|(n, c)| zi.powi(n as i32) * rational::to_f64(c))
            .sum()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        LaurentPoly::new(self.lo, self.coeffs.iter().map(|c| c * s).collect())
    }

    fn zip(&self, rhs: &Self, op: impl Fn(Rational, Rational) -> Rational) -> Self {
        if self.is_zero() && rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let lo = match (self.is_zero(), rhs.is_zero()) {
            (true, _) => rhs.lo,
            (_, true) => self.lo,
            _ => self.lo.min(rhs.lo),
        };
        let hi = self.hi().max(rhs.hi());
        LaurentPoly::new(lo, (lo..=hi).map(|n| op(self.coeff(n), rhs.coeff(n))).collect())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.lo + rhs.lo, c)
    }
}

/// Square matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPolyMatrix {
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl LaurentPolyMatrix {
    pub fn new(entries: Vec<Vec<LaurentPoly>>) -> Self {
        assert!(entries.iter().all(|r| r.len() == entries.len()), "matrix must be square");
        LaurentPolyMatrix { entries }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
                    .collect()
            })
            .collect();
        LaurentPolyMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, p: usize, q: usize) -> &LaurentPoly {
        &self.entries[p][q]
    }

    pub fn det(&self) -> LaurentPoly {
        det_rows(&self.entries)
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Vec<Vec<LaurentPoly>> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip_r)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip_c)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect()
    }

    /// Transposed cofactor matrix, `adj(A) A = det(A) I`.
    pub fn adjugate(&self) -> Self {
        let n = self.size();
        if n == 1 {
            return LaurentPolyMatrix::identity(1);
        }
        let mut out = vec![vec![LaurentPoly::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = det_rows(&self.minor(i, j));
                out[j][i] = if (i + j) % 2 == 0 { c } else { -&c };
            }
        }
        LaurentPolyMatrix { entries: out }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(LaurentPoly::zero(), |acc, k| &acc + &(&self.entries[i][k] * &rhs.entries[k][j]))
                    })
                    .collect()
            })
            .collect();
        LaurentPolyMatrix { entries }
    }

    /// Largest `|n|` over all nonzero coefficients.
    pub fn reach(&self) -> i64 {
        self.entries
            .iter()
            .flatten()
            .filter(|e| !e.is_zero())
            .map(|e| e.lo.abs().max(e.hi().abs()))
            .max()
            .unwrap_or(0)
    }
}

fn det_rows(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    match m.len() {
        0 => LaurentPoly::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = LaurentPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LaurentPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &det_rows(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}
