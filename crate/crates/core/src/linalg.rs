//! Exact rational linear algebra: rank, null space, solving, and an
//! incremental sparse eliminator for banded systems that grow row by row.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Determinant of a square matrix by fraction-exact elimination.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut w = m.to_vec();
    let mut acc = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            w.swap(p, c);
            acc = -acc;
        }
        acc *= &w[c][c];
        for i in c + 1..n {
            if !w[i][c].is_zero() {
                let f = &w[i][c] / &w[c][c];
                for j in c..n {
                    let d = &f * &w[c][j];
                    w[i][j] -= d;
                }
            }
        }
    }
    acc
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Basis of `{x : m x = 0}`; `cols` is needed when `m` has no rows.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut w = m.to_vec();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -w[row][f].clone();
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    Inconsistent,
    /// Solutions exist but form an affine space of this dimension.
    Underdetermined(usize),
}

/// Solves `m x = b`, requiring a unique solution.
pub fn solve_unique(m: &[Vec<Rational>], b: &[Rational], cols: usize) -> Result<Vec<Rational>, SolveError> {
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return Err(SolveError::Inconsistent);
    }
    if pivots.len() < cols {
        return Err(SolveError::Underdetermined(cols - pivots.len()));
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[row][cols].clone();
    }
    Ok(x)
}

type SparseRow = BTreeMap<usize, Rational>;

/// Row-echelon eliminator fed one equation at a time.
///
/// Rows are kept in echelon form keyed by pivot column, so a new row is
/// reduced by walking its columns in increasing order. Free variables are
/// set to zero by [`IncrementalSolver::solution`].
#[derive(Debug, Default, Clone)]
pub struct IncrementalSolver {
    cols: usize,
    rows: BTreeMap<usize, (SparseRow, Rational)>,
}

impl IncrementalSolver {
    pub fn new(cols: usize) -> Self {
        IncrementalSolver {
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `Σ coeffs[j] x_j = rhs`. Returns `false` if the system became
    /// inconsistent (the row reduced to `0 = nonzero`); the row is dropped.
    pub fn push(&mut self, coeffs: impl IntoIterator<Item = (usize, Rational)>, rhs: Rational) -> bool {
        let mut row: SparseRow = BTreeMap::new();
        for (j, c) in coeffs {
            assert!(j < self.cols, "column {j} out of range");
            if !c.is_zero() {
                let e = row.entry(j).or_insert_with(Rational::zero);
                *e += c;
                if e.is_zero() {
                    row.remove(&j);
                }
            }
        }
        let mut rhs = rhs;
        let mut cursor = 0;
        loop {
            let Some((&col, _)) = row.range(cursor..).next() else {
                break;
            };
            if let Some((prow, prhs)) = self.rows.get(&col) {
                let f = row[&col].clone() / &prow[&col];
                for (j, v) in prow {
                    let e = row.entry(*j).or_insert_with(Rational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        row.remove(j);
                    }
                }
                rhs -= &f * prhs;
            } else {
                self.rows.insert(col, (row, rhs));
                return true;
            }
            cursor = col + 1;
        }
        rhs.is_zero()
    }

    /// Back substitution with free variables set to zero.
    pub fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.cols];
        for (&p, (row, rhs)) in self.rows.iter().rev() {
            let mut acc = rhs.clone();
            for (j, v) in row.range(p + 1..) {
                acc -= v * &x[*j];
            }
            x[p] = acc / &row[&p];
        }
        x
    }
}
