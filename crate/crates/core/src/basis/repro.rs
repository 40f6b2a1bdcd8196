use num_traits::Zero;

use super::{CoeffSeq, GeneratorSet};
use crate::linalg::IncrementalSolver;
use crate::poly::PiecewisePoly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReproError {
    #[error("slices of the generators are linearly dependent (rank {rank} of {count})")]
    DependentSlices { rank: usize, count: usize },
    #[error("target is not in the span of the generators (first failure on slice {slice})")]
    Inconsistent { slice: i64 },
}

/// `K = 4(n_N + 1)`
pub fn default_window(gs: &GeneratorSet) -> i64 {
    4 * (gs.max_degree() as i64 + 1)
}

/// Coefficients `c` with `Σ_k c[k]ᵀ φ(x-k) = target(x)` on `[0, K)`.
///
/// Every shift whose support meets `[0, K)` is an unknown; equations are
/// added one unit interval at a time from the left, so the first interval
/// that cannot be matched is the one reported. Shifts left undetermined
/// are set to zero.
pub fn reproduction_coeffs(
    gs: &GeneratorSet,
    target: &PiecewisePoly,
    window: i64,
) -> Result<CoeffSeq, ReproError> {
    let cert = crate::analysis::slice_independence(gs);
    if !cert.independent {
        return Err(ReproError::DependentSlices {
            rank: cert.rank,
            count: cert.slice_count,
        });
    }
    let n = gs.len();
    let mut unknowns: Vec<(i64, usize)> = Vec::new();
    for (s, g) in gs.gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        for k in (1 - g.end())..=(window - g.start() - 1) {
            unknowns.push((k, s));
        }
    }
    unknowns.sort();
    let degree = gs
        .gens
        .iter()
        .chain(std::iter::once(target))
        .filter_map(PiecewisePoly::degree)
        .max()
        .unwrap_or(0);

    let mut solver = IncrementalSolver::new(unknowns.len());
    for j in 0..window {
        let rhs_piece = target.piece(j);
        for d in 0..=degree {
            let row = unknowns.iter().enumerate().filter_map(|(col, &(k, s))| {
                let c = gs.gens[s].piece_ref(j - k)?.coeff(d);
                (!c.is_zero()).then_some((col, c))
            });
            if !solver.push(row, rhs_piece.coeff(d)) {
                return Err(ReproError::Inconsistent { slice: j });
            }
        }
    }
    let x = solver.solution();
    let entries: Vec<(i64, usize, Rational)> = unknowns
        .iter()
        .zip(x)
        .filter(|(_, v)| !v.is_zero())
        .map(|(&(k, s), v)| (k, s, v))
        .collect();
    Ok(CoeffSeq::from_entries(n, entries))
}
