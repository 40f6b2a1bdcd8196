//! Shortest-support bases of cardinal multi-spline spaces and generalized
//! sampling with them.
//!
//! Everything on the construction path is exact rational arithmetic; floats
//! only appear in spectral checks and in filtering.

pub mod analysis;
pub mod basis;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod sampling;
pub mod serde_rational;

pub use basis::{build_mb_spline, named_basis, BasisId, GeneratorSet};
pub use poly::{PiecewisePoly, Poly, Side};
pub use rational::Rational;
