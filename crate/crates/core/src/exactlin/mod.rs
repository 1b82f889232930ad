//! Exact linear algebra over the rationals and prime fields.
//!
//! Everything downstream reduces to the handful of operations here: rank,
//! kernels, solving, and subquotient presentations. Matrices are dense; all
//! elimination uses the first nonzero entry in column order as pivot, so
//! every basis this module hands out is deterministic.

mod field;
mod matrix;
mod rational;
mod subquotient;

pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use rational::Rational;
pub use subquotient::{quotient_presentation, Subquotient};

/// Rank of the column space.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Basis of the null space, as columns.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}
