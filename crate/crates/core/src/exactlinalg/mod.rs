//! Exact linear algebra: rationals with lazy quadratic extensions, dense
//! matrices, echelon subspaces, and solving. No floating point anywhere.

mod matrix;
mod scalar;
mod solve;
mod subspace;

pub use matrix::ExactMatrix;
pub use scalar::{sqrt_extend, squarefree_core, Scalar};
pub use solve::{inverse, kernel, rref, solve_linear, LinearSolution};
pub use subspace::{EchelonSubspace, SparseVec};
