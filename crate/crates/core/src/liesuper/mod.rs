//! The group algebra ℂS_n as a superalgebra graded by sign, the Lie
//! superalgebra its transpositions generate under the super commutator, and
//! matrix models to compare against.

mod center;
mod closure;
mod element;
mod matrixlie;

pub use center::{
    block_census, ordinary_center, subspace_center, super_center, BlockCensus, FiniteSuperGroup,
};
pub use closure::{
    closure, derived, derived_from_generators, even_group_algebra_derived,
    group_algebra_derived, group_algebra_derived_spanning, saturate, BracketSpace,
    ClosureOutcome, GradedSubspace, GroupBracketSpace,
};
pub use element::{
    super_bracket, super_bracket_bilinear, transpositions, GroupAlgebraElement,
};
pub use matrixlie::{
    identity_and_offdiagonal_generators, matrix_closure, odd_unit_generators,
    queer_traceless_generators, MatrixSuperSpace,
};
