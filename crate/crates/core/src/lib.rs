//! Exact-arithmetic toolkit for the symmetric group as a superalgebra:
//! seminormal representations, simple supermodules with their gradings,
//! and bracket-closure engines for the Lie superalgebra spanned by
//! transpositions.

pub mod combinatorics;
pub mod error;
pub mod exactlinalg;
pub mod liesuper;
pub mod perm;
pub mod specht;
pub mod supermod;
pub mod verify;

pub use error::{Error, Result};
