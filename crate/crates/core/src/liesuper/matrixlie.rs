//! Matrix realisations: 2m×2m matrices graded by diag(I, −I), so the even
//! sector is the two diagonal blocks and the odd sector the two off-diagonal
//! blocks. Used to exercise the closure engine on spaces where the expected
//! answer is a classical superalgebra.

use std::time::Duration;

use crate::error::{Error, Result};
use crate::exactlinalg::{ExactMatrix, Scalar, SparseVec};
use crate::liesuper::closure::{saturate, BracketSpace, ClosureOutcome};
use crate::perm::Parity;

/// Coordinates for block-homogeneous 2m×2m matrices. Both sectors have
/// dimension 2m²: even = (top-left, bottom-right) flattened row-major with
/// the second block offset by m², odd = (top-right, bottom-left) likewise.
#[derive(Clone, Copy, Debug)]
pub struct MatrixSuperSpace {
    half: usize,
}

impl MatrixSuperSpace {
    pub fn new(half: usize) -> Self {
        MatrixSuperSpace { half }
    }

    pub fn half(&self) -> usize {
        self.half
    }

    pub fn full(&self) -> usize {
        2 * self.half
    }

    /// diag(I, −I).
    pub fn grading(&self) -> ExactMatrix {
        let m = self.half;
        ExactMatrix::from_fn(2 * m, 2 * m, |i, j| {
            if i != j {
                Scalar::zero()
            } else if i < m {
                Scalar::one()
            } else {
                -&Scalar::one()
            }
        })
    }

    /// Parity under the grading; zero counts as even, anything with support
    /// in both sectors is rejected.
    pub fn matrix_parity(&self, x: &ExactMatrix) -> Result<Parity> {
        let m = self.half;
        if x.nrows() != 2 * m || x.ncols() != 2 * m {
            return Err(Error::DimensionMismatch(format!(
                "expected {s}×{s} matrix, got {r}×{c}",
                s = 2 * m,
                r = x.nrows(),
                c = x.ncols()
            )));
        }
        let mut even = false;
        let mut odd = false;
        for i in 0..2 * m {
            for j in 0..2 * m {
                if !x.at(i, j).is_zero() {
                    if (i < m) == (j < m) {
                        even = true;
                    } else {
                        odd = true;
                    }
                }
            }
        }
        match (even, odd) {
            (true, true) => Err(Error::InvalidArgument(
                "matrix has support in both diagonal and off-diagonal blocks".into(),
            )),
            (false, true) => Ok(Parity::Odd),
            _ => Ok(Parity::Even),
        }
    }

    fn coord(&self, i: usize, j: usize) -> u32 {
        let m = self.half;
        let offset = if i < m { 0 } else { m * m };
        (offset + (i % m) * m + (j % m)) as u32
    }

    fn position(&self, parity: Parity, coord: u32) -> (usize, usize) {
        let m = self.half;
        let c = coord as usize;
        let (block, rest) = (c / (m * m), c % (m * m));
        let (i, j) = (rest / m, rest % m);
        match (parity, block) {
            (Parity::Even, 0) => (i, j),
            (Parity::Even, _) => (m + i, m + j),
            (Parity::Odd, 0) => (i, m + j),
            (Parity::Odd, _) => (m + i, j),
        }
    }

    pub fn to_coords(&self, x: &ExactMatrix) -> Result<(Parity, SparseVec)> {
        let parity = self.matrix_parity(x)?;
        let mut v: SparseVec = Vec::new();
        for i in 0..2 * self.half {
            for j in 0..2 * self.half {
                if !x.at(i, j).is_zero() {
                    v.push((self.coord(i, j), x.at(i, j).clone()));
                }
            }
        }
        v.sort_by_key(|&(c, _)| c);
        Ok((parity, v))
    }

    pub fn from_coords(&self, parity: Parity, v: &SparseVec) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(2 * self.half, 2 * self.half);
        for &(c, ref s) in v {
            let (i, j) = self.position(parity, c);
            out.set(i, j, s.clone());
        }
        out
    }
}

impl BracketSpace for MatrixSuperSpace {
    fn sector_dim(&self, _parity: Parity) -> usize {
        2 * self.half * self.half
    }

    fn bracket(&self, x: (Parity, &SparseVec), y: (Parity, &SparseVec)) -> SparseVec {
        let a = self.from_coords(x.0, x.1);
        let b = self.from_coords(y.0, y.1);
        let ab = &a * &b;
        let ba = &b * &a;
        let result =
            if x.0 == Parity::Odd && y.0 == Parity::Odd { &ab + &ba } else { &ab - &ba };
        self.to_coords(&result).expect("bracket of homogeneous matrices is homogeneous").1
    }
}

fn unit(size: usize, i: usize, j: usize) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(size, size);
    out.set(i, j, Scalar::one());
    out
}

/// Every odd matrix unit: E_{i,m+j} and E_{m+i,j} for all i, j.
pub fn odd_unit_generators(m: usize) -> Vec<ExactMatrix> {
    let mut out = Vec::with_capacity(2 * m * m);
    for i in 0..m {
        for j in 0..m {
            out.push(unit(2 * m, i, m + j));
            out.push(unit(2 * m, m + i, j));
        }
    }
    out
}

fn mirrored(m: usize, b: &ExactMatrix) -> ExactMatrix {
    // [[0, B], [B, 0]]
    ExactMatrix::from_blocks(None, Some(b), Some(b), None, m, m, m, m)
}

/// Basis of the odd part of the queer superalgebra sq(m): matrices
/// [[0, B], [B, 0]] with B traceless.
pub fn queer_traceless_generators(m: usize) -> Vec<ExactMatrix> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                out.push(mirrored(m, &unit(m, i, j)));
            }
        }
    }
    for i in 0..m.saturating_sub(1) {
        let b = &unit(m, i, i) - &unit(m, i + 1, i + 1);
        out.push(mirrored(m, &b));
    }
    out
}

/// The identity together with the off-diagonal mirrored units
/// [[0, E_ij], [E_ij, 0]], i ≠ j.
pub fn identity_and_offdiagonal_generators(m: usize) -> Vec<ExactMatrix> {
    let mut out = vec![ExactMatrix::identity(2 * m)];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                out.push(mirrored(m, &unit(m, i, j)));
            }
        }
    }
    out
}

/// Bracket closure of block-homogeneous matrices inside gl(m|m).
pub fn matrix_closure(
    half: usize,
    generators: &[ExactMatrix],
    budget: Option<Duration>,
    progress: bool,
) -> Result<ClosureOutcome> {
    let space = MatrixSuperSpace::new(half);
    let coords: Result<Vec<(Parity, SparseVec)>> =
        generators.iter().map(|g| space.to_coords(g)).collect();
    saturate(&space, &coords?, budget, progress)
}
