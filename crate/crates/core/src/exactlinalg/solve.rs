//! Reduced row echelon form and linear solving, fully exact.

use crate::error::{Error, Result};

use super::matrix::ExactMatrix;
use super::scalar::Scalar;

/// Reduced row echelon form with the pivot convention "first nonzero column,
/// scanning rows top-down"; pivots are normalized to one and cleared above
/// and below. Returns the reduced matrix and its rank.
pub fn rref(m: &ExactMatrix) -> Result<(ExactMatrix, usize)> {
    m.field()?;
    let mut a = m.clone();
    let rank = rref_in_place(&mut a);
    Ok((a, rank))
}

pub(crate) fn rref_in_place(a: &mut ExactMatrix) -> usize {
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !a.at(i, c).is_zero()) else { continue };
        if pivot != r {
            for j in 0..cols {
                let tmp = a.at(pivot, j).clone();
                a.set(pivot, j, a.at(r, j).clone());
                a.set(r, j, tmp);
            }
        }
        let inv = a.at(r, c).inv();
        for j in c..cols {
            let v = a.at(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.at(i, c).is_zero() {
                continue;
            }
            let factor = a.at(i, c).clone();
            for j in c..cols {
                let v = a.at(i, j) - &(&factor * a.at(r, j));
                a.set(i, j, v);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[derive(Clone, Debug)]
pub struct LinearSolution {
    /// A particular solution of `A·X = B`, column-shaped like `B`; `None`
    /// when the system is inconsistent.
    pub particular: Option<ExactMatrix>,
    /// Basis of the kernel of `A` (each of length `A.ncols()`).
    pub nullspace: Vec<Vec<Scalar>>,
}

/// Solves `A·X = B` for matrix unknowns by one augmented elimination.
pub fn solve_linear(a: &ExactMatrix, b: &ExactMatrix) -> Result<LinearSolution> {
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows, B has {}",
            a.nrows(),
            b.nrows()
        )));
    }
    a.common_field(b)?;
    let (n, k) = (a.ncols(), b.ncols());
    let mut aug = ExactMatrix::zeros(a.nrows(), n + k);
    for i in 0..a.nrows() {
        for j in 0..n {
            aug.set(i, j, a.at(i, j).clone());
        }
        for j in 0..k {
            aug.set(i, n + j, b.at(i, j).clone());
        }
    }
    rref_in_place(&mut aug);

    let mut pivot_col_of_row = Vec::new();
    let mut is_pivot = vec![false; n];
    for i in 0..aug.nrows() {
        match (0..n + k).find(|&j| !aug.at(i, j).is_zero()) {
            Some(j) if j < n => {
                pivot_col_of_row.push((i, j));
                is_pivot[j] = true;
            }
            Some(_) => {
                // nonzero row entirely in the augmented part: inconsistent
                return Ok(LinearSolution { particular: None, nullspace: kernel_from_rref(&aug, n, &is_pivot, &pivot_col_of_row) });
            }
            None => {}
        }
    }

    let mut x = ExactMatrix::zeros(n, k);
    for &(row, col) in &pivot_col_of_row {
        for j in 0..k {
            x.set(col, j, aug.at(row, n + j).clone());
        }
    }
    let nullspace = kernel_from_rref(&aug, n, &is_pivot, &pivot_col_of_row);
    Ok(LinearSolution { particular: Some(x), nullspace })
}

fn kernel_from_rref(
    aug: &ExactMatrix,
    n: usize,
    is_pivot: &[bool],
    pivots: &[(usize, usize)],
) -> Vec<Vec<Scalar>> {
    let mut basis = Vec::new();
    for free in 0..n {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Scalar::zero(); n];
        v[free] = Scalar::one();
        for &(row, col) in pivots {
            v[col] = -aug.at(row, free);
        }
        basis.push(v);
    }
    basis
}

/// Kernel basis of `A`.
pub fn kernel(a: &ExactMatrix) -> Result<Vec<Vec<Scalar>>> {
    Ok(solve_linear(a, &ExactMatrix::zeros(a.nrows(), 0))?.nullspace)
}

/// Exact inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
    }
    let sol = solve_linear(m, &ExactMatrix::identity(m.nrows()))?;
    match sol.particular {
        Some(x) if sol.nullspace.is_empty() => Ok(Some(x)),
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_integer(x)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_one_reduction() {
        let (r, rank) = rref(&m(&[&[1, 2], &[2, 4]])).unwrap();
        assert_eq!(rank, 1);
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_is_a_projection() {
        let a = m(&[&[2, 4, 1], &[0, 3, -1], &[2, 7, 0]]);
        let (r1, k1) = rref(&a).unwrap();
        let (r2, k2) = rref(&r1).unwrap();
        assert_eq!((r1, k1), (r2, k2));
    }

    #[test]
    fn solve_with_nullspace() {
        // x + y = 1, 0 = 0  ->  one free variable
        let a = m(&[&[1, 1], &[0, 0]]);
        let b = m(&[&[1], &[0]]);
        let sol = solve_linear(&a, &b).unwrap();
        let x = sol.particular.unwrap();
        assert_eq!(x.at(0, 0), &Scalar::from_integer(1));
        assert_eq!(sol.nullspace.len(), 1);
        // inconsistent variant
        let b_bad = m(&[&[1], &[2]]);
        assert!(solve_linear(&a, &b_bad).unwrap().particular.is_none());
    }

    #[test]
    fn inverse_small() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap().unwrap();
        assert_eq!(&a * &inv, ExactMatrix::identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).unwrap().is_none());
    }
}
