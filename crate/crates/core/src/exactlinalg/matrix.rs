//! Dense matrices over [`Scalar`], row-major.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t = &t + self.at(i, i);
        }
        t
    }

    /// The single nonzero discriminant among entries, or zero if all
    /// rational; two distinct nonzero discriminants are a field mismatch.
    pub fn field(&self) -> Result<BigInt> {
        let mut d = BigInt::zero();
        for e in &self.data {
            let ed = e.discriminant();
            if ed.is_zero() {
                continue;
            }
            if d.is_zero() {
                d = ed.clone();
            } else if &d != ed {
                return Err(Error::FieldMismatch(d, ed.clone()));
            }
        }
        Ok(d)
    }

    /// Checks this matrix against `other` for a common quadratic field.
    pub fn common_field(&self, other: &ExactMatrix) -> Result<BigInt> {
        let a = self.field()?;
        let b = other.field()?;
        if a.is_zero() {
            Ok(b)
        } else if b.is_zero() || a == b {
            Ok(a)
        } else {
            Err(Error::FieldMismatch(a, b))
        }
    }

    /// 2×2 block assembly; `None` blocks are zero-filled.
    pub fn from_blocks(
        tl: Option<&ExactMatrix>,
        tr: Option<&ExactMatrix>,
        bl: Option<&ExactMatrix>,
        br: Option<&ExactMatrix>,
        top: usize,
        bottom: usize,
        left: usize,
        right: usize,
    ) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(top + bottom, left + right);
        let mut put = |block: Option<&ExactMatrix>, r0: usize, c0: usize, r: usize, c: usize| {
            if let Some(b) = block {
                assert_eq!((b.nrows(), b.ncols()), (r, c), "block shape");
                for i in 0..r {
                    for j in 0..c {
                        m.set(r0 + i, c0 + j, b.at(i, j).clone());
                    }
                }
            }
        };
        put(tl, 0, 0, top, left);
        put(tr, 0, left, top, right);
        put(bl, top, 0, bottom, left);
        put(br, top, left, bottom, right);
        m
    }

    pub fn block(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(rows.len(), cols.len(), |i, j| self.at(rows[i], cols[j]).clone())
    }

    pub fn flatten(&self) -> &[Scalar] {
        &self.data
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix add shape");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sub shape");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix mul shape");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j);
                    let v = cur + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|e| e.to_string()).collect()).collect();
        let mut widths = vec![0usize; self.cols];
        for row in &strings {
            for (j, s) in row.iter().enumerate() {
                widths[j] = widths[j].max(s.chars().count());
            }
        }
        for row in &strings {
            write!(f, "[")?;
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, "  ")?;
                }
                let pad = widths[j] - s.chars().count();
                write!(f, "{}{s}", " ".repeat(pad))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.to_string()).collect())
            .collect();
        MatrixRepr { rows: self.rows, cols: self.cols, entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(serde::de::Error::custom("entry grid does not match declared shape"));
        }
        let mut rows = Vec::with_capacity(repr.rows);
        for row in repr.entries {
            let parsed: std::result::Result<Vec<Scalar>, _> =
                row.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect();
            rows.push(parsed?);
        }
        ExactMatrix::from_rows(rows).map_err(serde::de::Error::custom)
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
    fn mul_and_trace() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.trace(), Scalar::from_integer(5));
        assert_eq!(&a * &ExactMatrix::identity(2), a);
    }

    #[test]
    fn json_round_trip() {
        let a = m(&[&[1, -2], &[0, 7]]);
        let js = serde_json::to_string(&a).unwrap();
        let back: ExactMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
        assert!(js.contains("\"entries\""));
    }
}
