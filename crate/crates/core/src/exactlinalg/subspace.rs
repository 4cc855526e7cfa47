//! Incremental subspaces kept in reduced row-echelon form with sparse rows.
//!
//! Rows are sorted coordinate/value pairs; the first entry is the pivot with
//! coefficient one, and no row has support on another row's pivot column. For
//! the spans that arise here the final codimension is tiny, which keeps the
//! fully reduced rows short.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::scalar::Scalar;

pub type SparseVec = Vec<(u32, Scalar)>;

#[derive(Clone, Debug)]
pub struct EchelonSubspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<u32>>,
}

impl EchelonSubspace {
    pub fn new(ambient: usize) -> Self {
        EchelonSubspace { ambient, rows: Vec::new(), pivot_row: vec![None; ambient] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row_dense(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.ambient];
        for (j, c) in &self.rows[i] {
            v[*j as usize] = c.clone();
        }
        v
    }

    fn check(&self, v: &SparseVec) -> Result<()> {
        if v.iter().any(|&(j, _)| j as usize >= self.ambient) {
            return Err(Error::DimensionMismatch(format!(
                "coordinate out of range for ambient dimension {}",
                self.ambient
            )));
        }
        Ok(())
    }

    /// Reduces `v` against the current rows; the remainder is zero exactly
    /// when `v` lies in the span.
    fn residue(&self, v: &SparseVec) -> BTreeMap<u32, Scalar> {
        let mut work: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (j, c) in v {
            if !c.is_zero() {
                let e = work.entry(*j).or_insert_with(Scalar::zero);
                *e = &*e + c;
            }
        }
        let mut cleared: Vec<u32> = Vec::new();
        loop {
            let next = work
                .iter()
                .find(|(j, c)| !c.is_zero() && !cleared.contains(j))
                .map(|(j, _)| *j);
            let Some(j) = next else { break };
            cleared.push(j);
            let Some(row_idx) = self.pivot_row[j as usize] else { continue };
            let coeff = work.remove(&j).unwrap();
            cleared.pop();
            for (k, c) in &self.rows[row_idx as usize][1..] {
                let e = work.entry(*k).or_insert_with(Scalar::zero);
                *e = &*e - &(&coeff * c);
                if e.is_zero() {
                    work.remove(k);
                }
            }
        }
        work.retain(|_, c| !c.is_zero());
        work
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        self.check(v)?;
        Ok(self.residue(v).is_empty())
    }

    /// Inserts a vector, returning whether the dimension grew. Idempotent.
    pub fn insert(&mut self, v: &SparseVec) -> Result<bool> {
        self.check(v)?;
        let work = self.residue(v);
        let Some((&pivot, _)) = work.iter().next() else { return Ok(false) };
        let inv = work[&pivot].inv();
        let row: SparseVec = work.iter().map(|(&j, c)| (j, c * &inv)).collect();
        // Back-reduce existing rows so the form stays fully reduced. Only
        // rows with a smaller pivot can mention the new pivot column.
        for r in &mut self.rows {
            if r[0].0 >= pivot {
                continue;
            }
            let Ok(pos) = r.binary_search_by_key(&pivot, |&(j, _)| j) else { continue };
            let factor = r[pos].1.clone();
            let mut merged: BTreeMap<u32, Scalar> = r.iter().cloned().collect();
            for (k, c) in &row {
                let e = merged.entry(*k).or_insert_with(Scalar::zero);
                *e = &*e - &(&factor * c);
                if e.is_zero() {
                    merged.remove(k);
                }
            }
            *r = merged.into_iter().collect();
        }
        self.pivot_row[pivot as usize] = Some(self.rows.len() as u32);
        self.rows.push(row);
        Ok(true)
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> Result<bool> {
        let sv: SparseVec = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u32, c.clone()))
            .collect();
        self.insert(&sv)
    }

    pub fn contains_dense(&self, v: &[Scalar]) -> Result<bool> {
        let sv: SparseVec = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u32, c.clone()))
            .collect();
        self.contains(&sv)
    }

    /// Debug invariant: rows sorted, unit pivots, no row supported on another
    /// pivot column.
    #[cfg(test)]
    pub fn assert_reduced(&self) {
        for (i, r) in self.rows.iter().enumerate() {
            assert!(!r.is_empty());
            assert!(r[0].1.is_one(), "pivot not normalized");
            assert!(r.windows(2).all(|w| w[0].0 < w[1].0), "row not sorted");
            assert_eq!(self.pivot_row[r[0].0 as usize], Some(i as u32));
            for (j, _) in &r[1..] {
                assert!(self.pivot_row[*j as usize].is_none(), "support on a pivot column");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(pairs: &[(u32, i64)]) -> SparseVec {
        pairs.iter().map(|&(j, c)| (j, Scalar::from_integer(c))).collect()
    }

    #[test]
    fn insert_and_membership() {
        let mut s = EchelonSubspace::new(4);
        assert!(s.insert(&sv(&[(0, 1)])).unwrap());
        assert!(!s.insert(&sv(&[(0, 5)])).unwrap(), "multiples do not grow the span");
        assert!(s.insert(&sv(&[(0, 1), (1, 1)])).unwrap());
        assert!(s.contains(&sv(&[(1, 7)])).unwrap());
        assert!(!s.contains(&sv(&[(2, 1)])).unwrap());
        assert_eq!(s.dim(), 2);
        s.assert_reduced();
    }

    #[test]
    fn stays_reduced_under_back_substitution() {
        let mut s = EchelonSubspace::new(5);
        s.insert(&sv(&[(1, 2), (3, 4), (4, 2)])).unwrap();
        s.insert(&sv(&[(0, 1), (3, 1)])).unwrap();
        s.insert(&sv(&[(3, 3), (4, 1)])).unwrap();
        s.insert(&sv(&[(2, 1), (4, 5)])).unwrap();
        s.assert_reduced();
        assert_eq!(s.dim(), 4);
        let dim_before = s.dim();
        s.insert(&sv(&[(0, 2), (1, 2), (2, 2), (3, 2), (4, 2)])).unwrap();
        assert_eq!(s.dim(), dim_before + 1);
        s.assert_reduced();
    }

    #[test]
    fn rejects_out_of_range() {
        let mut s = EchelonSubspace::new(2);
        assert!(s.insert(&sv(&[(2, 1)])).is_err());
    }
}
