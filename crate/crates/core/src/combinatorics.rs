//! Partitions, standard Young tableaux, content vectors, and the split of
//! partition classes into self-conjugate and conjugate-paired families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Parity;

/// A partition of n: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("empty partition".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("parts not weakly decreasing: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Length of row r, or 0 past the last row (0-based r).
    pub fn row_len(&self, r: usize) -> usize {
        self.parts.get(r).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        let parts = (0..cols)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Boxes as (row, col), 0-based, row-major.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    /// Sum of the box residues c − r.
    pub fn residue_sum(&self) -> i64 {
        self.boxes().map(|(r, c)| c as i64 - r as i64).sum()
    }

    /// Partitions of n − 1 under this one, each tagged with the residue of
    /// the removed box. Ordered top row first; residues are pairwise distinct.
    pub fn covers(&self) -> Vec<(Partition, i64)> {
        let mut out = Vec::new();
        for r in 0..self.rows() {
            let removable = self.row_len(r + 1) < self.parts[r];
            if !removable {
                continue;
            }
            let mut parts = self.parts.clone();
            parts[r] -= 1;
            if parts[r] == 0 {
                parts.pop();
            }
            let residue = (self.parts[r] - 1) as i64 - r as i64;
            if parts.is_empty() {
                // covers of (1); callers on n ≥ 2 never see this
                continue;
            }
            out.push((Partition { parts }, residue));
        }
        out
    }

    /// Parity of the number of boxes strictly above the main diagonal.
    /// Only meaningful for self-conjugate shapes.
    pub fn diagonal_parity(&self) -> Result<Parity> {
        if !self.is_self_conjugate() {
            return Err(Error::InvalidArgument(format!("{self} is not self-conjugate")));
        }
        let above = self.boxes().filter(|&(r, c)| c > r).count();
        Ok(if above % 2 == 0 { Parity::Even } else { Parity::Odd })
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn hook_length_count(&self) -> u64 {
        let conj = self.conjugate();
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for (k, (r, c)) in self.boxes().enumerate() {
            num *= (k + 1) as u128;
            den *= ((self.parts[r] - c) + (conj.parts[c] - r) - 1) as u128;
        }
        (num / den) as u64
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts "3,1,1" or "(3,1,1)"; spaces around parts are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Result<Vec<usize>> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad partition part {t:?}: {e}")))
            })
            .collect();
        Partition::new(parts?)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

/// All partitions of n in reverse-lexicographic order: (n) first, (1ⁿ) last.
pub fn partitions(n: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::InvalidArgument("partitions of 0 requested".into()));
    }
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    descend(n, n, &mut stack, &mut out);
    Ok(out)
}

fn descend(remaining: usize, cap: usize, stack: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: stack.clone() });
        return;
    }
    for part in (1..=remaining.min(cap)).rev() {
        stack.push(part);
        descend(remaining - part, part, stack, out);
        stack.pop();
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum BlockKind {
    /// Self-conjugate shape: one ungraded simple.
    M,
    /// Conjugate pair: the module splits ungraded and carries an odd involution.
    Q,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockKind::M => write!(f, "M"),
            BlockKind::Q => write!(f, "Q"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassEntry {
    pub representative: Partition,
    /// Conjugate of the representative; equals it for kind M.
    pub mate: Partition,
    pub kind: BlockKind,
}

/// Partitions of n grouped up to conjugation, with the lexicographically
/// larger of each pair chosen as representative.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassTable {
    pub n: usize,
    pub classes: Vec<ClassEntry>,
}

impl ClassTable {
    pub fn representatives(&self) -> impl Iterator<Item = &Partition> {
        self.classes.iter().map(|c| &c.representative)
    }

    pub fn classes(&self) -> &[ClassEntry] {
        &self.classes
    }

    pub fn entry(&self, lambda: &Partition) -> Option<&ClassEntry> {
        self.classes.iter().find(|c| &c.representative == lambda)
    }

    pub fn is_representative(&self, lambda: &Partition) -> bool {
        self.entry(lambda).is_some()
    }

    pub fn num_m(&self) -> usize {
        self.classes.iter().filter(|c| c.kind == BlockKind::M).count()
    }

    pub fn num_q(&self) -> usize {
        self.classes.iter().filter(|c| c.kind == BlockKind::Q).count()
    }
}

pub fn classify(n: usize) -> Result<ClassTable> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("classification needs n ≥ 2, got {n}")));
    }
    let mut classes = Vec::new();
    for lambda in partitions(n)? {
        let mate = lambda.conjugate();
        if lambda == mate {
            classes.push(ClassEntry { representative: lambda, mate, kind: BlockKind::M });
        } else if lambda > mate {
            classes.push(ClassEntry { representative: lambda, mate, kind: BlockKind::Q });
        }
        // lex-smaller member of a pair is listed via its mate
    }
    Ok(ClassTable { n, classes })
}

/// Contents (α_1, …, α_n): α_i is the residue of the box holding i.
pub type ContentVector = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct StandardTableau {
    shape: Partition,
    /// rows[r][c] = entry in box (r, c), 1-based values.
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(shape: Partition, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = shape.n();
        if rows.len() != shape.rows()
            || rows.iter().zip(shape.parts()).any(|(row, &len)| row.len() != len)
        {
            return Err(Error::InvalidArgument("rows do not match shape".into()));
        }
        let mut seen = vec![false; n + 1];
        for row in &rows {
            for &x in row {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::InvalidArgument(format!("bad entry {x}")));
                }
                seen[x] = true;
            }
        }
        let t = StandardTableau { shape, rows };
        if !t.is_standard() {
            return Err(Error::InvalidArgument("rows/columns not increasing".into()));
        }
        Ok(t)
    }

    fn is_standard(&self) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if c + 1 < row.len() && row[c + 1] <= x {
                    return false;
                }
                if r + 1 < self.rows.len() && self.rows[r + 1].get(c).is_some_and(|&y| y <= x) {
                    return false;
                }
            }
        }
        true
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    /// 0-based (row, col) of the box holding value k (1-based k).
    pub fn position_of(&self, k: usize) -> (usize, usize) {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&x| x == k) {
                return (r, c);
            }
        }
        panic!("value {k} not in tableau");
    }

    pub fn content_vector(&self) -> ContentVector {
        let mut alpha = vec![0i64; self.n()];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                alpha[x - 1] = c as i64 - r as i64;
            }
        }
        alpha
    }

    /// Transposed tableau, of conjugate shape; its content vector is the
    /// negation of this one's.
    pub fn transpose(&self) -> StandardTableau {
        let shape = self.shape.conjugate();
        let rows = (0..shape.rows())
            .map(|c| (0..shape.parts()[c]).map(|r| self.rows[r][c]).collect())
            .collect();
        StandardTableau { shape, rows }
    }

    /// 1..n filled along rows: the lex-greatest content vector of its shape.
    pub fn row_reading(shape: &Partition) -> StandardTableau {
        let mut next = 1;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next..next + len).collect();
                next += len;
                row
            })
            .collect();
        StandardTableau { shape: shape.clone(), rows }
    }

    /// Entries swapped by the adjacent transposition of k, k+1, when legal:
    /// returns the new tableau unless k and k+1 share a row or column.
    pub fn swap_adjacent(&self, k: usize) -> Option<StandardTableau> {
        let (r1, c1) = self.position_of(k);
        let (r2, c2) = self.position_of(k + 1);
        if r1 == r2 || c1 == c2 {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[r1][c1] = k + 1;
        rows[r2][c2] = k;
        Some(StandardTableau { shape: self.shape.clone(), rows })
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// All standard tableaux of the given shape, sorted lexicographically by
/// content vector — the canonical basis order used everywhere downstream.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    let mut out = Vec::new();
    let mut row_fill = vec![0usize; shape.rows()];
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
    fill(shape, 1, &mut row_fill, &mut rows, &mut out);
    out.sort_by_key(|t| t.content_vector());
    out
}

fn fill(
    shape: &Partition,
    value: usize,
    row_fill: &mut Vec<usize>,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<StandardTableau>,
) {
    if value > shape.n() {
        out.push(StandardTableau { shape: shape.clone(), rows: rows.clone() });
        return;
    }
    for r in 0..shape.rows() {
        let c = row_fill[r];
        let addable = c < shape.parts()[r] && (r == 0 || row_fill[r - 1] > c);
        if !addable {
            continue;
        }
        rows[r][c] = value;
        row_fill[r] += 1;
        fill(shape, value + 1, row_fill, rows, out);
        row_fill[r] -= 1;
        rows[r][c] = 0;
    }
}

/// Inverse of `content_vector` within a fixed shape.
pub fn tableau_of(shape: &Partition, alpha: &[i64]) -> Result<StandardTableau> {
    if alpha.len() != shape.n() {
        return Err(Error::NotAWeight(format!(
            "content vector has length {}, shape needs {}",
            alpha.len(),
            shape.n()
        )));
    }
    let mut row_fill = vec![0usize; shape.rows()];
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
    for (i, &res) in alpha.iter().enumerate() {
        let mut placed = false;
        for r in 0..shape.rows() {
            let c = row_fill[r];
            let addable = c < shape.parts()[r] && (r == 0 || row_fill[r - 1] > c);
            if addable && c as i64 - r as i64 == res {
                rows[r][c] = i + 1;
                row_fill[r] += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::NotAWeight(format!(
                "{alpha:?} is not the content vector of a standard tableau of shape {shape}"
            )));
        }
    }
    Ok(StandardTableau { shape: shape.clone(), rows })
}
