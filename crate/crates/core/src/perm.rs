//! Permutations of {1, …, n} in one-line notation (0-based internally).
//! Products compose right-to-left: `(a * b)(x) = a(b(x))`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// (−1)^parity
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    /// From 0-based images; must be a bijection on 0..n.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::InvalidArgument(format!("not a permutation: {images:?}")));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition (a b) on 0-based points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a < n && b < n && a != b, "bad transposition ({a} {b}) on {n} points");
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// Adjacent transposition swapping i and i+1 (0-based i).
    pub fn adjacent(n: usize, i: usize) -> Self {
        Permutation::transposition(n, i, i + 1)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.n(), rhs.n(), "size mismatch in composition");
        Permutation { images: rhs.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn parity(&self) -> Parity {
        let mut seen = vec![false; self.n()];
        let mut transpositions = 0usize;
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Cycle decomposition on 0-based points, fixed points omitted, each
    /// cycle starting at its least point, cycles sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x >= n {
                    return Err(Error::InvalidArgument(format!("point {} out of range", x + 1)));
                }
                if touched[x] {
                    return Err(Error::InvalidArgument(format!("point {} repeated", x + 1)));
                }
                touched[x] = true;
            }
            for w in 0..cycle.len() {
                images[cycle[w]] = cycle[(w + 1) % cycle.len()] as u8;
            }
        }
        Ok(Permutation { images })
    }

    /// Word in adjacent transpositions, via insertion sort: composing the
    /// returned generators left to right yields this permutation.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut w = self.images.clone();
        let mut word = Vec::new();
        loop {
            let mut swapped = false;
            for i in 0..w.len().saturating_sub(1) {
                if w[i] > w[i + 1] {
                    w.swap(i, i + 1);
                    word.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        word.reverse();
        word
    }

    /// Cycle notation on 1-based points, e.g. "(1 3)(2 5)"; "()" for the
    /// identity. Also the parser's preferred input form.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|&x| (x + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }

    /// Parses "(1 3)(2 5)" (1-based cycles), one-line "31254" (n ≤ 9), or
    /// comma-separated one-line "3,1,2,5,4". `n` fixes the ambient size.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        if s.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = s;
            while !rest.is_empty() {
                let rest2 = rest.strip_prefix('(').ok_or_else(|| {
                    Error::Parse(format!("expected '(' at {rest:?}"))
                })?;
                let close = rest2
                    .find(')')
                    .ok_or_else(|| Error::Parse("unclosed cycle".into()))?;
                let body = &rest2[..close];
                let pts: Result<Vec<usize>> = body
                    .split(|c: char| c == ' ' || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|e| Error::Parse(format!("bad point {t:?}: {e}")))
                            .and_then(|p| {
                                if p == 0 {
                                    Err(Error::Parse("points are 1-based".into()))
                                } else {
                                    Ok(p - 1)
                                }
                            })
                    })
                    .collect();
                let pts = pts?;
                if !pts.is_empty() {
                    cycles.push(pts);
                }
                rest = rest2[close + 1..].trim_start();
            }
            return Permutation::from_cycles(n, &cycles);
        }
        let digits: Vec<&str> = if s.contains(',') {
            s.split(',').map(str::trim).collect()
        } else {
            if !s.chars().all(|c| c.is_ascii_digit()) {
                return Err(Error::Parse(format!("cannot parse permutation {s:?}")));
            }
            s.split("").filter(|t| !t.is_empty()).collect()
        };
        if digits.len() != n {
            return Err(Error::Parse(format!(
                "one-line form has {} points, expected {n}",
                digits.len()
            )));
        }
        let images: Result<Vec<u8>> = digits
            .iter()
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|e| Error::Parse(format!("bad point {t:?}: {e}")))
                    .and_then(|p| {
                        if p == 0 {
                            Err(Error::Parse("points are 1-based".into()))
                        } else {
                            Ok(p - 1)
                        }
                    })
            })
            .collect();
        Permutation::from_images(images?)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

/// All permutations of n points in lexicographic one-line order.
pub fn enumerate(n: usize) -> Vec<Permutation> {
    let mut out = Vec::with_capacity((1..=n).product());
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Index of all n! permutations (lexicographic one-line order) with O(1)
/// lookup, plus coordinates split by parity: within each parity class,
/// permutations are numbered in the same lexicographic order. This is the
/// coordinate system for group-algebra vectors.
pub struct PermTable {
    n: usize,
    perms: Vec<Permutation>,
    index: HashMap<Vec<u8>, u32>,
    coords: Vec<u32>,
    sector_globals: [Vec<u32>; 2],
}

fn sector(p: Parity) -> usize {
    match p {
        Parity::Even => 0,
        Parity::Odd => 1,
    }
}

impl PermTable {
    pub fn new(n: usize) -> Self {
        let perms = enumerate(n);
        let index = perms
            .iter()
            .enumerate()
            .map(|(g, p)| (p.images().to_vec(), g as u32))
            .collect();
        let mut coords = vec![0u32; perms.len()];
        let mut sector_globals = [Vec::new(), Vec::new()];
        for (g, p) in perms.iter().enumerate() {
            let s = sector(p.parity());
            coords[g] = sector_globals[s].len() as u32;
            sector_globals[s].push(g as u32);
        }
        PermTable { n, perms, index, coords, sector_globals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.perms.len()
    }

    pub fn sector_dim(&self, p: Parity) -> usize {
        self.sector_globals[sector(p)].len()
    }

    pub fn perm(&self, g: u32) -> &Permutation {
        &self.perms[g as usize]
    }

    pub fn global_index(&self, p: &Permutation) -> u32 {
        self.index[p.images()]
    }

    pub fn parity(&self, g: u32) -> Parity {
        self.perms[g as usize].parity()
    }

    /// Index of perm(a) ∘ perm(b).
    pub fn compose(&self, a: u32, b: u32) -> u32 {
        let product = self.perms[a as usize].compose(&self.perms[b as usize]);
        self.index[product.images()]
    }

    pub fn inverse(&self, g: u32) -> u32 {
        self.index[self.perms[g as usize].inverse().images()]
    }

    /// Coordinate of g within its parity sector.
    pub fn coord(&self, g: u32) -> u32 {
        self.coords[g as usize]
    }

    pub fn global_of(&self, p: Parity, coord: u32) -> u32 {
        self.sector_globals[sector(p)][coord as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let s0 = Permutation::adjacent(3, 0);
        let s1 = Permutation::adjacent(3, 1);
        let p = s0.compose(&s1); // apply s1 then s0: 0→0→1, 1→2, 2→1→0
        assert_eq!(p.images(), &[1, 2, 0]);
        assert_eq!(p.parity(), Parity::Even);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn adjacent_words_reconstruct() {
        for p in enumerate(5) {
            let mut q = Permutation::identity(5);
            for i in p.adjacent_word() {
                q = q.compose(&Permutation::adjacent(5, i));
            }
            assert_eq!(q, p);
            let word_parity =
                if p.adjacent_word().len() % 2 == 0 { Parity::Even } else { Parity::Odd };
            assert_eq!(word_parity, p.parity());
        }
    }

    #[test]
    fn parse_forms_agree() {
        let a = Permutation::parse(5, "(1 3)(2 5)").unwrap();
        let b = Permutation::parse(5, "35142").unwrap();
        let c = Permutation::parse(5, "3,5,1,4,2").unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(a.cycle_string(), "(1 3)(2 5)");
        let d = Permutation::parse(5, "31254").unwrap();
        assert_eq!(d.cycle_string(), "(1 3 2)(4 5)");
        assert_eq!(Permutation::parse(3, "()").unwrap(), Permutation::identity(3));
        assert!(Permutation::parse(3, "312x").is_err());
        assert!(Permutation::parse(3, "(1 4)").is_err());
    }

    #[test]
    fn lex_enumeration() {
        let perms = enumerate(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], Permutation::identity(3));
        assert!(perms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn table_round_trips() {
        let table = PermTable::new(4);
        assert_eq!(table.size(), 24);
        assert_eq!(table.sector_dim(Parity::Even), 12);
        assert_eq!(table.sector_dim(Parity::Odd), 12);
        for g in 0..24u32 {
            let p = table.perm(g).clone();
            assert_eq!(table.global_index(&p), g);
            assert_eq!(table.global_of(p.parity(), table.coord(g)), g);
            let ginv = table.inverse(g);
            assert!(table.perm(g).compose(table.perm(ginv)).is_identity());
            for h in 0..24u32 {
                let prod = table.perm(g).compose(table.perm(h));
                assert_eq!(table.compose(g, h), table.global_index(&prod));
            }
        }
    }
}
