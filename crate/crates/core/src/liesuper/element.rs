//! Elements of the group algebra of S_n with exact coefficients, graded by
//! permutation sign, and their super commutator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactlinalg::{Scalar, SparseVec};
use crate::perm::{Parity, PermTable, Permutation};

/// A finitely supported Scalar combination of permutations. Homogeneous
/// elements (support of a single parity) are the inputs to the bracket.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    n: usize,
    coeffs: BTreeMap<Permutation, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, coeffs: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        GroupAlgebraElement::from_permutation(Permutation::identity(n))
    }

    pub fn from_permutation(p: Permutation) -> Self {
        GroupAlgebraElement::single(p, Scalar::one())
    }

    pub fn single(p: Permutation, c: Scalar) -> Self {
        let n = p.n();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(p, c);
        }
        GroupAlgebraElement { n, coeffs }
    }

    pub fn from_terms(n: usize, terms: Vec<(Permutation, Scalar)>) -> Result<Self> {
        let mut out = GroupAlgebraElement::zero(n);
        for (p, c) in terms {
            if p.n() != n {
                return Err(Error::InvalidArgument(format!(
                    "term on {} letters in an element of the algebra of S_{n}",
                    p.n()
                )));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    /// The transposition (a b) on 0-based points, as an algebra element.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        GroupAlgebraElement::from_permutation(Permutation::transposition(n, a, b))
    }

    /// Sum of all transpositions.
    pub fn transposition_sum(n: usize) -> Self {
        let mut out = GroupAlgebraElement::zero(n);
        for a in 0..n {
            for b in a + 1..n {
                out.add_term(Permutation::transposition(n, a, b), Scalar::one());
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, p: &Permutation) -> Scalar {
        self.coeffs.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Scalar)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, p: Permutation, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return GroupAlgebraElement::zero(self.n);
        }
        let coeffs = self.coeffs.iter().map(|(p, c)| (p.clone(), c * s)).collect();
        GroupAlgebraElement { n: self.n, coeffs }
    }

    /// Parity of the support; zero counts as even, mixed support is an error.
    pub fn parity(&self) -> Result<Parity> {
        let mut found: Option<Parity> = None;
        for p in self.coeffs.keys() {
            let pi = p.parity();
            match found {
                None => found = Some(pi),
                Some(q) if q != pi => {
                    return Err(Error::InvalidArgument(
                        "element mixes even and odd permutations".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(found.unwrap_or(Parity::Even))
    }

    pub fn even_part(&self) -> Self {
        self.parity_part(Parity::Even)
    }

    pub fn odd_part(&self) -> Self {
        self.parity_part(Parity::Odd)
    }

    fn parity_part(&self, parity: Parity) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(p, _)| p.parity() == parity)
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        GroupAlgebraElement { n: self.n, coeffs }
    }

    /// Associative convolution product.
    pub fn product(&self, rhs: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        if self.n != rhs.n {
            return Err(Error::InvalidArgument("product across different groups".into()));
        }
        let mut out = GroupAlgebraElement::zero(self.n);
        for (p, a) in &self.coeffs {
            for (q, b) in &rhs.coeffs {
                out.add_term(p.compose(q), a * b);
            }
        }
        Ok(out)
    }

    /// Coordinates in the parity sector of a PermTable, sorted by index.
    pub fn to_coords(&self, table: &PermTable) -> Result<(Parity, SparseVec)> {
        if table.n() != self.n {
            return Err(Error::InvalidArgument("table size mismatch".into()));
        }
        let parity = self.parity()?;
        let mut v: SparseVec = self
            .coeffs
            .iter()
            .map(|(p, c)| (table.coord(table.global_index(p)), c.clone()))
            .collect();
        v.sort_by_key(|&(i, _)| i);
        Ok((parity, v))
    }

    pub fn from_coords(table: &PermTable, parity: Parity, v: &SparseVec) -> GroupAlgebraElement {
        let coeffs = v
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (table.perm(table.global_of(parity, *i)).clone(), c.clone()))
            .collect();
        GroupAlgebraElement { n: table.n(), coeffs }
    }
}

impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.n, rhs.n, "size mismatch");
        let mut out = self.clone();
        for (p, c) in &rhs.coeffs {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        self + &-rhs
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        let coeffs = self.coeffs.iter().map(|(p, c)| (p.clone(), -c)).collect();
        GroupAlgebraElement { n: self.n, coeffs }
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{p}")?;
        }
        Ok(())
    }
}

/// [x, y] = xy − (−1)^{x̄ȳ} yx on homogeneous elements.
pub fn super_bracket(
    x: &GroupAlgebraElement,
    y: &GroupAlgebraElement,
) -> Result<GroupAlgebraElement> {
    let (px, py) = (x.parity()?, y.parity()?);
    let xy = x.product(y)?;
    let yx = y.product(x)?;
    Ok(if px == Parity::Odd && py == Parity::Odd { &xy + &yx } else { &xy - &yx })
}

/// Bracket extended bilinearly to arbitrary (possibly inhomogeneous) inputs.
pub fn super_bracket_bilinear(
    x: &GroupAlgebraElement,
    y: &GroupAlgebraElement,
) -> Result<GroupAlgebraElement> {
    let mut out = GroupAlgebraElement::zero(x.n());
    for xp in [x.even_part(), x.odd_part()] {
        for yp in [y.even_part(), y.odd_part()] {
            out = &out + &super_bracket(&xp, &yp)?;
        }
    }
    Ok(out)
}

/// The transpositions of S_n as algebra elements — the generating set of the
/// Lie superalgebra studied here.
pub fn transpositions(n: usize) -> Vec<GroupAlgebraElement> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(GroupAlgebraElement::transposition(n, a, b));
        }
    }
    out
}
