//! Bracket-closure saturation: the smallest graded subspace containing a set
//! of homogeneous generators and closed under the super commutator, plus the
//! derived-subalgebra span. Generic over the bracket so the same worklist
//! serves group-algebra and matrix coordinates.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlinalg::{EchelonSubspace, Scalar, SparseVec};
use crate::liesuper::element::GroupAlgebraElement;
use crate::perm::{Parity, PermTable, Permutation};

/// A coordinate system with a parity-graded bracket. Vectors are sparse
/// coordinates within one parity sector; the bracket of sectors p, q lands
/// in sector p+q.
pub trait BracketSpace: Sync {
    fn sector_dim(&self, parity: Parity) -> usize;
    fn bracket(&self, x: (Parity, &SparseVec), y: (Parity, &SparseVec)) -> SparseVec;
}

/// Parity-split span in echelon form.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    even: EchelonSubspace,
    odd: EchelonSubspace,
}

impl GradedSubspace {
    pub fn new(even_dim: usize, odd_dim: usize) -> Self {
        GradedSubspace { even: EchelonSubspace::new(even_dim), odd: EchelonSubspace::new(odd_dim) }
    }

    pub fn sector(&self, p: Parity) -> &EchelonSubspace {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    fn sector_mut(&mut self, p: Parity) -> &mut EchelonSubspace {
        match p {
            Parity::Even => &mut self.even,
            Parity::Odd => &mut self.odd,
        }
    }

    pub fn insert(&mut self, p: Parity, v: &SparseVec) -> Result<bool> {
        self.sector_mut(p).insert(v)
    }

    pub fn contains(&self, p: Parity, v: &SparseVec) -> Result<bool> {
        self.sector(p).contains(v)
    }

    pub fn even_dim(&self) -> usize {
        self.even.dim()
    }

    pub fn odd_dim(&self) -> usize {
        self.odd.dim()
    }

    pub fn dim(&self) -> usize {
        self.even.dim() + self.odd.dim()
    }

    /// Basis rows as (parity, vector) pairs, even sector first.
    pub fn rows(&self) -> Vec<(Parity, SparseVec)> {
        let mut out = Vec::with_capacity(self.dim());
        for row in self.even.rows() {
            out.push((Parity::Even, row.clone()));
        }
        for row in self.odd.rows() {
            out.push((Parity::Odd, row.clone()));
        }
        out
    }
}

/// Result of a saturation run. `complete` is false when the budget expired
/// first; the subspace then holds a partial (still valid) lower bound.
#[derive(Debug)]
pub struct ClosureOutcome {
    pub space: GradedSubspace,
    pub complete: bool,
    pub passes: usize,
    pub brackets: usize,
}

// Worklist chunk size: brackets within a chunk run in parallel, echelon
// insertion stays serial. Bounds peak memory while keeping cores busy.
const CHUNK: usize = 128;

/// Saturates the span of the generators under the bracket. Newly added basis
/// vectors are bracketed against the generators only: every element of the
/// closure is a combination of bracket monomials in the generators, and the
/// graded Jacobi identity rewrites any monomial as a combination of
/// left-normed ones, so the fixpoint already contains all brackets of pairs.
pub fn saturate<B: BracketSpace>(
    space: &B,
    generators: &[(Parity, SparseVec)],
    budget: Option<Duration>,
    progress: bool,
) -> Result<ClosureOutcome> {
    let start = Instant::now();
    let mut sub =
        GradedSubspace::new(space.sector_dim(Parity::Even), space.sector_dim(Parity::Odd));
    let mut fresh: Vec<(Parity, SparseVec)> = Vec::new();
    for (p, v) in generators {
        if sub.insert(*p, v)? {
            fresh.push((*p, v.clone()));
        }
    }
    let mut passes = 0usize;
    let mut brackets = 0usize;
    while !fresh.is_empty() {
        passes += 1;
        let mut next = Vec::new();
        for chunk in fresh.chunks(CHUNK) {
            if let Some(limit) = budget {
                if start.elapsed() > limit {
                    if progress {
                        eprintln!(
                            "closure: budget exhausted in pass {passes} at dims ({}, {})",
                            sub.even_dim(),
                            sub.odd_dim()
                        );
                    }
                    return Ok(ClosureOutcome { space: sub, complete: false, passes, brackets });
                }
            }
            let produced: Vec<(Parity, SparseVec)> = chunk
                .par_iter()
                .flat_map_iter(|(p, v)| {
                    generators.iter().map(move |(q, w)| {
                        (p.combine(*q), space.bracket((*p, v), (*q, w)))
                    })
                })
                .collect();
            brackets += produced.len();
            for (p, v) in produced {
                if !v.is_empty() && sub.insert(p, &v)? {
                    next.push((p, v));
                }
            }
        }
        if progress {
            eprintln!(
                "closure pass {passes}: dims ({}, {}), {} new vectors",
                sub.even_dim(),
                sub.odd_dim(),
                next.len()
            );
        }
        fresh = next;
    }
    Ok(ClosureOutcome { space: sub, complete: true, passes, brackets })
}

/// Group-algebra coordinates: the bracket is a two-sided convolution against
/// the (sector-split) permutation index.
pub struct GroupBracketSpace<'a> {
    table: &'a PermTable,
}

impl<'a> GroupBracketSpace<'a> {
    pub fn new(table: &'a PermTable) -> Self {
        GroupBracketSpace { table }
    }
}

impl BracketSpace for GroupBracketSpace<'_> {
    fn sector_dim(&self, parity: Parity) -> usize {
        self.table.sector_dim(parity)
    }

    fn bracket(&self, x: (Parity, &SparseVec), y: (Parity, &SparseVec)) -> SparseVec {
        let out_parity = x.0.combine(y.0);
        let mut acc: Vec<Scalar> = vec![Scalar::zero(); self.table.sector_dim(out_parity)];
        // [x, y] = xy − (−1)^{x̄ȳ} yx; the sign flips to + on odd·odd
        let anticommute = x.0 == Parity::Odd && y.0 == Parity::Odd;
        for &(i, ref a) in x.1 {
            let gi = self.table.global_of(x.0, i);
            for &(j, ref b) in y.1 {
                let gj = self.table.global_of(y.0, j);
                let ab = a * b;
                let fwd = self.table.coord(self.table.compose(gi, gj)) as usize;
                acc[fwd] = &acc[fwd] + &ab;
                let bwd = self.table.coord(self.table.compose(gj, gi)) as usize;
                acc[bwd] = if anticommute { &acc[bwd] + &ab } else { &acc[bwd] - &ab };
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect()
    }
}

/// Closure of homogeneous group-algebra generators under the super
/// commutator.
pub fn closure(
    table: &PermTable,
    generators: &[GroupAlgebraElement],
    budget: Option<Duration>,
    progress: bool,
) -> Result<ClosureOutcome> {
    let coords: Result<Vec<(Parity, SparseVec)>> =
        generators.iter().map(|g| g.to_coords(table)).collect();
    saturate(&GroupBracketSpace::new(table), &coords?, budget, progress)
}

/// Span of all pairwise brackets of basis vectors — the derived subalgebra
/// when the input is closed under the bracket. A single pass suffices
/// because the result is an ideal of the input; closedness itself is
/// re-checked on the way (every bracket must land back in the input).
pub fn derived<B: BracketSpace>(space: &B, sub: &GradedSubspace) -> Result<GradedSubspace> {
    let rows = sub.rows();
    let mut pairs = Vec::new();
    for i in 0..rows.len() {
        for j in i..rows.len() {
            pairs.push((i, j));
        }
    }
    let out = span_of_brackets(space, &rows, &pairs)?;
    for p in [Parity::Even, Parity::Odd] {
        for row in out.sector(p).rows() {
            if !sub.contains(p, row)? {
                return Err(Error::InvalidArgument(
                    "subspace is not closed under the bracket".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// Derived subalgebra of the whole group algebra ℂS_n under the super
/// commutator. Substituting a = gh into [g, h] = gh − (−1)^{ḡh̄}hg turns the
/// spanning set into twisted conjugation differences
/// a − (−1)^{(ā+1)h̄}·hah⁻¹, and those telescope along words in h, so group
/// generators of S_n suffice — 2·n! two-term vectors instead of (n!)²
/// brackets.
pub fn group_algebra_derived(table: &PermTable) -> Result<GradedSubspace> {
    let mut out =
        GradedSubspace::new(table.sector_dim(Parity::Even), table.sector_dim(Parity::Odd));
    for (p, v) in group_algebra_derived_spanning(table)? {
        out.insert(p, &v)?;
    }
    Ok(out)
}

/// The raw two-term spanning vectors behind `group_algebra_derived`, useful
/// when the span is to be pushed through a linear map before echelonizing.
pub fn group_algebra_derived_spanning(table: &PermTable) -> Result<Vec<(Parity, SparseVec)>> {
    let n = table.n();
    let mut spanning = Vec::new();
    let mut conjugators = Vec::new();
    if n >= 2 {
        conjugators.push(table.global_index(&Permutation::transposition(n, 0, 1)));
    }
    if n >= 3 {
        let images: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
        conjugators.push(table.global_index(&Permutation::from_images(images)?));
    }
    for h in conjugators {
        let h_odd = table.parity(h) == Parity::Odd;
        let h_inv = table.inverse(h);
        for a in 0..table.size() as u32 {
            let p = table.parity(a);
            let conj = table.compose(table.compose(h, a), h_inv);
            // sign is −1 exactly when h is odd and a is even
            let negate = h_odd && p == Parity::Even;
            let v: SparseVec = if conj == a {
                if !negate {
                    continue; // a − a = 0
                }
                vec![(table.coord(a), Scalar::one())]
            } else {
                let s = if negate { Scalar::one() } else { -&Scalar::one() };
                let mut v = vec![(table.coord(a), Scalar::one()), (table.coord(conj), s)];
                v.sort_by_key(|&(c, _)| c);
                v
            };
            spanning.push((p, v));
        }
    }
    Ok(spanning)
}

/// Derived subalgebra of the closure of `generators`, using brackets against
/// the generators only — equivalent to all pairs by the same left-normed
/// rewriting that justifies `saturate`, at a fraction of the cost.
pub fn derived_from_generators<B: BracketSpace>(
    space: &B,
    sub: &GradedSubspace,
    generators: &[(Parity, SparseVec)],
) -> Result<GradedSubspace> {
    let rows = sub.rows();
    let mut out =
        GradedSubspace::new(space.sector_dim(Parity::Even), space.sector_dim(Parity::Odd));
    for chunk in rows.chunks(CHUNK) {
        let produced: Vec<(Parity, SparseVec)> = chunk
            .par_iter()
            .flat_map_iter(|(p, v)| {
                generators
                    .iter()
                    .map(move |(q, w)| (p.combine(*q), space.bracket((*p, v), (*q, w))))
            })
            .collect();
        for (p, v) in produced {
            if !v.is_empty() {
                out.insert(p, &v)?;
            }
        }
    }
    Ok(out)
}

fn span_of_brackets<B: BracketSpace>(
    space: &B,
    rows: &[(Parity, SparseVec)],
    pairs: &[(usize, usize)],
) -> Result<GradedSubspace> {
    let mut out =
        GradedSubspace::new(space.sector_dim(Parity::Even), space.sector_dim(Parity::Odd));
    for chunk in pairs.chunks(CHUNK) {
        let produced: Vec<(Parity, SparseVec)> = chunk
            .par_iter()
            .map(|&(i, j)| {
                let (p, ref v) = rows[i];
                let (q, ref w) = rows[j];
                (p.combine(q), space.bracket((p, v), (q, w)))
            })
            .collect();
        for (p, v) in produced {
            if !v.is_empty() {
                out.insert(p, &v)?;
            }
        }
    }
    Ok(out)
}

/// Derived Lie algebra of the even part ℂA_n under the plain commutator:
/// the same substitution as in `group_algebra_derived`, now without signs
/// and with conjugators generating the alternating group.
pub fn even_group_algebra_derived(table: &PermTable) -> Result<GradedSubspace> {
    let n = table.n();
    let mut out =
        GradedSubspace::new(table.sector_dim(Parity::Even), table.sector_dim(Parity::Odd));
    let mut conjugators = Vec::new();
    for i in 0..n.saturating_sub(2) {
        // consecutive 3-cycles generate A_n
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.swap(i, i + 1);
        images.swap(i + 1, i + 2);
        conjugators.push(table.global_index(&Permutation::from_images(images)?));
    }
    for h in conjugators {
        let h_inv = table.inverse(h);
        for a in 0..table.size() as u32 {
            if table.parity(a) == Parity::Odd {
                continue;
            }
            let conj = table.compose(table.compose(h, a), h_inv);
            if conj == a {
                continue;
            }
            let mut v = vec![
                (table.coord(a), Scalar::one()),
                (table.coord(conj), -&Scalar::one()),
            ];
            v.sort_by_key(|&(c, _)| c);
            out.insert(Parity::Even, &v)?;
        }
    }
    Ok(out)
}
