//! Centers of group superalgebras and of bracket-closed subspaces.
//!
//! A finite group with a parity homomorphism yields a superalgebra ℂG. Its
//! ordinary center is cut out by the transport system c_{gug⁻¹} = c_u over
//! group generators g; the super center twists the transport by the sign
//! (−1)^{z̄ḡ}. Solving the system is a signed orbit traversal: an orbit
//! whose cycle product forces c = −c contributes nothing, every other orbit
//! contributes one basis vector.

use crate::error::{Error, Result};
use crate::exactlinalg::{kernel, ExactMatrix, Scalar, SparseVec};
use crate::liesuper::closure::{BracketSpace, GradedSubspace};
use crate::perm::{Parity, Permutation, PermTable};

enum Backing {
    Perm(PermTable),
    Dihedral { n: usize },
}

/// A finite group given by multiplication tables plus a parity homomorphism.
/// Elements are indexed 0..size; each parity sector gets its own contiguous
/// coordinates so spans live in `GradedSubspace`.
pub struct FiniteSuperGroup {
    backing: Backing,
    generators: Vec<u32>,
    sector: [Vec<u32>; 2],
    coords: Vec<u32>,
}

impl FiniteSuperGroup {
    /// Symmetric group on n letters with the sign grading. Coordinates agree
    /// with `PermTable::new(n)`, so vectors are interchangeable with closure
    /// output.
    pub fn symmetric(n: usize) -> Result<FiniteSuperGroup> {
        if n == 0 {
            return Err(Error::InvalidArgument("symmetric group needs n ≥ 1".into()));
        }
        let table = PermTable::new(n);
        let mut generators = Vec::new();
        if n >= 2 {
            generators.push(table.global_index(&Permutation::transposition(n, 0, 1)));
        }
        if n >= 3 {
            let images: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
            generators.push(table.global_index(&Permutation::from_images(images)?));
        }
        let mut sector = [Vec::new(), Vec::new()];
        let mut coords = vec![0u32; table.size()];
        for g in 0..table.size() as u32 {
            let p = table.parity(g);
            coords[g as usize] = table.coord(g);
            sector[p as usize].push(g);
        }
        Ok(FiniteSuperGroup { backing: Backing::Perm(table), generators, sector, coords })
    }

    /// Dihedral group of order 2n: rotations r^a at indices a, reflections
    /// s·r^a at indices n + a. Reflections are odd.
    pub fn dihedral(n: usize) -> Result<FiniteSuperGroup> {
        if n == 0 {
            return Err(Error::InvalidArgument("dihedral group needs n ≥ 1".into()));
        }
        let mut generators = vec![n as u32];
        if n > 1 {
            generators.push(1);
        }
        let sector = [(0..n as u32).collect(), (n as u32..2 * n as u32).collect()];
        let coords = (0..n as u32).chain(0..n as u32).collect();
        Ok(FiniteSuperGroup { backing: Backing::Dihedral { n }, generators, sector, coords })
    }

    pub fn size(&self) -> usize {
        match &self.backing {
            Backing::Perm(t) => t.size(),
            Backing::Dihedral { n } => 2 * n,
        }
    }

    pub fn mult(&self, a: u32, b: u32) -> u32 {
        match &self.backing {
            Backing::Perm(t) => t.compose(a, b),
            Backing::Dihedral { n } => {
                let n = *n as u32;
                let (t, x) = (a / n, a % n);
                let (u, y) = (b / n, b % n);
                // r^x s^u = s^u r^{±x}: conjugating a rotation past a
                // reflection inverts it
                let x = if u == 1 { (n - x) % n } else { x };
                ((t + u) % 2) * n + (x + y) % n
            }
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        match &self.backing {
            Backing::Perm(t) => t.inverse(a),
            Backing::Dihedral { n } => {
                let n = *n as u32;
                if a / n == 1 {
                    a
                } else {
                    (n - a % n) % n
                }
            }
        }
    }

    pub fn parity(&self, a: u32) -> Parity {
        match &self.backing {
            Backing::Perm(t) => t.parity(a),
            Backing::Dihedral { n } => {
                if (a as usize) < *n {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            }
        }
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn sector_dim(&self, p: Parity) -> usize {
        self.sector[p as usize].len()
    }

    pub fn coord(&self, g: u32) -> u32 {
        self.coords[g as usize]
    }

    pub fn global_of(&self, p: Parity, coord: u32) -> u32 {
        self.sector[p as usize][coord as usize]
    }
}

fn transported_center(group: &FiniteSuperGroup, twisted: bool) -> Result<GradedSubspace> {
    let mut out = GradedSubspace::new(
        group.sector_dim(Parity::Even),
        group.sector_dim(Parity::Odd),
    );
    for sector in [Parity::Even, Parity::Odd] {
        let dim = group.sector_dim(sector);
        // signed orbit values: 0 unvisited, ±1 assigned
        let mut value = vec![0i8; group.size()];
        for seed_coord in 0..dim as u32 {
            let seed = group.global_of(sector, seed_coord);
            if value[seed as usize] != 0 {
                continue;
            }
            value[seed as usize] = 1;
            let mut orbit = vec![seed];
            let mut stack = vec![seed];
            let mut alive = true;
            while let Some(u) = stack.pop() {
                let vu = value[u as usize];
                for &g in group.generators() {
                    let conj = group.mult(group.mult(g, u), group.inv(g));
                    let sign = if twisted
                        && sector == Parity::Odd
                        && group.parity(g) == Parity::Odd
                    {
                        -vu
                    } else {
                        vu
                    };
                    let slot = &mut value[conj as usize];
                    if *slot == 0 {
                        *slot = sign;
                        orbit.push(conj);
                        stack.push(conj);
                    } else if *slot != sign {
                        alive = false;
                    }
                }
            }
            if alive {
                let mut vec: SparseVec = orbit
                    .iter()
                    .map(|&u| {
                        let c = Scalar::from_integer(value[u as usize] as i64);
                        (group.coord(u), c)
                    })
                    .collect();
                vec.sort_by_key(|&(c, _)| c);
                out.insert(sector, &vec)?;
            }
        }
    }
    Ok(out)
}

/// Center of ℂG as an ordinary algebra (span of class sums), split by
/// parity sector.
pub fn ordinary_center(group: &FiniteSuperGroup) -> Result<GradedSubspace> {
    transported_center(group, false)
}

/// Center of ℂG as a superalgebra: zg = (−1)^{z̄ḡ}gz for all g.
pub fn super_center(group: &FiniteSuperGroup) -> Result<GradedSubspace> {
    transported_center(group, true)
}

/// Superblock census of ℂG. Each block contributes one even dimension to
/// the super center; queer blocks additionally put one odd dimension into
/// the ordinary center.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockCensus {
    pub blocks: usize,
    pub num_m: usize,
    pub num_q: usize,
}

pub fn block_census(group: &FiniteSuperGroup) -> Result<BlockCensus> {
    let ordinary = ordinary_center(group)?;
    let graded = super_center(group)?;
    let blocks = graded.even_dim();
    let num_q = ordinary.odd_dim();
    if num_q > blocks {
        return Err(Error::Inconsistency(format!(
            "{num_q} queer blocks among {blocks} total"
        )));
    }
    Ok(BlockCensus { blocks, num_m: blocks - num_q, num_q })
}

/// Elements of a bracket-closed subspace that super-commute with every
/// generator — by the Jacobi identity they then super-commute with the whole
/// closure of those generators.
pub fn subspace_center<B: BracketSpace>(
    space: &B,
    sub: &GradedSubspace,
    generators: &[(Parity, SparseVec)],
) -> Result<GradedSubspace> {
    let mut out =
        GradedSubspace::new(space.sector_dim(Parity::Even), space.sector_dim(Parity::Odd));
    for sector in [Parity::Even, Parity::Odd] {
        let rows: Vec<&SparseVec> = sub.sector(sector).rows().iter().collect();
        if rows.is_empty() {
            continue;
        }
        // constraint matrix: one block of rows per generator, one column per
        // basis vector of the sector
        let mut blocks: Vec<ExactMatrix> = Vec::new();
        for (q, w) in generators {
            let ambient = space.sector_dim(sector.combine(*q));
            let mut m = ExactMatrix::zeros(ambient, rows.len());
            for (col, v) in rows.iter().enumerate() {
                for (i, c) in space.bracket((sector, v), (*q, w)) {
                    m.set(i as usize, col, c);
                }
            }
            blocks.push(m);
        }
        let total_rows = blocks.iter().map(|b| b.nrows()).sum::<usize>();
        let mut stacked = ExactMatrix::zeros(total_rows, rows.len());
        let mut offset = 0;
        for b in &blocks {
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    stacked.set(offset + i, j, b.at(i, j).clone());
                }
            }
            offset += b.nrows();
        }
        for t in kernel(&stacked)? {
            let mut dense = vec![Scalar::zero(); space.sector_dim(sector)];
            for (i, coeff) in t.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for &(j, ref c) in rows[i] {
                    dense[j as usize] = &dense[j as usize] + &(coeff * c);
                }
            }
            let sparse: SparseVec = dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as u32, c))
                .collect();
            out.insert(sector, &sparse)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::closure::{closure, GroupBracketSpace};
    use crate::liesuper::element::transpositions;

    fn brute_force_class_parities(group: &FiniteSuperGroup) -> (usize, usize) {
        let size = group.size() as u32;
        let mut seen = vec![false; size as usize];
        let (mut even, mut odd) = (0, 0);
        for u in 0..size {
            if seen[u as usize] {
                continue;
            }
            for g in 0..size {
                let c = group.mult(group.mult(g, u), group.inv(g));
                seen[c as usize] = true;
            }
            match group.parity(u) {
                Parity::Even => even += 1,
                Parity::Odd => odd += 1,
            }
        }
        (even, odd)
    }

    #[test]
    fn dihedral_group_laws() {
        for n in [1, 2, 3, 5, 6] {
            let g = FiniteSuperGroup::dihedral(n).unwrap();
            let size = g.size() as u32;
            let id = (0..size).find(|&e| (0..size).all(|a| g.mult(e, a) == a)).unwrap();
            assert_eq!(id, 0);
            for a in 0..size {
                assert_eq!(g.mult(a, g.inv(a)), 0);
                assert_eq!(g.mult(g.inv(a), a), 0);
                for b in 0..size {
                    assert_eq!(
                        g.parity(g.mult(a, b)),
                        g.parity(a).combine(g.parity(b)),
                        "parity homomorphism"
                    );
                    for c in 0..size {
                        assert_eq!(g.mult(g.mult(a, b), c), g.mult(a, g.mult(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn ordinary_center_counts_classes() {
        for n in 2..=5 {
            let g = FiniteSuperGroup::symmetric(n).unwrap();
            let (even, odd) = brute_force_class_parities(&g);
            let z = ordinary_center(&g).unwrap();
            assert_eq!((z.even_dim(), z.odd_dim()), (even, odd), "S_{n}");
        }
        for n in 3..=8 {
            let g = FiniteSuperGroup::dihedral(n).unwrap();
            let (even, odd) = brute_force_class_parities(&g);
            let z = ordinary_center(&g).unwrap();
            assert_eq!((z.even_dim(), z.odd_dim()), (even, odd), "D_{n}");
        }
    }

    #[test]
    fn super_center_has_no_odd_part() {
        for n in 2..=5 {
            let g = FiniteSuperGroup::symmetric(n).unwrap();
            let plain = ordinary_center(&g).unwrap();
            let graded = super_center(&g).unwrap();
            assert_eq!(graded.even_dim(), plain.even_dim());
            assert_eq!(graded.odd_dim(), 0);
        }
        for n in 3..=8 {
            let g = FiniteSuperGroup::dihedral(n).unwrap();
            assert_eq!(super_center(&g).unwrap().odd_dim(), 0);
        }
    }

    #[test]
    fn symmetric_census_matches_module_classification() {
        use crate::combinatorics::classify;
        for n in 2..=6 {
            let g = FiniteSuperGroup::symmetric(n).unwrap();
            let census = block_census(&g).unwrap();
            let table = classify(n).unwrap();
            assert_eq!(census.num_m, table.num_m(), "M blocks at n={n}");
            assert_eq!(census.num_q, table.num_q(), "Q blocks at n={n}");
            assert_eq!(census.blocks, table.representatives().count());
        }
    }

    #[test]
    fn dihedral_census_follows_parity_of_n() {
        assert_eq!(
            block_census(&FiniteSuperGroup::dihedral(5).unwrap()).unwrap(),
            BlockCensus { blocks: 3, num_m: 2, num_q: 1 }
        );
        assert_eq!(
            block_census(&FiniteSuperGroup::dihedral(6).unwrap()).unwrap(),
            BlockCensus { blocks: 4, num_m: 2, num_q: 2 }
        );
        for n in 3..=10 {
            let census = block_census(&FiniteSuperGroup::dihedral(n).unwrap()).unwrap();
            let expected = if n % 2 == 0 {
                BlockCensus { blocks: n / 2 + 1, num_m: n / 2 - 1, num_q: 2 }
            } else {
                BlockCensus { blocks: n / 2 + 1, num_m: n / 2, num_q: 1 }
            };
            assert_eq!(census, expected, "D_{n}");
        }
    }

    #[test]
    fn kernel_center_of_full_algebra_matches_transport() {
        // super-commuting with every transposition is the same condition as
        // membership in the super center of the group algebra
        for n in 2..=4 {
            let table = PermTable::new(n);
            let space = GroupBracketSpace::new(&table);
            let mut full = GradedSubspace::new(
                table.sector_dim(Parity::Even),
                table.sector_dim(Parity::Odd),
            );
            for p in [Parity::Even, Parity::Odd] {
                for i in 0..table.sector_dim(p) as u32 {
                    full.insert(p, &vec![(i, Scalar::one())]).unwrap();
                }
            }
            let gens: Vec<_> =
                transpositions(n).iter().map(|t| t.to_coords(&table).unwrap()).collect();
            let z = subspace_center(&space, &full, &gens).unwrap();
            let g = FiniteSuperGroup::symmetric(n).unwrap();
            let graded = super_center(&g).unwrap();
            assert_eq!(z.even_dim(), graded.even_dim(), "even at n={n}");
            assert_eq!(z.odd_dim(), graded.odd_dim(), "odd at n={n}");
            for (p, v) in graded.rows() {
                assert!(z.contains(p, &v).unwrap());
            }
        }
    }

    #[test]
    fn closure_center_is_intersection_with_super_center() {
        for n in 2..=4 {
            let table = PermTable::new(n);
            let space = GroupBracketSpace::new(&table);
            let gens: Vec<_> =
                transpositions(n).iter().map(|t| t.to_coords(&table).unwrap()).collect();
            let out = closure(&table, &transpositions(n), None, false).unwrap();
            let z = subspace_center(&space, &out.space, &gens).unwrap();

            let g = FiniteSuperGroup::symmetric(n).unwrap();
            let graded = super_center(&g).unwrap();
            // dim(U ∩ W) = dim U + dim W − dim(U + W), per sector
            for p in [Parity::Even, Parity::Odd] {
                let mut sum = GradedSubspace::new(
                    table.sector_dim(Parity::Even),
                    table.sector_dim(Parity::Odd),
                );
                for row in out.space.sector(p).rows() {
                    sum.insert(p, row).unwrap();
                }
                for row in graded.sector(p).rows() {
                    sum.insert(p, row).unwrap();
                }
                let expected = out.space.sector(p).dim() + graded.sector(p).dim()
                    - sum.sector(p).dim();
                assert_eq!(z.sector(p).dim(), expected, "sector {p:?} at n={n}");
                for row in z.sector(p).rows() {
                    assert!(out.space.contains(p, row).unwrap());
                    assert!(graded.contains(p, row).unwrap());
                }
            }
        }
    }
}
