//! Young's seminormal realization of the irreducible S_n-modules over ℚ:
//! generator matrices, arbitrary permutation images, Jucys–Murphy elements,
//! and the sign-twisted isomorphism onto the conjugate shape.

use std::collections::{HashMap, VecDeque};

use num_rational::BigRational;
use num_traits::One;

use crate::combinatorics::{standard_tableaux, ContentVector, Partition, StandardTableau};
use crate::error::{Error, Result};
use crate::exactlinalg::{inverse, ExactMatrix, Scalar};
use crate::perm::Permutation;

/// The module S^λ in the basis of standard tableaux, ordered by content
/// vector. All matrices are rational; Jucys–Murphy elements act diagonally.
#[derive(Clone, Debug)]
pub struct SeminormalRep {
    shape: Partition,
    basis: Vec<StandardTableau>,
    alphas: Vec<ContentVector>,
    index: HashMap<ContentVector, usize>,
    gens: Vec<ExactMatrix>,
}

/// Matrices of the adjacent transpositions on S^λ.
///
/// The generator swapping k+1 and k+2 acts on the basis vector of a tableau T
/// with content gap d = α_{k+2}(T) − α_{k+1}(T) by: fixing it up to sign when
/// |d| = 1, and otherwise mixing it with the swapped tableau via the entries
/// 1/d on the diagonal and 1 (from the d > 0 side) or 1 − 1/d² (from the
/// d < 0 side) off it. Each 2×2 block squares to the identity.
pub fn seminormal_rep(shape: &Partition) -> SeminormalRep {
    let basis = standard_tableaux(shape);
    let alphas: Vec<ContentVector> = basis.iter().map(|t| t.content_vector()).collect();
    let index: HashMap<ContentVector, usize> =
        alphas.iter().cloned().enumerate().map(|(t, a)| (a, t)).collect();
    let n = shape.n();
    let f = basis.len();
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let mut m = ExactMatrix::zeros(f, f);
        for t in 0..f {
            let d = alphas[t][i + 1] - alphas[t][i];
            match d {
                1 => m.set(t, t, Scalar::one()),
                -1 => m.set(t, t, Scalar::from_integer(-1)),
                _ => {
                    m.set(t, t, Scalar::from_ratio(1, d));
                    let mut swapped = alphas[t].clone();
                    swapped.swap(i, i + 1);
                    let u = index[&swapped];
                    let off = if d > 0 {
                        Scalar::one()
                    } else {
                        Scalar::from_ratio(d * d - 1, d * d)
                    };
                    m.set(u, t, off);
                }
            }
        }
        gens.push(m);
    }
    SeminormalRep { shape: shape.clone(), basis, alphas, index, gens }
}

impl SeminormalRep {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[StandardTableau] {
        &self.basis
    }

    pub fn tableau(&self, t: usize) -> &StandardTableau {
        &self.basis[t]
    }

    pub fn alpha(&self, t: usize) -> &[i64] {
        &self.alphas[t]
    }

    pub fn index_of(&self, alpha: &[i64]) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    pub fn gens(&self) -> &[ExactMatrix] {
        &self.gens
    }

    /// Matrix of the adjacent transposition swapping i+1 and i+2 (0-based i).
    pub fn gen(&self, i: usize) -> &ExactMatrix {
        &self.gens[i]
    }

    /// Image of an arbitrary permutation, as the product of generator
    /// matrices along an adjacent-transposition word.
    pub fn rep_of_permutation(&self, sigma: &Permutation) -> Result<ExactMatrix> {
        if sigma.n() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "permutation on {} letters fed to a representation of S_{}",
                sigma.n(),
                self.n()
            )));
        }
        let mut m = ExactMatrix::identity(self.dim());
        for i in sigma.adjacent_word() {
            m = &m * &self.gens[i];
        }
        Ok(m)
    }

    /// L_j = Σ_{i<j} (i j), summed honestly over transposition images
    /// (1-based j). L_1 = 0; each L_j is diagonal with entries α_j(T).
    pub fn jucys_murphy(&self, j: usize) -> Result<ExactMatrix> {
        if j == 0 || j > self.n() {
            return Err(Error::InvalidArgument(format!(
                "Jucys–Murphy index {j} out of range 1..={}",
                self.n()
            )));
        }
        let mut m = ExactMatrix::zeros(self.dim(), self.dim());
        for i in 0..j - 1 {
            let t = Permutation::transposition(self.n(), i, j - 1);
            m = &m + &self.rep_of_permutation(&t)?;
        }
        Ok(m)
    }
}

/// The sign-twisted isomorphism φ: S^λ → S^{λ′}, satisfying
/// φ·S^λ(s) = −S^{λ′}(s)·φ on every generator. Its matrix sends the basis
/// vector of T to ε(T) times the basis vector of the transposed tableau.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    pub source: Partition,
    pub target: Partition,
    pub matrix: ExactMatrix,
    /// c with φ^{λ′}∘φ^λ = c·id; 1 for conjugate pairs (the lex-smaller
    /// shape carries the inverse matrix), a reported rational for λ = λ′.
    pub selfsquare: BigRational,
}

fn negate(alpha: &[i64]) -> ContentVector {
    alpha.iter().map(|&x| -x).collect()
}

/// Builds φ^λ by anchoring ε = 1 on the first basis tableau of the
/// lex-larger shape of {λ, λ′} and transporting along tableau swaps; the
/// lex-smaller shape gets the inverse matrix, so the pair composes to the
/// identity. For self-conjugate λ the composition square c is reported
/// instead (φ/√c is then an exact involution over ℚ(√c)).
pub fn intertwiner(lambda: &Partition) -> Intertwiner {
    let mate = lambda.conjugate();
    if *lambda < mate {
        let phi = intertwiner(&mate);
        let inv = inverse(&phi.matrix)
            .expect("rational entries")
            .expect("sign-twisted isomorphism is invertible");
        return Intertwiner {
            source: lambda.clone(),
            target: mate,
            matrix: inv,
            selfsquare: BigRational::one(),
        };
    }
    let rep = seminormal_rep(lambda);
    let rep_mate = seminormal_rep(&mate);
    let n = lambda.n();
    let f = rep.dim();
    let mut eps: Vec<Option<BigRational>> = vec![None; f];
    eps[0] = Some(BigRational::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for i in 0..n.saturating_sub(1) {
            let d = rep.alpha(t)[i + 1] - rep.alpha(t)[i];
            if d.abs() < 2 {
                continue;
            }
            let mut swapped = rep.alpha(t).to_vec();
            swapped.swap(i, i + 1);
            let u = rep.index_of(&swapped).unwrap();
            if eps[u].is_some() {
                continue;
            }
            // mirror the edge in the conjugate basis (contents negate there)
            let tm = rep_mate.index_of(&negate(rep.alpha(t))).unwrap();
            let um = rep_mate.index_of(&negate(&swapped)).unwrap();
            let down = rep.gen(i).at(u, t).as_rational().unwrap();
            let across = rep_mate.gen(i).at(um, tm).as_rational().unwrap();
            let base = eps[t].clone().unwrap();
            eps[u] = Some(-(&base * across / down));
            queue.push_back(u);
        }
    }
    let mut matrix = ExactMatrix::zeros(rep_mate.dim(), f);
    for t in 0..f {
        let row = rep_mate.index_of(&negate(rep.alpha(t))).unwrap();
        let e = eps[t].clone().expect("tableau swap graph is connected");
        matrix.set(row, t, Scalar::from_rational(e));
    }
    let selfsquare = if *lambda == mate {
        let sq = &matrix * &matrix;
        let c = sq.at(0, 0).as_rational().unwrap().clone();
        let scaled = ExactMatrix::identity(f).scale(&Scalar::from_rational(c.clone()));
        assert_eq!(sq, scaled, "self-conjugate composition square must be scalar");
        c
    } else {
        BigRational::one()
    };
    Intertwiner { source: lambda.clone(), target: mate, matrix, selfsquare }
}

#[cfg(test)]
mod tests {
    use num_traits::Signed;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::combinatorics::partitions;
    use crate::exactlinalg::{kernel, squarefree_core};
    use crate::perm::enumerate;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(num: i64, den: i64) -> Scalar {
        Scalar::from_ratio(num, den)
    }

    #[test]
    fn one_row_is_trivial() {
        let rep = seminormal_rep(&p(&[5]));
        assert_eq!(rep.dim(), 1);
        for g in rep.gens() {
            assert_eq!(*g, ExactMatrix::identity(1));
        }
        for j in 1..=5 {
            let jm = rep.jucys_murphy(j).unwrap();
            assert_eq!(*jm.at(0, 0), Scalar::from_integer(j as i64 - 1));
        }
    }

    #[test]
    fn two_one_matrices() {
        let rep = seminormal_rep(&p(&[2, 1]));
        let s1 = rep.gen(0);
        assert_eq!(*s1.at(0, 0), q(-1, 1));
        assert_eq!(*s1.at(1, 1), q(1, 1));
        assert!(s1.at(0, 1).is_zero() && s1.at(1, 0).is_zero());
        let s2 = rep.gen(1);
        assert_eq!(*s2.at(0, 0), q(1, 2));
        assert_eq!(*s2.at(1, 1), q(-1, 2));
        assert_eq!(*s2.at(0, 1), q(3, 4));
        assert_eq!(*s2.at(1, 0), q(1, 1));
        assert_eq!(&(s2 * s2), &ExactMatrix::identity(2));
    }

    #[test]
    fn coxeter_relations_small() {
        for n in 2..=6 {
            for lambda in partitions(n).unwrap() {
                let rep = seminormal_rep(&lambda);
                let id = ExactMatrix::identity(rep.dim());
                for (i, g) in rep.gens().iter().enumerate() {
                    assert_eq!(&(g * g), &id, "involution fails at {lambda}, gen {i}");
                }
                for i in 0..rep.gens().len().saturating_sub(1) {
                    let a = rep.gen(i);
                    let b = rep.gen(i + 1);
                    assert_eq!(&(&(a * b) * a), &(&(b * a) * b), "braid fails at {lambda}");
                }
                for i in 0..rep.gens().len() {
                    for j in i + 2..rep.gens().len() {
                        let a = rep.gen(i);
                        let b = rep.gen(j);
                        assert_eq!(&(a * b), &(b * a), "distant gens fail at {lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_images_multiply() {
        let rep = seminormal_rep(&p(&[3, 1]));
        let id = rep.rep_of_permutation(&Permutation::identity(4)).unwrap();
        assert_eq!(id, ExactMatrix::identity(3));
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let all = enumerate(4);
        for _ in 0..25 {
            let a = all.choose(&mut rng).unwrap();
            let b = all.choose(&mut rng).unwrap();
            let lhs = rep.rep_of_permutation(&a.compose(b)).unwrap();
            let rhs = &rep.rep_of_permutation(a).unwrap() * &rep.rep_of_permutation(b).unwrap();
            assert_eq!(lhs, rhs, "image of {a}∘{b}");
        }
        assert!(rep.rep_of_permutation(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn long_transposition_expands() {
        let rep = seminormal_rep(&p(&[2, 1]));
        let t13 = rep.rep_of_permutation(&Permutation::transposition(3, 0, 2)).unwrap();
        let expanded = &(&(rep.gen(0) * rep.gen(1)) * rep.gen(0)) * &ExactMatrix::identity(2);
        assert_eq!(t13, expanded);
    }

    #[test]
    fn jucys_murphy_spectra() {
        for n in 2..=6 {
            for lambda in partitions(n).unwrap() {
                let rep = seminormal_rep(&lambda);
                assert!(rep.jucys_murphy(1).unwrap().is_zero());
                for j in 2..=n {
                    let jm = rep.jucys_murphy(j).unwrap();
                    for t in 0..rep.dim() {
                        for u in 0..rep.dim() {
                            let expected = if t == u {
                                Scalar::from_integer(rep.alpha(t)[j - 1])
                            } else {
                                Scalar::zero()
                            };
                            assert_eq!(*jm.at(u, t), expected, "L_{j} at {lambda}");
                        }
                    }
                }
            }
        }
        let rep = seminormal_rep(&p(&[2, 1]));
        let l3 = rep.jucys_murphy(3).unwrap();
        assert_eq!(*l3.at(0, 0), q(1, 1));
        assert_eq!(*l3.at(1, 1), q(-1, 1));
        assert!(rep.jucys_murphy(0).is_err());
        assert!(rep.jucys_murphy(4).is_err());
    }

    /// Basis vectors sharing the content of the box holding n span a
    /// coordinate subspace on which the first n−2 generators act exactly by
    /// the matrices of the smaller shape.
    #[test]
    fn restriction_is_coordinatewise() {
        for n in 3..=6 {
            for lambda in partitions(n).unwrap() {
                let rep = seminormal_rep(&lambda);
                for (mu, k) in lambda.covers() {
                    let sub = seminormal_rep(&mu);
                    let idx: Vec<usize> =
                        (0..rep.dim()).filter(|&t| rep.alpha(t)[n - 1] == k).collect();
                    assert_eq!(idx.len(), sub.dim(), "λ={lambda} μ={mu}");
                    // the λ-order restricted to the block is the μ-order
                    for (s, &t) in idx.iter().enumerate() {
                        assert_eq!(rep.alpha(t)[..n - 1], *sub.alpha(s));
                    }
                    for i in 0..n - 2 {
                        let big = rep.gen(i);
                        for (a, &ta) in idx.iter().enumerate() {
                            for (b, &tb) in idx.iter().enumerate() {
                                assert_eq!(big.at(ta, tb), sub.gen(i).at(a, b));
                            }
                            for t in 0..rep.dim() {
                                if !idx.contains(&t) {
                                    assert!(big.at(t, ta).is_zero() && big.at(ta, t).is_zero());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn intertwiner_one_dimensional() {
        let phi = intertwiner(&p(&[3]));
        assert_eq!(phi.target, p(&[1, 1, 1]));
        assert_eq!(*phi.matrix.at(0, 0), q(1, 1));
        assert!(phi.selfsquare.is_one());
        let back = intertwiner(&p(&[1, 1, 1]));
        assert_eq!(&(&back.matrix * &phi.matrix), &ExactMatrix::identity(1));
    }

    #[test]
    fn intertwiner_two_one() {
        let phi = intertwiner(&p(&[2, 1]));
        assert_eq!(phi.selfsquare, BigRational::new((-3).into(), 4.into()));
        assert_eq!(*phi.matrix.at(1, 0), q(1, 1));
        assert_eq!(*phi.matrix.at(0, 1), q(-3, 4));
        assert!(phi.matrix.at(0, 0).is_zero() && phi.matrix.at(1, 1).is_zero());
    }

    #[test]
    fn intertwiner_hook_field() {
        let phi = intertwiner(&p(&[3, 1, 1]));
        assert!(phi.selfsquare.is_positive());
        let (_, d) = squarefree_core(&(phi.selfsquare.numer() * phi.selfsquare.denom()));
        assert_eq!(d, 5.into(), "composition square should live in ℚ(√5)");
    }

    #[test]
    fn intertwining_law_everywhere() {
        for n in 2..=6 {
            for lambda in partitions(n).unwrap() {
                let phi = intertwiner(&lambda);
                let rep = seminormal_rep(&lambda);
                let rep_mate = seminormal_rep(&lambda.conjugate());
                for i in 0..n - 1 {
                    let lhs = &phi.matrix * rep.gen(i);
                    let rhs = -&(rep_mate.gen(i) * &phi.matrix);
                    assert_eq!(lhs, rhs, "law fails at {lambda}, gen {i}");
                }
                // signed permutation structure onto transposed tableaux
                for t in 0..rep.dim() {
                    let target = rep_mate.index_of(&negate(rep.alpha(t))).unwrap();
                    for u in 0..rep_mate.dim() {
                        assert_eq!(phi.matrix.at(u, t).is_zero(), u != target);
                    }
                }
                let back = intertwiner(&lambda.conjugate());
                let comp = &back.matrix * &phi.matrix;
                let c = Scalar::from_rational(phi.selfsquare.clone());
                assert_eq!(comp, ExactMatrix::identity(rep.dim()).scale(&c));
                if lambda != lambda.conjugate() {
                    assert!(phi.selfsquare.is_one());
                }
            }
        }
    }

    /// Independent oracle: the space of sign-twisted intertwiners, found by a
    /// raw nullspace computation, is one-dimensional and contains φ.
    #[test]
    fn intertwiner_matches_nullspace_oracle() {
        for lambda in [p(&[2, 1]), p(&[3, 1]), p(&[2, 2])] {
            let rep = seminormal_rep(&lambda);
            let rep_mate = seminormal_rep(&lambda.conjugate());
            let (fm, f) = (rep_mate.dim(), rep.dim());
            let gens = rep.gens().len();
            // unknowns: X with X·S(s_i) + S'(s_i)·X = 0, flattened row-major
            let mut constraints = ExactMatrix::zeros(gens * fm * f, fm * f);
            for (g, (s, sm)) in rep.gens().iter().zip(rep_mate.gens()).enumerate() {
                for i in 0..fm {
                    for j in 0..f {
                        let eqn = (g * fm + i) * f + j;
                        for c in 0..f {
                            let cur = constraints.at(eqn, i * f + c).clone();
                            constraints.set(eqn, i * f + c, &cur + s.at(c, j));
                        }
                        for r in 0..fm {
                            let cur = constraints.at(eqn, r * f + j).clone();
                            constraints.set(eqn, r * f + j, &cur + sm.at(i, r));
                        }
                    }
                }
            }
            let null = kernel(&constraints).unwrap();
            assert_eq!(null.len(), 1, "intertwiner space at {lambda}");
            let phi = intertwiner(&lambda);
            // φ flattened must be proportional to the nullspace vector
            let flat: Vec<Scalar> = phi.matrix.flatten().to_vec();
            let pivot = null[0].iter().position(|x| !x.is_zero()).unwrap();
            let ratio = &flat[pivot] / &null[0][pivot];
            for (a, b) in flat.iter().zip(&null[0]) {
                assert_eq!(*a, &ratio * b);
            }
        }
    }
}
