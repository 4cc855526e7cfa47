//! Simple supermodules of the symmetric group algebra: graded irreducibles
//! assembled from Specht pairs, their grading operators and odd involutions,
//! odd and super traces, eigenspace branching one letter down, and the
//! comparison against the group-theoretic dual.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{classify, BlockKind, Partition};
use crate::error::{Error, Result};
use crate::exactlinalg::{inverse, sqrt_extend, EchelonSubspace, ExactMatrix, Scalar};
use crate::liesuper::GroupAlgebraElement;
use crate::perm::{Parity, Permutation};
use crate::specht::{intertwiner, seminormal_rep, SeminormalRep};

/// One graded irreducible, built on the class representative shape.
///
/// For a conjugate pair (the `Q` kind) the underlying space is the direct sum
/// of the two seminormal Specht modules; every permutation then acts by the
/// block-diagonal pair of seminormal matrices, the grading operator is the
/// antidiagonal assembled from the sign-twisted isomorphism and its inverse,
/// and `J = diag(id, -id)` is an odd involution commuting with the action.
/// For a self-conjugate shape (the `M` kind) the space is a single Specht
/// module and the grading is `phi / sqrt(c)` over the quadratic extension
/// determined by the composition square `c`.
pub struct SuperModuleRep {
    shape: Partition,
    kind: BlockKind,
    plus: SeminormalRep,
    minus: Option<SeminormalRep>,
    /// Matrix of the sign-twisted isomorphism from the shape to its conjugate.
    phi: ExactMatrix,
    /// Composition square of `phi` (one for conjugate pairs).
    selfsquare: BigRational,
    grading: ExactMatrix,
    odd_involution: Option<ExactMatrix>,
    gens: Vec<ExactMatrix>,
    dim: usize,
}

/// Image of the sum of all transpositions, with the structural verdict.
pub struct TnImage {
    pub matrix: ExactMatrix,
    pub verdict: TnVerdict,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TnVerdict {
    /// The image is `factor` times the odd involution; `|factor|` is the
    /// content sum of the shape.
    ScalarOfJ { factor: i64 },
    /// The image vanishes (self-conjugate shape, or content sum zero).
    Zero,
}

/// One eigenspace summand in the restriction to one letter fewer.
#[derive(Clone, Debug)]
pub struct BranchSummand {
    /// The literal cover of the shape (not necessarily a representative).
    pub mu: Partition,
    pub residue: i64,
    /// Two when the summand doubles as a pair exchanged by the grading.
    pub multiplicity: usize,
    /// Total dimension of the eigenspace inside the parent.
    pub dim: usize,
    /// Ratio between the restricted sign-twisted map and the cover's own.
    pub intertwiner_scale: BigRational,
}

#[derive(Clone, Debug)]
pub struct BranchReport {
    pub shape: Partition,
    pub summands: Vec<BranchSummand>,
}

/// Builds the graded irreducible labelled by a class representative.
pub fn supermodule(shape: &Partition) -> Result<SuperModuleRep> {
    let n = shape.n();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "graded irreducibles are classified for two letters or more".into(),
        ));
    }
    let table = classify(n)?;
    let entry = table.entry(shape).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "{shape} is not a class representative (use the lex-larger of the conjugate pair)"
        ))
    })?;
    let kind = entry.kind;
    let plus = seminormal_rep(shape);
    let iw = intertwiner(shape);
    let f = plus.dim();
    match kind {
        BlockKind::Q => {
            let minus = seminormal_rep(&shape.conjugate());
            let phi_inv = inverse(&iw.matrix)?
                .ok_or_else(|| Error::Inconsistency("sign-twisted map is singular".into()))?;
            let grading =
                ExactMatrix::from_blocks(None, Some(&phi_inv), Some(&iw.matrix), None, f, f, f, f);
            let id = ExactMatrix::identity(f);
            let neg_id = -&id;
            let j = ExactMatrix::from_blocks(Some(&id), None, None, Some(&neg_id), f, f, f, f);
            let gens = (0..n - 1)
                .map(|i| {
                    ExactMatrix::from_blocks(
                        Some(plus.gen(i)),
                        None,
                        None,
                        Some(minus.gen(i)),
                        f,
                        f,
                        f,
                        f,
                    )
                })
                .collect();
            Ok(SuperModuleRep {
                shape: shape.clone(),
                kind,
                plus,
                minus: Some(minus),
                phi: iw.matrix,
                selfsquare: iw.selfsquare,
                grading,
                odd_involution: Some(j),
                gens,
                dim: 2 * f,
            })
        }
        BlockKind::M => {
            let root = sqrt_extend(&iw.selfsquare)?;
            let grading = iw.matrix.scale(&root.inv());
            Ok(SuperModuleRep {
                shape: shape.clone(),
                kind,
                gens: plus.gens().to_vec(),
                plus,
                minus: None,
                phi: iw.matrix,
                selfsquare: iw.selfsquare,
                grading,
                odd_involution: None,
                dim: f,
            })
        }
    }
}

impl SuperModuleRep {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grading(&self) -> &ExactMatrix {
        &self.grading
    }

    pub fn odd_involution(&self) -> Option<&ExactMatrix> {
        self.odd_involution.as_ref()
    }

    /// Action of the i-th adjacent transposition.
    pub fn gen(&self, i: usize) -> &ExactMatrix {
        &self.gens[i]
    }

    pub fn gens(&self) -> &[ExactMatrix] {
        &self.gens
    }

    pub fn action(&self, sigma: &Permutation) -> Result<ExactMatrix> {
        if sigma.n() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "permutation on {} letters acting on a module for {} letters",
                sigma.n(),
                self.n()
            )));
        }
        let a = self.plus.rep_of_permutation(sigma)?;
        match &self.minus {
            Some(minus) => {
                let b = minus.rep_of_permutation(sigma)?;
                let f = self.plus.dim();
                Ok(ExactMatrix::from_blocks(Some(&a), None, None, Some(&b), f, f, f, f))
            }
            None => Ok(a),
        }
    }

    /// Linear extension of the action to group algebra elements.
    pub fn element_action(&self, theta: &GroupAlgebraElement) -> Result<ExactMatrix> {
        if theta.n() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "element of the algebra of S_{} acting on a module for {} letters",
                theta.n(),
                self.n()
            )));
        }
        let mut acc = ExactMatrix::zeros(self.dim, self.dim);
        for (p, c) in theta.terms() {
            acc = &acc + &self.action(p)?.scale(c);
        }
        Ok(acc)
    }

    /// Conjugation by the grading operator, kept rational for both kinds:
    /// for a self-conjugate shape this is `phi θ phi / c`.
    pub fn grading_conjugate(&self, theta: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_square(theta)?;
        match self.kind {
            BlockKind::Q => Ok(&(&self.grading * theta) * &self.grading),
            BlockKind::M => {
                let twisted = &(&self.phi * theta) * &self.phi;
                Ok(twisted.scale(&Scalar::from_rational(self.selfsquare.recip())))
            }
        }
    }

    /// Even and odd components of an operator.
    pub fn parity_parts(&self, theta: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
        let gc = self.grading_conjugate(theta)?;
        let half = Scalar::from_ratio(1, 2);
        Ok(((theta + &gc).scale(&half), (theta - &gc).scale(&half)))
    }

    /// Parity of a homogeneous operator; the zero operator counts as even.
    pub fn operator_parity(&self, theta: &ExactMatrix) -> Result<Parity> {
        let gc = self.grading_conjugate(theta)?;
        if gc == *theta {
            Ok(Parity::Even)
        } else if gc == -theta {
            Ok(Parity::Odd)
        } else {
            Err(Error::InvalidArgument("operator is not parity-homogeneous".into()))
        }
    }

    /// Half the trace of `J θ`, defined on operators commuting with `J`.
    pub fn odd_trace(&self, theta: &ExactMatrix) -> Result<Scalar> {
        let j = self.odd_involution.as_ref().ok_or_else(|| {
            Error::InvalidArgument(format!(
                "odd trace needs an odd involution, absent for self-conjugate {}",
                self.shape
            ))
        })?;
        self.check_square(theta)?;
        let jt = j * theta;
        if jt != theta * j {
            return Err(Error::NotInQueerCommutant(format!("on the module of {}", self.shape)));
        }
        Ok(&jt.trace() * &Scalar::from_ratio(1, 2))
    }

    /// Trace against the grading operator.
    pub fn supertrace(&self, theta: &ExactMatrix) -> Result<Scalar> {
        self.check_square(theta)?;
        match self.kind {
            BlockKind::Q => Ok((&self.grading * theta).trace()),
            BlockKind::M => {
                let root = sqrt_extend(&self.selfsquare)?;
                Ok(&(&self.phi * theta).trace() * &root.inv())
            }
        }
    }

    /// Rational vanishing test for the supertrace; never builds the extension.
    pub fn supertrace_is_zero(&self, theta: &ExactMatrix) -> Result<bool> {
        self.check_square(theta)?;
        let against = match self.kind {
            BlockKind::Q => &self.grading,
            BlockKind::M => &self.phi,
        };
        Ok((against * theta).trace().is_zero())
    }

    /// Image of the sum of all transpositions, computed as the total of the
    /// Jucys–Murphy operators, with the scalar-of-J / zero verdict.
    pub fn tn_image(&self) -> Result<TnImage> {
        let total = |rep: &SeminormalRep| -> Result<ExactMatrix> {
            let mut m = ExactMatrix::zeros(rep.dim(), rep.dim());
            for j in 1..=rep.n() {
                m = &m + &rep.jucys_murphy(j)?;
            }
            Ok(m)
        };
        let matrix = match &self.minus {
            Some(minus) => {
                let f = self.plus.dim();
                ExactMatrix::from_blocks(
                    Some(&total(&self.plus)?),
                    None,
                    None,
                    Some(&total(minus)?),
                    f,
                    f,
                    f,
                    f,
                )
            }
            None => total(&self.plus)?,
        };
        let verdict = match self.kind {
            BlockKind::M => {
                if !matrix.is_zero() {
                    return Err(Error::Inconsistency(format!(
                        "transposition sum acts nontrivially on self-conjugate {}",
                        self.shape
                    )));
                }
                TnVerdict::Zero
            }
            BlockKind::Q => {
                let res = self.shape.residue_sum();
                let j = self.odd_involution.as_ref().unwrap();
                if res == 0 {
                    if !matrix.is_zero() {
                        return Err(Error::Inconsistency(format!(
                            "transposition sum nonzero on {} despite zero content sum",
                            self.shape
                        )));
                    }
                    TnVerdict::Zero
                } else {
                    let scaled = j.scale(&Scalar::from_integer(res));
                    if matrix == scaled {
                        TnVerdict::ScalarOfJ { factor: res }
                    } else if matrix == -&scaled {
                        TnVerdict::ScalarOfJ { factor: -res }
                    } else {
                        return Err(Error::Inconsistency(format!(
                            "transposition sum on {} is not a multiple of the odd involution",
                            self.shape
                        )));
                    }
                }
            }
        };
        Ok(TnImage { matrix, verdict })
    }

    /// Decomposes the module under the subgroup fixing the last letter into
    /// eigenspaces of the top Jucys–Murphy operator, certifying each summand
    /// by exact equality of restricted matrices with the cover's seminormal
    /// representation and by proportionality of the restricted sign-twisted
    /// map. Conjugate-pair shapes keep every cover; self-conjugate shapes
    /// keep covers of non-negative residue (the mirror pair is absorbed).
    pub fn branch(&self) -> Result<BranchReport> {
        let n = self.n();
        if n < 3 {
            return Err(Error::InvalidArgument(
                "branching needs at least three letters".into(),
            ));
        }
        check_label_blocks(&self.plus)?;
        if let Some(minus) = &self.minus {
            check_label_blocks(minus)?;
        }
        let mut summands = Vec::new();
        for (mu, k) in self.shape.covers() {
            let mate = mu.conjugate();
            let child = seminormal_rep(&mu);
            let subset = content_subset(&self.plus, k);
            match self.kind {
                BlockKind::Q => {
                    let minus = self.minus.as_ref().unwrap();
                    let mirror = content_subset(minus, -k);
                    check_restriction(&self.plus, &subset, &child)?;
                    check_restriction(minus, &mirror, &seminormal_rep(&mate))?;
                    let scale = self.restricted_phi_scale(&mirror, &subset, &mu)?;
                    let doubled = mu == mate;
                    summands.push(BranchSummand {
                        multiplicity: if doubled { 2 } else { 1 },
                        dim: 2 * child.dim(),
                        mu,
                        residue: k,
                        intertwiner_scale: scale,
                    });
                }
                BlockKind::M => {
                    if k < 0 {
                        continue;
                    }
                    let mirror = content_subset(&self.plus, -k);
                    check_restriction(&self.plus, &subset, &child)?;
                    if k > 0 {
                        check_restriction(&self.plus, &mirror, &seminormal_rep(&mate))?;
                    }
                    let scale = self.restricted_phi_scale(&mirror, &subset, &mu)?;
                    summands.push(BranchSummand {
                        multiplicity: 1,
                        dim: if k == 0 { child.dim() } else { 2 * child.dim() },
                        mu,
                        residue: k,
                        intertwiner_scale: scale,
                    });
                }
            }
        }
        let mut seen = BTreeSet::new();
        for s in &summands {
            if !seen.insert(s.residue) {
                return Err(Error::Inconsistency(format!(
                    "repeated residue {} in the restriction of {}",
                    s.residue, self.shape
                )));
            }
        }
        let covered: usize = summands.iter().map(|s| s.dim).sum();
        if covered != self.dim {
            return Err(Error::Inconsistency(format!(
                "restriction of {} covers dimension {covered} of {}",
                self.shape, self.dim
            )));
        }
        Ok(BranchReport { shape: self.shape.clone(), summands })
    }

    /// Whether the module is evenly isomorphic to its group-theoretic dual.
    /// The unique (up to scale) ungraded dual pairing is diagonal in the
    /// seminormal basis; the answer is whether it is symmetric or skewed by
    /// the sign-twisted map, and matches the parity of the box count above
    /// the main diagonal.
    pub fn group_dual_test(&self) -> Result<bool> {
        if self.kind != BlockKind::M {
            return Err(Error::InvalidArgument(format!(
                "dual comparison is graded only for self-conjugate shapes, not {}",
                self.shape
            )));
        }
        let d = seminormal_dual_form(&self.plus)?;
        let f = self.plus.dim();
        let (mut plus_ok, mut minus_ok) = (true, true);
        for r in 0..f {
            for c in 0..f {
                let lhs = d.at(r, r) * self.phi.at(r, c);
                let rhs = self.phi.at(c, r) * d.at(c, c);
                if lhs != rhs {
                    plus_ok = false;
                }
                if lhs != -&rhs {
                    minus_ok = false;
                }
            }
        }
        match (plus_ok, minus_ok) {
            (true, false) => Ok(true),
            (false, true) => Ok(false),
            _ => Err(Error::Inconsistency(format!(
                "dual pairing on {} is neither even nor odd for the grading",
                self.shape
            ))),
        }
    }

    /// Change of basis into homogeneous coordinates: the grading becomes
    /// `diag(id, -id)`. For a conjugate pair the columns are the half-sum
    /// and half-difference of each seminormal vector with its image under
    /// the sign-twisted map; for a self-conjugate shape the even columns are
    /// pivots of `id + grading` and the odd columns their images under the
    /// first adjacent transposition.
    pub fn homogeneous_basis(&self) -> Result<ExactMatrix> {
        let half = Scalar::from_ratio(1, 2);
        match self.kind {
            BlockKind::Q => {
                let f = self.plus.dim();
                let ih = ExactMatrix::identity(f).scale(&half);
                let ph = self.phi.scale(&half);
                let nh = -&ph;
                Ok(ExactMatrix::from_blocks(Some(&ih), Some(&ih), Some(&ph), Some(&nh), f, f, f, f))
            }
            BlockKind::M => {
                let f = self.dim;
                let proj = &ExactMatrix::identity(f) + &self.grading;
                let mut echelon = EchelonSubspace::new(f);
                let mut pivots = Vec::new();
                for c in 0..f {
                    let col: Vec<Scalar> = (0..f).map(|r| proj.at(r, c).clone()).collect();
                    if echelon.insert_dense(&col)? {
                        pivots.push(col);
                    }
                    if pivots.len() == f / 2 {
                        break;
                    }
                }
                if pivots.len() != f / 2 {
                    return Err(Error::Inconsistency(
                        "even eigenspace of the grading has the wrong dimension".into(),
                    ));
                }
                let even = ExactMatrix::from_fn(f, f / 2, |r, c| pivots[c][r].clone());
                let odd = &self.gens[0] * &even;
                Ok(ExactMatrix::from_fn(f, f, |r, c| {
                    if c < f / 2 {
                        even.at(r, c).clone()
                    } else {
                        odd.at(r, c - f / 2).clone()
                    }
                }))
            }
        }
    }

    fn check_square(&self, theta: &ExactMatrix) -> Result<()> {
        if theta.nrows() != self.dim || theta.ncols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator on a module of dimension {}",
                theta.nrows(),
                theta.ncols(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Extracts the block of the sign-twisted map between two content
    /// eigenspaces and returns its ratio to the cover's own map.
    fn restricted_phi_scale(
        &self,
        rows: &[usize],
        cols: &[usize],
        mu: &Partition,
    ) -> Result<BigRational> {
        let x = self.phi.block(rows, cols);
        let reference = intertwiner(mu);
        scaled_match(&x, &reference.matrix).ok_or_else(|| {
            Error::Inconsistency(format!(
                "restricted sign-twisted map of {} is not proportional to the one of {mu}",
                self.shape
            ))
        })
    }
}

/// Basis indices whose content vector ends with the given value.
fn content_subset(rep: &SeminormalRep, k: i64) -> Vec<usize> {
    let last = rep.n() - 1;
    (0..rep.dim()).filter(|&t| rep.alpha(t)[last] == k).collect()
}

/// Checks that the generators fixing the last letter never mix distinct
/// final contents.
fn check_label_blocks(rep: &SeminormalRep) -> Result<()> {
    let last = rep.n() - 1;
    for i in 0..rep.n().saturating_sub(2) {
        let g = rep.gen(i);
        for t in 0..rep.dim() {
            for u in 0..rep.dim() {
                if rep.alpha(t)[last] != rep.alpha(u)[last] && !g.at(u, t).is_zero() {
                    return Err(Error::Inconsistency(format!(
                        "generator {i} of {} mixes final contents",
                        rep.shape()
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Checks that the restriction of the parent generators to a content subset
/// reproduces the child's seminormal matrices verbatim.
fn check_restriction(parent: &SeminormalRep, subset: &[usize], child: &SeminormalRep) -> Result<()> {
    if subset.len() != child.dim() {
        return Err(Error::Inconsistency(format!(
            "content eigenspace of {} has dimension {}, expected {} from {}",
            parent.shape(),
            subset.len(),
            child.dim(),
            child.shape()
        )));
    }
    for i in 0..child.gens().len() {
        if parent.gen(i).block(subset, subset) != *child.gen(i) {
            return Err(Error::Inconsistency(format!(
                "restricted generator {i} of {} differs from the one of {}",
                parent.shape(),
                child.shape()
            )));
        }
    }
    Ok(())
}

/// The ratio `x / reference` when `x` is a nonzero rational multiple of
/// `reference`, elementwise.
fn scaled_match(x: &ExactMatrix, reference: &ExactMatrix) -> Option<BigRational> {
    if x.nrows() != reference.nrows() || x.ncols() != reference.ncols() {
        return None;
    }
    let mut scale: Option<BigRational> = None;
    for (xe, re) in x.flatten().iter().zip(reference.flatten()) {
        if re.is_zero() {
            if !xe.is_zero() {
                return None;
            }
            continue;
        }
        let ratio = xe.as_rational()? / re.as_rational()?;
        match &scale {
            None => scale = Some(ratio),
            Some(s) if *s == ratio => {}
            _ => return None,
        }
    }
    scale.filter(|s| !s.is_zero())
}

/// Diagonal matrix of the invariant pairing between the seminormal module
/// and its dual, normalized to one on the first basis vector. The entries
/// are transported along tableau swaps and the result is certified against
/// every generator: `D·S(s_i) = S(s_i)ᵀ·D`.
pub fn seminormal_dual_form(rep: &SeminormalRep) -> Result<ExactMatrix> {
    let f = rep.dim();
    let n = rep.n();
    let mut gamma: Vec<Option<BigRational>> = vec![None; f];
    gamma[0] = Some(BigRational::one());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for i in 0..n.saturating_sub(1) {
            let d = rep.alpha(t)[i + 1] - rep.alpha(t)[i];
            if d.abs() < 2 {
                continue;
            }
            let mut swapped = rep.alpha(t).to_vec();
            swapped.swap(i, i + 1);
            let u = rep.index_of(&swapped).unwrap();
            if gamma[u].is_some() {
                continue;
            }
            let down = rep.gen(i).at(u, t).as_rational().unwrap();
            let back = rep.gen(i).at(t, u).as_rational().unwrap();
            gamma[u] = Some(gamma[t].clone().unwrap() * back / down);
            queue.push_back(u);
        }
    }
    let mut diag = ExactMatrix::zeros(f, f);
    for t in 0..f {
        let g = gamma[t]
            .clone()
            .ok_or_else(|| Error::Inconsistency("tableau swap graph is disconnected".into()))?;
        diag.set(t, t, Scalar::from_rational(g));
    }
    for (i, g) in rep.gens().iter().enumerate() {
        for t in 0..f {
            for u in 0..f {
                if diag.at(u, u) * g.at(u, t) != g.at(t, u) * diag.at(t, t) {
                    return Err(Error::Inconsistency(format!(
                        "transported pairing fails on generator {i} of {}",
                        rep.shape()
                    )));
                }
            }
        }
    }
    Ok(diag)
}
