//! End-to-end consistency checks tying the layers together: block censuses
//! against the shape classification, the bracket closure of the
//! transpositions against its predicted dimension and its decomposition as
//! derived span plus transposition sum, per-block operator images, branching
//! rules, and centers. Every check records what was expected, what was
//! computed, and how long it took; a check passes exactly when the two
//! strings agree, so a report is readable on its own.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{classify, BlockKind, ClassEntry, Partition};
use crate::error::{Error, Result};
use crate::exactlinalg::{EchelonSubspace, ExactMatrix, Scalar, SparseVec};
use crate::liesuper::{
    block_census, closure, even_group_algebra_derived, group_algebra_derived,
    group_algebra_derived_spanning, subspace_center, super_center, transpositions,
    ClosureOutcome, FiniteSuperGroup, GradedSubspace, GroupAlgebraElement, GroupBracketSpace,
};
use crate::perm::{Parity, PermTable, Permutation};
use crate::specht::intertwiner;
use crate::supermod::supermodule;

/// One named comparison. `pass` holds exactly when `expected == actual`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub millis: u64,
}

/// Outcome of `run_all`; `n` is the largest symmetric group covered.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub checks: Vec<CheckEntry>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// S_7 is accurate but takes minutes; it must be asked for.
    pub include_seven: bool,
    /// Wall-clock cap for each closure run. Falls back to the
    /// SYMSUPER_BUDGET_SECS environment variable, then to one hour at n ≥ 7.
    pub budget_secs: Option<u64>,
    /// Stream closure progress to stderr.
    pub progress: bool,
}

fn entry(
    name: impl Into<String>,
    expected: impl Into<String>,
    actual: impl Into<String>,
    start: Instant,
) -> CheckEntry {
    let (expected, actual) = (expected.into(), actual.into());
    CheckEntry {
        name: name.into(),
        pass: expected == actual,
        millis: start.elapsed().as_millis() as u64,
        expected,
        actual,
    }
}

/// Superblock count of ℂS_n from rational center computations against the
/// count of shapes up to conjugation.
pub fn check_symmetric_census(n: usize) -> Result<CheckEntry> {
    let start = Instant::now();
    let census = block_census(&FiniteSuperGroup::symmetric(n)?)?;
    let table = classify(n)?;
    let expected = format!(
        "{} blocks: {} M, {} Q",
        table.classes().len(),
        table.num_m(),
        table.num_q()
    );
    let actual = format!("{} blocks: {} M, {} Q", census.blocks, census.num_m, census.num_q);
    Ok(entry(format!("census/s{n}"), expected, actual, start))
}

/// Superblock count of the dihedral group of order 2n, graded by
/// reflections, against the closed form in the parity of n.
pub fn check_dihedral_census(n: usize) -> Result<CheckEntry> {
    let start = Instant::now();
    let census = block_census(&FiniteSuperGroup::dihedral(n)?)?;
    let (m, q) = if n % 2 == 0 { (n / 2 - 1, 2) } else { (n / 2, 1) };
    let expected = format!("{} blocks: {m} M, {q} Q", m + q);
    let actual = format!("{} blocks: {} M, {} Q", census.blocks, census.num_m, census.num_q);
    Ok(entry(format!("census/d{n}"), expected, actual, start))
}

/// Intermediate results of `check_main_theorem`, reusable by later checks.
pub struct MainTheoremData {
    pub table: PermTable,
    pub closure: ClosureOutcome,
    pub derived: GradedSubspace,
}

/// The bracket closure of the transpositions: its parity-split dimension
/// must be (n!/2 − #M, n!/2 − #Q + 1), and it must decompose as the derived
/// span of the full group algebra plus the line through the transposition
/// sum. The final entry confirms that recentering a transposition by the
/// average of its class lands it in the derived span.
pub fn check_main_theorem(
    n: usize,
    budget: Option<Duration>,
    progress: bool,
) -> Result<(Vec<CheckEntry>, MainTheoremData)> {
    let mut entries = Vec::new();
    let table = PermTable::new(n);
    let classes = classify(n)?;
    let half = table.size() / 2;

    let start = Instant::now();
    let outcome = closure(&table, &transpositions(n), budget, progress)?;
    let expected =
        format!("even {}, odd {}", half - classes.num_m(), half - classes.num_q() + 1);
    let actual = if outcome.complete {
        format!("even {}, odd {}", outcome.space.even_dim(), outcome.space.odd_dim())
    } else {
        format!(
            "partial after {} passes: even {}, odd {}",
            outcome.passes,
            outcome.space.even_dim(),
            outcome.space.odd_dim()
        )
    };
    entries.push(entry(format!("main/closure-dims/n={n}"), expected, actual, start));

    let start = Instant::now();
    let derived = group_algebra_derived(&table)?;
    let (p, tn) = GroupAlgebraElement::transposition_sum(n).to_coords(&table)?;
    let in_closure = outcome.space.contains(p, &tn)?;
    let in_derived = derived.contains(p, &tn)?;
    let actual = format!(
        "closure: {}, derived: {}",
        if in_closure { "yes" } else { "no" },
        if in_derived { "yes" } else { "no" }
    );
    entries.push(entry(
        format!("main/transposition-sum/n={n}"),
        "closure: yes, derived: no",
        actual,
        start,
    ));

    let start = Instant::now();
    let dims_ok = outcome.space.dim() == derived.dim() + 1;
    let mut escaped = false;
    for (q, row) in derived.rows() {
        if !outcome.space.contains(q, &row)? {
            escaped = true;
            break;
        }
    }
    let expected = "derived span + transposition sum".to_string();
    let actual = if dims_ok && !escaped {
        expected.clone()
    } else {
        format!(
            "dims {} vs {} + 1{}",
            outcome.space.dim(),
            derived.dim(),
            if escaped { ", a derived vector escapes the closure" } else { "" }
        )
    };
    entries.push(entry(format!("main/derived-complement/n={n}"), expected, actual, start));

    let start = Instant::now();
    let pairs = (n * (n - 1) / 2) as i64;
    let shifted = &GroupAlgebraElement::transposition(n, 0, 1)
        - &GroupAlgebraElement::transposition_sum(n).scale(&Scalar::from_ratio(1, pairs));
    let (q, w) = shifted.to_coords(&table)?;
    let ok = w.is_empty() || derived.contains(q, &w)?;
    let expected = "recentered transposition in the derived span";
    let actual =
        if ok { expected } else { "recentered transposition escapes the derived span" };
    entries.push(entry(format!("main/recentered-generator/n={n}"), expected, actual, start));

    Ok((entries, MainTheoremData { table, closure: outcome, derived }))
}

/// Dimensions of the derived span of the full group algebra and of its even
/// part, each against the block formula: n!−(number of blocks) split as
/// (n!/2 − #M, n!/2 − #Q), and ⊕ traceless summands for the even part.
pub fn check_derived_dims(
    n: usize,
    table: &PermTable,
    derived: &GradedSubspace,
) -> Result<Vec<CheckEntry>> {
    let mut entries = Vec::new();
    let classes = classify(n)?;
    let half = table.size() / 2;

    let start = Instant::now();
    let expected = format!("even {}, odd {}", half - classes.num_m(), half - classes.num_q());
    let actual = format!("even {}, odd {}", derived.even_dim(), derived.odd_dim());
    entries.push(entry(format!("derived/group-algebra/n={n}"), expected, actual, start));

    let start = Instant::now();
    let even = even_group_algebra_derived(table)?;
    let mut formula = 0usize;
    for class in classes.classes() {
        let f = class.representative.hook_length_count() as usize;
        formula += match class.kind {
            BlockKind::Q => f * f - 1,
            BlockKind::M => 2 * ((f / 2) * (f / 2) - 1),
        };
    }
    let expected = format!("even {formula}, odd 0");
    let actual = format!("even {}, odd {}", even.even_dim(), even.odd_dim());
    entries.push(entry(format!("derived/even-part/n={n}"), expected, actual, start));
    Ok(entries)
}

fn product_trace(a: &ExactMatrix, b: &ExactMatrix) -> Scalar {
    let mut t = Scalar::zero();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            t = &t + &(a.at(i, j) * b.at(j, i));
        }
    }
    t
}

fn block_image_entry(
    n: usize,
    table: &PermTable,
    spanning: &[(Parity, SparseVec)],
    class: &ClassEntry,
) -> Result<(CheckEntry, usize)> {
    let start = Instant::now();
    let shape = &class.representative;
    let name = format!("images/n={n}/{shape}");
    let f = shape.hook_length_count() as usize;
    let expected_dim = match class.kind {
        BlockKind::Q => 2 * f * f - 1 + usize::from(shape.residue_sum() != 0),
        BlockKind::M => f * f - 1,
    };
    let expected = format!("dim {expected_dim}");

    let rep = supermodule(shape)?;
    let d = rep.dim();

    // every permutation's operator, walking the Cayley graph of the adjacent
    // transpositions outward from the identity
    let mut images: Vec<Option<ExactMatrix>> = vec![None; table.size()];
    let id = table.global_index(&Permutation::identity(n));
    images[id as usize] = Some(ExactMatrix::identity(d));
    let adjacents: Vec<u32> =
        (0..n - 1).map(|i| table.global_index(&Permutation::adjacent(n, i))).collect();
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for (i, &s) in adjacents.iter().enumerate() {
            let h = table.compose(g, s);
            if images[h as usize].is_none() {
                let w = images[g as usize].as_ref().unwrap() * rep.gen(i);
                images[h as usize] = Some(w);
                queue.push_back(h);
            }
        }
    }
    let images: Vec<ExactMatrix> = images.into_iter().map(Option::unwrap).collect();

    // The trace functional that cuts the derived image out of the block:
    // half the trace against the odd involution for a conjugate pair, the
    // trace against the sign-twisted map for a self-conjugate shape. Its
    // vanishing on every spanning vector, together with the involution
    // commuting with the generators, caps the image dimension from above;
    // the echelon span then meets the cap from below.
    let mut fault: Option<String> = None;
    let functional: Vec<Scalar> = match class.kind {
        BlockKind::Q => {
            let j = rep.odd_involution().expect("conjugate pairs carry an involution");
            for (i, g) in rep.gens().iter().enumerate() {
                if fault.is_none() && j * g != g * j {
                    fault = Some(format!("involution misses generator {i}"));
                }
            }
            let half = Scalar::from_ratio(1, 2);
            images.iter().map(|w| &half * &product_trace(j, w)).collect()
        }
        BlockKind::M => {
            let phi = intertwiner(shape).matrix;
            images.iter().map(|w| product_trace(&phi, w)).collect()
        }
    };

    let mut span = EchelonSubspace::new(d * d);
    for (p, v) in spanning {
        let mut dot = Scalar::zero();
        for &(c, ref a) in v {
            dot = &dot + &(a * &functional[table.global_of(*p, c) as usize]);
        }
        if !dot.is_zero() && fault.is_none() {
            fault = Some("nonzero trace functional on a derived vector".into());
        }
        if span.dim() < expected_dim {
            let mut theta = ExactMatrix::zeros(d, d);
            for &(c, ref a) in v {
                theta = &theta + &images[table.global_of(*p, c) as usize].scale(a);
            }
            span.insert_dense(theta.flatten())?;
        }
    }
    let mut tn = ExactMatrix::zeros(d, d);
    for a in 0..n {
        for b in a + 1..n {
            let g = table.global_index(&Permutation::transposition(n, a, b));
            tn = &tn + &images[g as usize];
        }
    }
    span.insert_dense(tn.flatten())?;

    let achieved = span.dim();
    let actual = match fault {
        Some(msg) => format!("dim {achieved}, {msg}"),
        None => format!("dim {achieved}"),
    };
    Ok((entry(name, expected, actual, start), achieved))
}

/// Image of the closure inside every block: the derived spanning vectors and
/// the transposition sum are pushed through each simple module. A conjugate
/// pair must fill the commutant of its odd involution up to the trace
/// functional (regained by the transposition sum exactly when the content
/// sum is nonzero); a self-conjugate shape must fill the traceless operators.
/// The achieved dimensions must in total cover the closure.
pub fn check_block_images(
    n: usize,
    table: &PermTable,
    closure_dim: usize,
) -> Result<Vec<CheckEntry>> {
    let start = Instant::now();
    let spanning = group_algebra_derived_spanning(table)?;
    let classes = classify(n)?;
    let per_block: Result<Vec<(CheckEntry, usize)>> = classes
        .classes()
        .par_iter()
        .map(|class| block_image_entry(n, table, &spanning, class))
        .collect();
    let mut entries = Vec::new();
    let mut total = 0usize;
    for (e, achieved) in per_block? {
        total += achieved;
        entries.push(e);
    }
    let expected = format!("at least {closure_dim}");
    let actual =
        if total >= closure_dim { expected.clone() } else { format!("{total} < {closure_dim}") };
    entries.push(entry(format!("images/sum/n={n}"), expected, actual, start));
    Ok(entries)
}

/// Restriction of every representative module to one letter fewer, against
/// the cover list of its shape: conjugate pairs keep every cover (doubled on
/// self-conjugate covers), self-conjugate shapes keep covers of nonnegative
/// content, halving the dimension on content zero.
pub fn check_branching(n: usize) -> Result<CheckEntry> {
    let start = Instant::now();
    let classes = classify(n)?;
    let total = classes.classes().len();
    let mut faults: Vec<String> = Vec::new();
    for class in classes.classes() {
        let shape = &class.representative;
        let report = match supermodule(shape).and_then(|rep| rep.branch()) {
            Ok(r) => r,
            Err(e) => {
                faults.push(format!("{shape}: {e}"));
                continue;
            }
        };
        let mut expected: Vec<(Partition, i64, usize, usize)> = Vec::new();
        for (mu, k) in shape.covers() {
            let fm = mu.hook_length_count() as usize;
            match class.kind {
                BlockKind::Q => {
                    let mult = if mu.is_self_conjugate() { 2 } else { 1 };
                    expected.push((mu, k, mult, 2 * fm));
                }
                BlockKind::M => {
                    if k < 0 {
                        continue;
                    }
                    expected.push((mu, k, 1, if k == 0 { fm } else { 2 * fm }));
                }
            }
        }
        let got: Vec<(Partition, i64, usize, usize)> = report
            .summands
            .iter()
            .map(|s| (s.mu.clone(), s.residue, s.multiplicity, s.dim))
            .collect();
        if expected != got {
            faults.push(format!("{shape}: summands disagree with the cover list"));
        } else if report.summands.iter().any(|s| s.intertwiner_scale.is_zero()) {
            faults.push(format!("{shape}: degenerate sign-twist scale"));
        }
    }
    let expected = format!("all {total} representatives consistent");
    let actual = if faults.is_empty() { expected.clone() } else { faults.join("; ") };
    Ok(entry(format!("branch/n={n}"), expected, actual, start))
}

/// Everything in the closure that super-commutes with all transpositions
/// must sit inside the super center of the group algebra.
pub fn check_center(
    n: usize,
    table: &PermTable,
    closure_space: &GradedSubspace,
) -> Result<CheckEntry> {
    let start = Instant::now();
    let gens: Result<Vec<(Parity, SparseVec)>> =
        transpositions(n).iter().map(|t| t.to_coords(table)).collect();
    let z = subspace_center(&GroupBracketSpace::new(table), closure_space, &gens?)?;
    let ambient = super_center(&FiniteSuperGroup::symmetric(n)?)?;
    let mut escaped = 0usize;
    for (p, row) in z.rows() {
        if !ambient.contains(p, &row)? {
            escaped += 1;
        }
    }
    let expected = "inside the super center".to_string();
    let actual = if escaped == 0 {
        expected.clone()
    } else {
        format!("{escaped} of {} rows escape the super center", z.dim())
    };
    Ok(entry(format!("center/n={n}"), expected, actual, start))
}

fn cap_for(max_n: usize, include_seven: bool) -> usize {
    if max_n >= 7 && !include_seven {
        6
    } else {
        max_n.min(7)
    }
}

fn budget_for(n: usize, options: &RunOptions) -> Option<Duration> {
    let configured = options
        .budget_secs
        .or_else(|| std::env::var("SYMSUPER_BUDGET_SECS").ok().and_then(|v| v.parse().ok()));
    match configured {
        Some(secs) => Some(Duration::from_secs(secs)),
        None if n >= 7 => Some(Duration::from_secs(3600)),
        None => None,
    }
}

/// Runs every check for 2 ≤ n ≤ min(max_n, 7), then the dihedral censuses.
/// Block images stop at n = 6 (the operator echelon gets dense), centers at
/// n = 5 (the commutant solve is a dense kernel).
pub fn run_all(max_n: usize, options: RunOptions) -> Result<VerificationReport> {
    if max_n < 2 {
        return Err(Error::InvalidArgument("verification starts at n = 2".into()));
    }
    let cap = cap_for(max_n, options.include_seven);
    let mut checks = Vec::new();
    for n in 2..=cap {
        checks.push(check_symmetric_census(n)?);
        let (entries, data) = check_main_theorem(n, budget_for(n, &options), options.progress)?;
        checks.extend(entries);
        checks.extend(check_derived_dims(n, &data.table, &data.derived)?);
        if n <= 6 && data.closure.complete {
            checks.extend(check_block_images(n, &data.table, data.closure.space.dim())?);
        }
        if n >= 3 {
            checks.push(check_branching(n)?);
        }
        if n <= 5 {
            checks.push(check_center(n, &data.table, &data.closure.space)?);
        }
    }
    for n in 3..=10 {
        checks.push(check_dihedral_census(n)?);
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport { n: cap, checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_passes_through_four_letters() {
        let report = run_all(4, RunOptions::default()).unwrap();
        assert_eq!(report.n, 4);
        let failures: Vec<&CheckEntry> = report.checks.iter().filter(|c| !c.pass).collect();
        assert!(report.pass, "{failures:#?}");
        for c in &report.checks {
            assert_eq!(c.expected, c.actual, "{}", c.name);
        }
        let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
        for required in [
            "census/s2",
            "main/closure-dims/n=4",
            "main/transposition-sum/n=4",
            "main/derived-complement/n=4",
            "main/recentered-generator/n=4",
            "derived/group-algebra/n=4",
            "derived/even-part/n=4",
            "images/n=4/2,2",
            "images/sum/n=4",
            "branch/n=4",
            "center/n=4",
            "census/d10",
        ] {
            assert!(names.contains(&required), "missing {required}");
        }
    }

    #[test]
    fn closure_dimensions_appear_verbatim_through_five_letters() {
        let report = run_all(5, RunOptions::default()).unwrap();
        assert!(report.pass);
        let dims: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.name.starts_with("main/closure-dims"))
            .map(|c| c.actual.as_str())
            .collect();
        assert_eq!(
            dims,
            ["even 1, odd 1", "even 2, odd 3", "even 11, odd 11", "even 59, odd 58"]
        );
    }

    #[test]
    fn image_dimensions_at_four_letters() {
        let table = PermTable::new(4);
        let entries = check_block_images(4, &table, 22).unwrap();
        let by_name = |name: &str| entries.iter().find(|e| e.name == name).unwrap();
        assert_eq!(by_name("images/n=4/4").actual, "dim 2");
        assert_eq!(by_name("images/n=4/3,1").actual, "dim 18");
        assert_eq!(by_name("images/n=4/2,2").actual, "dim 3");
        assert_eq!(by_name("images/sum/n=4").expected, "at least 22");
        for e in &entries {
            assert!(e.pass, "{}: {} vs {}", e.name, e.expected, e.actual);
        }
    }

    #[test]
    fn census_entries_spell_out_block_counts() {
        let s = check_symmetric_census(5).unwrap();
        assert_eq!(s.name, "census/s5");
        assert_eq!(s.expected, "4 blocks: 1 M, 3 Q");
        assert!(s.pass);
        let d = check_dihedral_census(8).unwrap();
        assert_eq!(d.expected, "5 blocks: 3 M, 2 Q");
        assert!(d.pass);
    }

    #[test]
    fn exhausted_budget_is_reported_not_hidden() {
        let (entries, data) =
            check_main_theorem(5, Some(Duration::from_nanos(1)), false).unwrap();
        assert!(!data.closure.complete);
        let dims = entries.iter().find(|e| e.name == "main/closure-dims/n=5").unwrap();
        assert!(!dims.pass);
        assert!(dims.actual.contains("partial"));
    }

    #[test]
    fn report_serializes_with_stable_field_names() {
        let report = run_all(2, RunOptions::default()).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["n"], 2);
        assert!(json["pass"].as_bool().unwrap());
        let first = &json["checks"][0];
        for key in ["name", "expected", "actual", "pass", "millis"] {
            assert!(first.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn seven_is_opt_in() {
        assert_eq!(cap_for(9, false), 6);
        assert_eq!(cap_for(7, false), 6);
        assert_eq!(cap_for(7, true), 7);
        assert_eq!(cap_for(5, false), 5);
        assert_eq!(cap_for(12, true), 7);
    }
}
