//! Release gate. Each test condenses one headline result into a single
//! deterministic pass/fail with exact expected values, and prints a one-line
//! summary on success (visible with --nocapture).

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use symsuper::combinatorics::{classify, partitions, BlockKind, Partition};
use symsuper::exactlinalg::{ExactMatrix, Scalar};
use symsuper::liesuper::{
    closure, identity_and_offdiagonal_generators, matrix_closure, odd_unit_generators,
    queer_traceless_generators, transpositions, GroupAlgebraElement,
};
use symsuper::perm::{Parity, PermTable, Permutation};
use symsuper::specht::seminormal_rep;
use symsuper::supermod::{supermodule, TnVerdict};
use symsuper::verify::{
    check_block_images, check_branching, check_dihedral_census, check_symmetric_census,
};

fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

#[test]
fn closure_dimensions_to_six_letters() {
    let start = Instant::now();
    let expected = [(2, 1, 1), (3, 2, 3), (4, 11, 11), (5, 59, 58), (6, 359, 356)];
    let mut totals = Vec::new();
    for (n, even, odd) in expected {
        let table = PermTable::new(n);
        let out = closure(&table, &transpositions(n), None, false).unwrap();
        assert!(out.complete, "closure at n={n} did not saturate");
        assert_eq!(
            (out.space.even_dim(), out.space.odd_dim()),
            (even, odd),
            "parity split at n={n}"
        );
        totals.push(even + odd);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "closure sweep took {elapsed:?}");
    assert_eq!(totals, [2, 5, 22, 117, 715]);
    println!("PASS closure dimensions n=2..6: 2 5 22 117 715, splits exact, in {elapsed:?}");
}

#[test]
#[ignore = "about half a minute; run explicitly with --ignored"]
fn closure_dimension_seven_letters() {
    let start = Instant::now();
    let table = PermTable::new(7);
    let budget = Some(Duration::from_secs(3600));
    let out = closure(&table, &transpositions(7), budget, false).unwrap();
    assert!(out.complete, "closure at n=7 exceeded one hour");
    assert_eq!((out.space.even_dim(), out.space.odd_dim()), (2519, 2514));
    println!("PASS closure dimension n=7: 5033 (2519 even, 2514 odd) in {:?}", start.elapsed());
}

#[test]
fn block_operator_images_to_six_letters() {
    let start = Instant::now();
    for n in 2..=6usize {
        let table = PermTable::new(n);
        let blocks = classify(n).unwrap().classes().len();
        let entries = check_block_images(n, &table, table.size() - blocks + 1).unwrap();
        for e in &entries {
            assert!(e.pass, "{}: expected {}, got {}", e.name, e.expected, e.actual);
        }
    }
    // the six-letter image dimensions, block by block
    let table = PermTable::new(6);
    let entries = check_block_images(6, &table, 715).unwrap();
    let dim_of = |name: &str| {
        entries.iter().find(|e| e.name == name).map(|e| e.actual.clone()).unwrap()
    };
    assert_eq!(dim_of("images/n=6/6"), "dim 2");
    assert_eq!(dim_of("images/n=6/5,1"), "dim 50");
    assert_eq!(dim_of("images/n=6/4,2"), "dim 162");
    assert_eq!(dim_of("images/n=6/4,1,1"), "dim 200");
    assert_eq!(dim_of("images/n=6/3,3"), "dim 50");
    assert_eq!(dim_of("images/n=6/3,2,1"), "dim 255");
    println!(
        "PASS block images n=2..6 with involution and trace certificates; n=6 dims 2 50 162 200 50 255 ({:?})",
        start.elapsed()
    );
}

#[test]
fn seminormal_representations_to_eight_letters() {
    let start = Instant::now();
    let mut shapes: Vec<Partition> = Vec::new();
    for n in 2..=8 {
        shapes.extend(partitions(n).unwrap());
    }
    let count = shapes.len();
    shapes.par_iter().for_each(|shape| {
        let rep = seminormal_rep(shape);
        let f = rep.dim();
        let n = shape.n();
        let id = ExactMatrix::identity(f);
        for s in rep.gens() {
            assert_eq!(s * s, id, "involution at {shape}");
        }
        for i in 0..n.saturating_sub(2) {
            let (a, b) = (rep.gen(i), rep.gen(i + 1));
            assert_eq!(&(a * b) * a, &(b * a) * b, "braid at {shape}, {i}");
        }
        for i in 0..n - 1 {
            for j in i + 2..n - 1 {
                let (a, b) = (rep.gen(i), rep.gen(j));
                assert_eq!(a * b, b * a, "distant generators at {shape}: {i} {j}");
            }
        }
        // Jucys–Murphy sums diagonalize on the contents
        for j in 1..=n {
            let jm = rep.jucys_murphy(j).unwrap();
            let diag = ExactMatrix::from_fn(f, f, |r, c| {
                if r == c {
                    Scalar::from_integer(rep.alpha(r)[j - 1])
                } else {
                    Scalar::zero()
                }
            });
            assert_eq!(jm, diag, "Jucys–Murphy {j} at {shape}");
        }
    });

    let mut rng = ChaCha8Rng::seed_from_u64(90125);
    for trial in 0..100 {
        let n = rng.gen_range(2..=8usize);
        let pool = partitions(n).unwrap();
        let shape = pool.choose(&mut rng).unwrap().clone();
        let rep = seminormal_rep(&shape);
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.shuffle(&mut rng);
        let sigma = Permutation::from_images(images).unwrap();
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.shuffle(&mut rng);
        let tau = Permutation::from_images(images).unwrap();
        let lhs = rep.rep_of_permutation(&sigma.compose(&tau)).unwrap();
        let rhs = &rep.rep_of_permutation(&sigma).unwrap() * &rep.rep_of_permutation(&tau).unwrap();
        assert_eq!(lhs, rhs, "multiplicativity at {shape}, trial {trial}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "seminormal sweep took {elapsed:?}");
    println!(
        "PASS seminormal relations, Jucys–Murphy spectra, and 100 random products across {count} shapes, n=2..8 ({elapsed:?})"
    );
}

#[test]
fn branching_to_seven_letters() {
    let start = Instant::now();
    for n in 3..=7 {
        let e = check_branching(n).unwrap();
        assert!(e.pass, "{}: {}", e.name, e.actual);
    }
    // a self-conjugate cover arrives twice, once per parity
    let report = supermodule(&part(&[3, 2])).unwrap().branch().unwrap();
    assert_eq!(report.summands[0].mu, part(&[2, 2]));
    assert_eq!(report.summands[0].multiplicity, 2);
    assert_eq!(report.summands[0].dim, 4);
    // a self-conjugate shape keeps only covers of nonnegative content
    let report = supermodule(&part(&[3, 1, 1])).unwrap().branch().unwrap();
    assert_eq!(report.summands.len(), 1);
    assert_eq!(report.summands[0].mu, part(&[2, 1, 1]));
    assert_eq!(report.summands[0].residue, 2);
    assert_eq!(report.summands[0].dim, 6);
    println!(
        "PASS branching n=3..7 against cover lists, with doubling and the nonnegative-content filter ({:?})",
        start.elapsed()
    );
}

#[test]
fn transposition_sum_action_to_seven_letters() {
    let start = Instant::now();
    for n in 2..=7usize {
        for class in classify(n).unwrap().classes() {
            let shape = &class.representative;
            let rep = supermodule(shape).unwrap();
            let image = rep.tn_image().unwrap();
            match (&class.kind, &image.verdict) {
                (BlockKind::Q, TnVerdict::ScalarOfJ { factor }) => {
                    assert_eq!(*factor, shape.residue_sum(), "recorded factor at {shape}");
                    assert_ne!(*factor, 0, "zero factor should be the other verdict");
                }
                (BlockKind::Q, TnVerdict::Zero) => {
                    assert_eq!(shape.residue_sum(), 0, "zero image at {shape}");
                }
                (BlockKind::M, TnVerdict::Zero) => {
                    assert!(image.matrix.is_zero(), "nonzero matrix at {shape}");
                    assert_eq!(shape.residue_sum(), 0, "self-conjugate contents cancel");
                }
                (BlockKind::M, v) => panic!("unexpected verdict {v:?} at {shape}"),
            }
            // against the generic group-algebra action on small groups
            if n <= 4 {
                let sum = GroupAlgebraElement::transposition_sum(n);
                assert_eq!(image.matrix, rep.element_action(&sum).unwrap(), "at {shape}");
            }
        }
    }
    println!(
        "PASS transposition-sum action n=2..7: content-sum multiple of the odd involution on conjugate pairs, zero on self-conjugate shapes ({:?})",
        start.elapsed()
    );
}

#[test]
fn odd_generation_of_matrix_models() {
    let start = Instant::now();
    let mut dims = Vec::new();
    for (half, gens) in [
        (2, odd_unit_generators(2)),
        (3, odd_unit_generators(3)),
        (3, queer_traceless_generators(3)),
        (4, queer_traceless_generators(4)),
        (5, identity_and_offdiagonal_generators(5)),
    ] {
        let out = matrix_closure(half, &gens, None, false).unwrap();
        assert!(out.complete, "matrix closure at m={half} did not saturate");
        dims.push(out.space.dim());
    }
    assert_eq!(dims, [15, 35, 17, 31, 49]);
    println!(
        "PASS odd generation: odd units close to 15 and 35, traceless queer parts to 17 and 31, identity with off-diagonal units to 49 ({:?})",
        start.elapsed()
    );
}

#[test]
fn block_censuses_from_centers() {
    let start = Instant::now();
    for n in 2..=6 {
        let e = check_symmetric_census(n).unwrap();
        assert!(e.pass, "{}: expected {}, got {}", e.name, e.expected, e.actual);
    }
    for n in 3..=10 {
        let e = check_dihedral_census(n).unwrap();
        assert!(e.pass, "{}: expected {}, got {}", e.name, e.expected, e.actual);
    }
    println!(
        "PASS block censuses: S_2..S_6 match the shape classification, D_3..D_10 match the parity-of-n formula ({:?})",
        start.elapsed()
    );
}

#[test]
fn self_duality_tracks_diagonal_parity_to_eight_letters() {
    let start = Instant::now();
    let mut seen = 0;
    for n in 3..=8 {
        for shape in partitions(n).unwrap() {
            if !shape.is_self_conjugate() {
                continue;
            }
            seen += 1;
            let evenly = supermodule(&shape).unwrap().group_dual_test().unwrap();
            let expected = shape.diagonal_parity().unwrap() == Parity::Even;
            assert_eq!(evenly, expected, "dual comparison at {shape}");
        }
    }
    assert_eq!(seen, 7, "self-conjugate shapes with 3 ≤ n ≤ 8");
    println!(
        "PASS self-duality equals parity of the boxes above the diagonal for all {seen} self-conjugate shapes, n=3..8 ({:?})",
        start.elapsed()
    );
}

#[test]
fn dimension_bounds_to_eight_letters() {
    let start = Instant::now();
    let mut checked = 0;
    for n in 2..=8usize {
        for class in classify(n).unwrap().classes() {
            let shape = &class.representative;
            let dim = supermodule(shape).unwrap().dim();
            checked += 1;
            match class.kind {
                BlockKind::Q => {
                    if shape.parts() == [n] {
                        assert_eq!(dim, 2, "row shape at n={n}");
                    } else {
                        assert!(dim >= 2 * n - 2, "{shape}: dim {dim} below {}", 2 * n - 2);
                    }
                }
                BlockKind::M => {
                    let small: &[(&[usize], usize)] =
                        &[(&[2, 1], 2), (&[2, 2], 2), (&[3, 1, 1], 6)];
                    match small.iter().find(|(p, _)| shape.parts() == *p) {
                        Some(&(_, d)) => assert_eq!(dim, d, "{shape}"),
                        None => assert!(dim >= n + 3, "{shape}: dim {dim} below {}", n + 3),
                    }
                }
            }
        }
    }
    println!(
        "PASS dimension bounds for all {checked} blocks, n=2..8: rows at 2, small self-conjugate exceptions at 2 2 6, everything else at the linear floors ({:?})",
        start.elapsed()
    );
}
