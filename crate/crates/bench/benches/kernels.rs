use criterion::{criterion_group, criterion_main, Criterion};

use symsuper::combinatorics::Partition;
use symsuper::exactlinalg::{rref, ExactMatrix, Scalar};
use symsuper::liesuper::{closure, transpositions};
use symsuper::perm::PermTable;
use symsuper::specht::seminormal_rep;
use symsuper::supermod::supermodule;

fn shape(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn transposition_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for n in [4usize, 5] {
        let table = PermTable::new(n);
        let gens = transpositions(n);
        group.bench_function(format!("transpositions/n={n}"), |b| {
            b.iter(|| closure(&table, &gens, None, false).unwrap().space.dim())
        });
    }
    group.finish();
}

fn seminormal_build(c: &mut Criterion) {
    let lambda = shape(&[4, 2, 1]);
    c.bench_function("seminormal/4,2,1", |b| b.iter(|| seminormal_rep(&lambda).dim()));
}

fn supermodule_build(c: &mut Criterion) {
    // self-conjugate, so the intertwiner drags in the quadratic extension
    let lambda = shape(&[3, 2, 1]);
    c.bench_function("supermodule/3,2,1", |b| b.iter(|| supermodule(&lambda).unwrap().dim()));
}

fn rational_echelon(c: &mut Criterion) {
    // Hilbert-style entries keep every pivot a fraction with growing terms
    let m = ExactMatrix::from_fn(24, 24, |i, j| Scalar::from_ratio(1, (i + j + 1) as i64));
    c.bench_function("rref/hilbert-24", |b| b.iter(|| rref(&m).unwrap().1));
}

criterion_group!(
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = transposition_closure, seminormal_build, supermodule_build, rational_echelon
);
criterion_main!(kernels);
