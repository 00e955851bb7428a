use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use puresep::{
    check, factorize, generate, measure, schmidt, DimVector, GeneratorBasis, PureState,
    RandomSpec, StateKind,
};

fn haar(dims: &[usize], seed: u64) -> PureState {
    generate(&RandomSpec {
        dims: DimVector::new(dims.to_vec()).unwrap(),
        kind: StateKind::HaarLike,
        seed,
    })
    .unwrap()
}

fn product(dims: &[usize], seed: u64) -> PureState {
    generate(&RandomSpec {
        dims: DimVector::new(dims.to_vec()).unwrap(),
        kind: StateKind::Product,
        seed,
    })
    .unwrap()
}

fn bench_check(c: &mut Criterion) {
    let three_qubit = haar(&[2, 2, 2], 1);
    let three_qutrit = haar(&[3, 3, 3], 1);
    c.bench_function("check_2x2x2", |b| {
        b.iter(|| check(black_box(&three_qubit), 1e-8).unwrap())
    });
    c.bench_function("check_3x3x3", |b| {
        b.iter(|| check(black_box(&three_qutrit), 1e-8).unwrap())
    });
}

fn bench_partial_trace(c: &mut Criterion) {
    let s = haar(&[2, 2, 2, 2], 2);
    c.bench_function("partial_trace_2x2x2x2_keep1", |b| {
        b.iter(|| s.partial_trace(black_box(&[1])).unwrap())
    });
}

fn bench_schmidt(c: &mut Criterion) {
    let s = haar(&[3, 3, 3], 3);
    c.bench_function("schmidt_3x3x3_cut1", |b| {
        b.iter(|| schmidt(black_box(&s), &[1], 1e-8).unwrap())
    });
}

fn bench_factorize(c: &mut Criterion) {
    let s = product(&[2, 2, 2, 2], 4);
    c.bench_function("factorize_product_2x2x2x2", |b| {
        b.iter(|| factorize(black_box(&s), 1e-8).unwrap())
    });
}

fn bench_measure(c: &mut Criterion) {
    let s = haar(&[3, 3], 5);
    c.bench_function("measure_3x3", |b| b.iter(|| measure(black_box(&s))));
}

fn bench_basis(c: &mut Criterion) {
    c.bench_function("generator_basis_su4", |b| {
        b.iter(|| GeneratorBasis::new(black_box(4)).unwrap())
    });
}

fn bench_generate(c: &mut Criterion) {
    let spec = RandomSpec {
        dims: DimVector::new(vec![2, 2, 2]).unwrap(),
        kind: StateKind::HaarLike,
        seed: 6,
    };
    c.bench_function("generate_haar_2x2x2", |b| {
        b.iter(|| generate(black_box(&spec)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_check,
    bench_partial_trace,
    bench_schmidt,
    bench_factorize,
    bench_measure,
    bench_basis,
    bench_generate
);
criterion_main!(benches);
