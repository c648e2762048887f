use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use surjtop_bench::pseudo_random_matrix;
use surjtop_core::{
    case3_word, classify_presentation, cokernel, example_k1, fox_derivative, smith_normal_form,
    smith_normal_form_with_transforms, twisted_matrix, CoefficientSystem, Presentation, Sign,
};

fn bench_smith_normal_form(c: &mut Criterion) {
    let small = pseudo_random_matrix(4, 4, 5, 1);
    let medium = pseudo_random_matrix(8, 8, 50, 2);
    c.bench_function("snf 4x4 small entries", |b| {
        b.iter(|| smith_normal_form(black_box(&small)))
    });
    c.bench_function("snf 8x8", |b| b.iter(|| smith_normal_form(black_box(&medium))));
    c.bench_function("snf 8x8 with transforms", |b| {
        b.iter(|| smith_normal_form_with_transforms(black_box(&medium)))
    });
    c.bench_function("cokernel 8x8", |b| b.iter(|| cokernel(black_box(&medium))));
}

fn bench_fox_calculus(c: &mut Criterion) {
    let p = case3_word(2, 2, 40).unwrap();
    let relator = p.relators()[0].clone();
    let beta3 = CoefficientSystem::new(&p, vec![Sign::Minus, Sign::Minus]).unwrap();
    c.bench_function("fox derivative, 200-letter relator", |b| {
        b.iter(|| fox_derivative(black_box(&relator), 0))
    });
    c.bench_function("twisted matrix, 200-letter relator", |b| {
        b.iter(|| twisted_matrix(black_box(&p), black_box(&beta3)).unwrap())
    });
}

fn bench_classification(c: &mut Criterion) {
    let p = example_k1(9).unwrap();
    c.bench_function("classify example-k1(9)", |b| {
        b.iter(|| classify_presentation(black_box(&p), false))
    });
}

fn bench_parser(c: &mut Criterion) {
    let text = case3_word(3, 3, 30).unwrap().to_string();
    c.bench_function("parse 150-syllable presentation", |b| {
        b.iter(|| Presentation::parse(black_box(&text)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_smith_normal_form,
    bench_fox_calculus,
    bench_classification,
    bench_parser
);
criterion_main!(benches);
