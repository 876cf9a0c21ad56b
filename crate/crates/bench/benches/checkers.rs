use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use indcomplex_core::{
    alpha, independence_complex, is_cohen_macaulay, reduced_homology, shelling,
    vertex_decomposition, CirculantSpec, Complex, Graph, HomologyOptions, SearchOptions,
};

fn circulant(spec: &str) -> Graph {
    spec.parse::<CirculantSpec>().unwrap().graph()
}

fn ind(spec: &str) -> Complex {
    independence_complex(&circulant(spec)).unwrap()
}

fn construction(c: &mut Criterion) {
    let g24 = circulant("C24(1,6,12)");
    c.bench_function("independence_complex C24(1,6,12)", |b| {
        b.iter(|| independence_complex(black_box(&g24)).unwrap())
    });
    let p = circulant("C5(1)").lex_product(&circulant("C5(1)"));
    c.bench_function("alpha C5[C5]", |b| b.iter(|| alpha(black_box(&p)).unwrap()));
}

fn checkers(c: &mut Criterion) {
    let opts = SearchOptions::default();
    let (c16, c20) = (ind("C16(1,4,8)"), ind("C20(1,5,10)"));
    c.bench_function("shelling C16(1,4,8)", |b| b.iter(|| shelling(black_box(&c16), &opts).unwrap()));
    c.bench_function("shelling C20(1,5,10)", |b| b.iter(|| shelling(black_box(&c20), &opts).unwrap()));
    c.bench_function("vd refutation C16(1,4,8)", |b| {
        b.iter(|| vertex_decomposition(black_box(&c16), &opts).unwrap())
    });
    let sym = SearchOptions {
        rotation_symmetry: true,
        ..SearchOptions::default()
    };
    c.bench_function("vd refutation C16(1,4,8) with rotations", |b| {
        b.iter(|| vertex_decomposition(black_box(&c16), &sym).unwrap())
    });
}

fn homology(c: &mut Criterion) {
    let opts = HomologyOptions::default();
    let c16 = ind("C16(1,4,8)");
    c.bench_function("reduced_homology C16(1,4,8)", |b| {
        b.iter(|| reduced_homology(black_box(&c16), &opts).unwrap())
    });
    c.bench_function("cohen_macaulay C16(1,4,8)", |b| {
        b.iter(|| is_cohen_macaulay(black_box(&c16), &opts).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = construction, checkers, homology
}
criterion_main!(benches);
