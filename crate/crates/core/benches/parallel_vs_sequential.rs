use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use singidx::indices::{colengths, colengths_sequential, index_elk};
use singidx::par;
use singidx::quadratic::VectorFieldGerm;
use singidx::{parse_poly, IdealPresentation, Rational, RationalMatrix, RingContext};

fn change(n: usize, shift: i64) -> RationalMatrix {
    let q = |v: i64| Rational::from_integer(v.into());
    RationalMatrix::from_rows(
        (0..n).map(|i| (0..n).map(|j| q(if i == j { 1 } else if j > i { (shift + (i + j) as i64) % 3 } else { 0 })).collect()).collect(),
    )
}

/// Three-variable ideals of colength 8 to 60 moved by unipotent coordinate
/// changes.
fn ideals(count: usize) -> Vec<IdealPresentation> {
    let r = RingContext::new(["x", "y", "z"]).unwrap();
    (0..count)
        .map(|k| {
            let (a, b, c) = (2 + k % 4, 2 + (k / 4) % 3, 2 + (k / 12) % 3);
            let gens = [
                format!("x^{a} + y*z^2"),
                format!("y^{b} + x^2*z"),
                format!("z^{c} + x*y"),
            ];
            let a = change(3, k as i64);
            let gens: Vec<_> = gens.iter().map(|g| parse_poly(g, &r).unwrap().substitute_linear(&a).unwrap()).collect();
            IdealPresentation::new(&r, gens).unwrap()
        })
        .collect()
}

fn fields(count: usize) -> Vec<VectorFieldGerm> {
    let r = RingContext::new(["x", "y"]).unwrap();
    (0..count)
        .map(|k| {
            let a = 2 + k % 5;
            let b = 2 + (k / 5) % 4;
            let comps = [format!("x^{a} - {k}*y^2"), format!("y^{b} + x*y")];
            VectorFieldGerm::new(&r, comps.iter().map(|c| parse_poly(c, &r).unwrap()).collect()).unwrap()
        })
        .collect()
}

fn bench_colengths(c: &mut Criterion) {
    let mut group = c.benchmark_group("colengths");
    group.sample_size(10);
    for count in [8, 32] {
        let batch = ideals(count);
        group.bench_with_input(BenchmarkId::new("parallel", count), &batch, |b, batch| {
            b.iter(|| colengths(black_box(batch)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", count), &batch, |b, batch| {
            b.iter(|| colengths_sequential(black_box(batch)))
        });
    }
    group.finish();
}

fn bench_elk(c: &mut Criterion) {
    let mut group = c.benchmark_group("elk_index");
    group.sample_size(10);
    let batch = fields(20);
    group.bench_function("parallel", |b| b.iter(|| par::map(black_box(&batch), |x| index_elk(x).map(|i| i.value))));
    group.bench_function("sequential", |b| {
        b.iter(|| par::map_sequential(black_box(&batch), |x| index_elk(x).map(|i| i.value)))
    });
    group.finish();
}

criterion_group!(benches, bench_colengths, bench_elk);
criterion_main!(benches);
