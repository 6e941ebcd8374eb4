use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use xxpaths::correlators::{multi_particle_g, persistence_of_string, trig_path_sum};
use xxpaths::symmetric::{cauchy_binet_closed_form, cauchy_binet_sum, schur_determinant, SchurTableaux};
use xxpaths::{ChainGeometry, Partition, C64};
use xxpaths_bench::{limits, points};

fn schur(c: &mut Criterion) {
    let lambda = Partition::new(vec![5, 3, 2, 2]).unwrap();
    let x = points(4, 1);
    let tableaux = SchurTableaux::enumerate(&lambda, 4, &limits()).unwrap();
    let mut group = c.benchmark_group("schur");
    group.bench_function("determinant", |b| b.iter(|| schur_determinant(&lambda, black_box(&x))));
    group.bench_function("tableaux", |b| b.iter(|| tableaux.evaluate(black_box(&x))));
    group.finish();
}

fn cauchy_binet(c: &mut Criterion) {
    let (x, y) = (points(3, 2), points(3, 3));
    let mut group = c.benchmark_group("cauchy_binet");
    for upper in [3, 5] {
        group.bench_with_input(BenchmarkId::new("sum", upper), &upper, |b, &u| {
            b.iter(|| cauchy_binet_sum(&x, &y, u, 0, &limits()))
        });
        group.bench_with_input(BenchmarkId::new("closed_form", upper), &upper, |b, &u| {
            b.iter(|| cauchy_binet_closed_form(&x, &y, u, 0))
        });
    }
    group.finish();
}

fn trig_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("trig_path_sum");
    for (m, j) in [(6, vec![2, 1, 0]), (9, vec![3, 2, 1, 0])] {
        let g = ChainGeometry::new(m, j.len()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("M{m}N{}", j.len())), &j, |b, j| {
            b.iter(|| trig_path_sum(&g, j, j, 8, &limits()))
        });
    }
    group.finish();
}

fn correlators(c: &mut Criterion) {
    let g = ChainGeometry::new(7, 3).unwrap();
    let t = C64::new(0.5, 0.0);
    c.bench_function("multi_particle_g/M7N3", |b| {
        b.iter(|| multi_particle_g(&g, &[6, 3, 1], &[7, 4, 0], black_box(t), &limits()))
    });
    let mut group = c.benchmark_group("persistence");
    for (m, n_down) in [(6, 2), (9, 3)] {
        let g = ChainGeometry::new(m, n_down).unwrap();
        group.bench_function(BenchmarkId::from_parameter(format!("M{m}N{n_down}")), |b| {
            b.iter(|| persistence_of_string(&g, 1, black_box(t), &limits()))
        });
    }
    group.finish();
}

criterion_group!(benches, schur, cauchy_binet, trig_sums, correlators);
criterion_main!(benches);
