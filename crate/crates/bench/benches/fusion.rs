use criterion::{criterion_group, criterion_main, Criterion};
use fusion_core::fixed_points::{enumerate_fixed_points, generic_pairs};
use fusion_core::fusion::{fusion_table, kac_walton_table};
use fusion_core::localization::{rr_total_on, Product};
use fusion_core::sampling::level_points;
use fusion_core::RootDatum;
use std::hint::black_box;

fn datum(s: &str) -> RootDatum {
    RootDatum::new(s.parse().unwrap()).unwrap()
}

fn tables(c: &mut Criterion) {
    let a2 = datum("A2");
    let b2 = datum("B2");
    c.bench_function("verlinde A2 k=4", |b| b.iter(|| fusion_table(black_box(&a2), 4).unwrap()));
    c.bench_function("kac-walton A2 k=4", |b| b.iter(|| kac_walton_table(black_box(&a2), 4).unwrap()));
    c.bench_function("verlinde B2 k=3", |b| b.iter(|| fusion_table(black_box(&b2), 3).unwrap()));
}

fn localization(c: &mut Criterion) {
    let d = datum("B2");
    let pair = generic_pairs(&d, 6).remove(0);
    c.bench_function("enumerate B2 k=6", |b| b.iter(|| enumerate_fixed_points(black_box(&d), &pair).unwrap()));
    let records = enumerate_fixed_points(&d, &pair).unwrap();
    let points = level_points(&d, 6, 1, 20);
    c.bench_function("cartesian totals B2 k=6 x20", |b| {
        b.iter(|| {
            for tau in &points {
                black_box(rr_total_on(&d, 6, &records, tau, Product::Cartesian).unwrap());
            }
        })
    });
}

criterion_group!(benches, tables, localization);
criterion_main!(benches);
