//! Benchmarks for the exact and numerical pipelines on corpus diagrams.

use std::hint::black_box;

use criterion::Criterion;
use repknot::cohomology::cocycle_report;
use repknot::corpus::default_corpus;
use repknot::dihedral::{enumerate_classes, lift_to_su2};
use repknot::presentation::{invariants, wirtinger};
use repknot::variety::{scan, ScanOptions};

pub fn benchmarks(c: &mut Criterion) {
    let corpus = default_corpus();
    let diagram = |name: &str| corpus.get(name).expect("bundled entry").diagram.clone();

    for name in ["3_1", "7_4", "8_19", "L5a1"] {
        let d = diagram(name);
        c.bench_function(&format!("invariants/{name}"), |b| {
            b.iter(|| invariants(black_box(&d)).unwrap())
        });
    }

    let d = diagram("7_4");
    let p = wirtinger(&d);
    c.bench_function("dihedral/7_4", |b| {
        b.iter(|| enumerate_classes(black_box(&p), 15).unwrap())
    });
    let lifts: Vec<_> = enumerate_classes(&p, 15)
        .unwrap()
        .iter()
        .map(|k| lift_to_su2(k, &p))
        .collect();
    c.bench_function("cohomology/7_4", |b| {
        b.iter(|| {
            for r in &lifts {
                black_box(cocycle_report(r, &p).unwrap());
            }
        })
    });

    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    for name in ["3_1", "8_19"] {
        let p = wirtinger(&diagram(name));
        group.bench_function(name, |b| {
            b.iter(|| scan(black_box(&p), ScanOptions::new(200, 1, true)).unwrap())
        });
    }
    group.finish();
}
