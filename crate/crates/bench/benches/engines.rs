use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fourfold::curvature::{effective_step, evaluate};
use fourfold::schottky::{dimension_at, levels, SchottkyParams};
use fourfold::topology::{optimal_verdict, parse_expr};
use fourfold_bench::{fixture, TOPOLOGY_EXPRS};

fn curvature(c: &mut Criterion) {
    let mut g = c.benchmark_group("curvature");
    for name in ["s4", "cp2-fs", "eh"] {
        let f = fixture(name, 16);
        g.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| {
            b.iter(|| {
                for x in &f.points {
                    let h = effective_step(&f.entry.metric, x);
                    black_box(evaluate(&f.entry.metric, x, h).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn schottky(c: &mut Criterion) {
    let mut g = c.benchmark_group("schottky");
    for depth in [4, 6, 8] {
        let p = SchottkyParams::new(0.7, depth).unwrap();
        g.bench_with_input(BenchmarkId::new("levels", depth), &p, |b, p| b.iter(|| black_box(levels(p).unwrap())));
    }
    g.bench_function("dimension/depth6", |b| b.iter(|| black_box(dimension_at(black_box(0.8), 6).unwrap())));
    g.finish();
}

fn topology(c: &mut Criterion) {
    let exprs: Vec<_> = TOPOLOGY_EXPRS.iter().map(|s| parse_expr(s).unwrap()).collect();
    c.bench_function("topology/verdicts", |b| {
        b.iter(|| {
            for e in &exprs {
                black_box(optimal_verdict(e));
            }
        })
    });
    c.bench_function("topology/parse", |b| {
        b.iter(|| {
            for s in TOPOLOGY_EXPRS {
                black_box(parse_expr(s).unwrap());
            }
        })
    });
}

criterion_group!(benches, curvature, schottky, topology);
criterion_main!(benches);
