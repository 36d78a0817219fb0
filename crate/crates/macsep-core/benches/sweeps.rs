//! Compares the parallel and sequential sweep paths on the two workloads
//! the CLI runs: per-cell bound verdicts over a distortion grid, and
//! per-column frontier bisections.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use macsep_core::bounds::{self, BoundId};
use macsep_core::gaussian::rd::DistortionPair;
use macsep_core::gaussian::source::GaussianScenario;
use macsep_core::parallel::{par_map, seq_map};

fn grid_cells(sc: GaussianScenario) -> Vec<DistortionPair> {
    let mut cells = Vec::new();
    let a = 1.0 - sc.rho;
    for i in 0..96 {
        let d2 = 0.05 + 0.01 * i as f64;
        for j in 0..40 {
            let d1 = a * (0.02 + 0.024 * j as f64);
            cells.push(DistortionPair::new(d1, d2).unwrap());
        }
    }
    cells
}

fn cell_margins(dp: &DistortionPair, sc: GaussianScenario) -> f64 {
    let mut acc = 0.0;
    for bound in [BoundId::Cor6, BoundId::Lt, BoundId::Lw] {
        acc += bounds::verdict(bound, *dp, sc).unwrap().margin;
    }
    acc
}

fn bench_verdict_grid(c: &mut Criterion) {
    let sc = GaussianScenario::new(0.5, 2.0).unwrap();
    let cells = grid_cells(sc);
    let mut group = c.benchmark_group("verdict_grid");
    group.sample_size(20);
    group.bench_with_input(BenchmarkId::new("par", cells.len()), &cells, |b, cells| {
        b.iter(|| par_map(cells, |dp| cell_margins(dp, sc)))
    });
    group.bench_with_input(BenchmarkId::new("seq", cells.len()), &cells, |b, cells| {
        b.iter(|| seq_map(cells, |dp| cell_margins(dp, sc)))
    });
    group.finish();
}

fn bench_frontier_columns(c: &mut Criterion) {
    let sc = GaussianScenario::new(0.5, 2.0).unwrap();
    let columns: Vec<f64> = (0..96).map(|i| 0.05 + 0.01 * i as f64).collect();
    let work = |d2: &f64| {
        let mut acc = 0.0;
        for bound in [BoundId::Cor6, BoundId::Lt, BoundId::Lw] {
            let d1 = bounds::frontier(bound, *d2, sc, 1e-10).unwrap();
            if d1.is_finite() {
                acc += d1;
            }
        }
        acc
    };
    let mut group = c.benchmark_group("frontier_columns");
    group.sample_size(20);
    group.bench_with_input(
        BenchmarkId::new("par", columns.len()),
        &columns,
        |b, cols| b.iter(|| par_map(cols, work)),
    );
    group.bench_with_input(
        BenchmarkId::new("seq", columns.len()),
        &columns,
        |b, cols| b.iter(|| seq_map(cols, work)),
    );
    group.finish();
}

criterion_group!(benches, bench_verdict_grid, bench_frontier_columns);
criterion_main!(benches);
