use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use critset::canon::atlas;
use critset::critical::four_params_with;
use critset::sudoku::{mnc_exhaustive, trial_campaign};
use critset::{Execution, Graph, Limits};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn four_params(c: &mut Criterion) {
    let lim = Limits::default();
    let k3 = Graph::complete(3);
    let graphs = [("C11", Graph::cycle(11).unwrap()), ("K3xK3", k3.cartesian_product(&k3))];
    let mut group = c.benchmark_group("four_params");
    group.sample_size(10);
    for (name, g) in &graphs {
        for (mode_name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(*name, mode_name), g, |b, g| {
                b.iter(|| four_params_with(black_box(g), &lim, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn atlas_scan(c: &mut Criterion) {
    let lim = Limits::default();
    let mut group = c.benchmark_group("atlas6_scan");
    group.sample_size(10);
    for (mode_name, mode) in MODES {
        group.bench_function(mode_name, |b| {
            b.iter(|| {
                let graphs = atlas(6, mode).unwrap();
                critset::exec::map(mode, &graphs, |g| four_params_with(g, &lim, Execution::Sequential).unwrap().olcs)
            })
        });
    }
    group.finish();
}

fn sudoku(c: &mut Criterion) {
    let mut group = c.benchmark_group("sudoku");
    group.sample_size(10);
    for (mode_name, mode) in MODES {
        group.bench_function(BenchmarkId::new("trials_n3_x20", mode_name), |b| {
            b.iter(|| trial_campaign(3, 20, black_box(7), mode).unwrap())
        });
        group.bench_function(BenchmarkId::new("mnc_n2_symmetry", mode_name), |b| {
            b.iter(|| mnc_exhaustive(2, true, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, four_params, atlas_scan, sudoku);
criterion_main!(benches);
