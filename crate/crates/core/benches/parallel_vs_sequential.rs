use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use elliptic_bohr::coefficients::{run_campaign, CampaignConfig};
use elliptic_bohr::extremal::{argmax_on_circle, sup_trace, trace_radius, ExtremalFamily, ExtremalFunction, DEFAULT_TOL};
use elliptic_bohr::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn campaign(c: &mut Criterion) {
    let mut group = c.benchmark_group("campaign");
    group.sample_size(10);
    for count in [64usize, 256] {
        let config = CampaignConfig::new(0.15, count);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, count), &config, |b, cfg| {
                b.iter(|| run_campaign(black_box(cfg), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn argmax(c: &mut Criterion) {
    let mut group = c.benchmark_group("argmax_on_circle");
    let f = ExtremalFunction::new(ExtremalFamily::Phi2, trace_radius(12), 0.2, DEFAULT_TOL).unwrap();
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| argmax_on_circle(black_box(&f), exec)));
    }
    group.finish();
}

fn trace(c: &mut Criterion) {
    let mut group = c.benchmark_group("sup_trace");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| sup_trace(ExtremalFamily::Phi1, black_box(0.1), 4, 16, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, campaign, argmax, trace);
criterion_main!(benches);
