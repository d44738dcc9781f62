//! Probe batches are embarrassingly parallel over seeds; this suite
//! compares the crate's batch executor (rayon under the default `parallel`
//! feature) against an always-sequential twin on identical workloads.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nonstrat::classify::generate_dominance_reversed_pair;
use nonstrat::elementary::{evaluate_elementary, make_max_welfare};
use nonstrat::exec::{map_trials, map_trials_sequential};
use nonstrat::model::BehavioralModel;
use nonstrat::strategic::QbrModel;
use nonstrat::{make_uniform, random_game};
use std::sync::Arc;

const TRIALS: u64 = 256;

fn welfare_invariance_trial(t: u64) -> f64 {
    let model = make_max_welfare();
    let g = random_game(&[3, 3], t);
    let out = evaluate_elementary(&model, &g, 0).expect("evaluates");
    out.prob(0)
}

fn dominance_sweep_trial(t: u64) -> f64 {
    let model = QbrModel::new(Arc::new(make_uniform()), 1.0).expect("valid precision");
    let (g, g_prime) = generate_dominance_reversed_pair(&[3, 3], 0, t).expect("valid pair");
    let a = model.behavior(&g, 0).expect("evaluates");
    let b = model.behavior(&g_prime, 0).expect("evaluates");
    a.max_norm_distance(&b)
}

fn bench_probe_batches(c: &mut Criterion) {
    let mut group = c.benchmark_group("welfare_batch");
    group.bench_function("batch_executor", |b| {
        b.iter(|| map_trials(black_box(TRIALS), welfare_invariance_trial))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| map_trials_sequential(black_box(TRIALS), welfare_invariance_trial))
    });
    group.finish();

    let mut group = c.benchmark_group("dominance_sweep");
    group.bench_function("batch_executor", |b| {
        b.iter(|| map_trials(black_box(TRIALS), dominance_sweep_trial))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| map_trials_sequential(black_box(TRIALS), dominance_sweep_trial))
    });
    group.finish();
}

criterion_group!(benches, bench_probe_batches);
criterion_main!(benches);
