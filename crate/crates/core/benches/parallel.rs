use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qwmc::counter::{count_weighted_with, CountOptions};
use qwmc::encode::amplitudes_wmc;
use qwmc::random::{full_gate_set_circuit, rng, toffoli_h_circuit, weighted_cnf};
use qwmc::statevector::simulate_with;
use qwmc::Execution;

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn statevector(c: &mut Criterion) {
    let mut group = c.benchmark_group("statevector");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(5));
    for n in [16, 20] {
        let circ = full_gate_set_circuit(&mut rng(1), n, 40);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &circ, |b, circ| {
                b.iter(|| simulate_with(black_box(circ), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn counter(c: &mut Criterion) {
    let mut group = c.benchmark_group("counter");
    group.sample_size(10);
    for vars in [40u32, 60] {
        let f = weighted_cnf(&mut rng(2), vars, vars as usize, 4);
        for (name, exec) in STRATEGIES {
            let opts = CountOptions {
                exec,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, vars), &f, |b, f| {
                b.iter(|| count_weighted_with(black_box(f), &opts))
            });
        }
    }
    group.finish();
}

fn wmc_amplitudes(c: &mut Criterion) {
    let mut group = c.benchmark_group("wmc_amplitudes");
    group.sample_size(10);
    for n in [6, 8] {
        let circ = toffoli_h_circuit(&mut rng(3), n, 16);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &circ, |b, circ| {
                b.iter(|| amplitudes_wmc(black_box(circ), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, statevector, counter, wmc_amplitudes);
criterion_main!(benches);
