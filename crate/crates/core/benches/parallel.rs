//! Sequential vs data-parallel execution on the heavier kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use homlab::choice::subgroups;
use homlab::experiments::{com_ft_roundtrip, pp_lift};
use homlab::library::complete_graph;
use homlab::power::TolerantPower;
use homlab::{Budgets, Exec, FiniteFilter};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn tolerant_power(c: &mut Criterion) {
    let k3 = complete_graph(3);
    let budgets = Budgets::default();
    let mut group = c.benchmark_group("tolerant_power_k3");
    for size in [4, 6] {
        let f = FiniteFilter::from_indices(size, 0..size / 2).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, size), &f, |b, f| {
                b.iter(|| TolerantPower::new(black_box(&k3), f, &budgets, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn subgroup_lattice(c: &mut Criterion) {
    let budgets = Budgets::default();
    let mut group = c.benchmark_group("subgroups_s5");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| subgroups(black_box(5), &budgets, exec).unwrap()));
    }
    group.finish();
}

fn experiment_sweeps(c: &mut Criterion) {
    let budgets = Budgets::default();
    let mut group = c.benchmark_group("experiments");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("com_ft_roundtrip", name), |b| {
            b.iter(|| com_ft_roundtrip(&budgets, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new("pp_lift", name), |b| b.iter(|| pp_lift(2, 3, &budgets, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, tolerant_power, subgroup_lattice, experiment_sweeps);
criterion_main!(benches);
