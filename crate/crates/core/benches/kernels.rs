use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use charp_core::algebra::GaloisField;
use charp_core::covers::{genericity_sample, GenericityParams};
use charp_core::desing::desingularize;
use charp_core::heights::{vojta_violation_demo, VojtaParams};
use charp_core::Exec;

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn genericity(c: &mut Criterion) {
    let f = GaloisField::get(3, 5).unwrap();
    let params = GenericityParams { dim: 1, d: 1, n: 1, trials: 64, seed: 1 };
    let mut g = c.benchmark_group("genericity_f243");
    g.sample_size(10);
    for (name, exec) in EXECS {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| genericity_sample(f, black_box(params), exec).unwrap())
        });
    }
    g.finish();
}

fn desing(c: &mut Criterion) {
    let mut g = c.benchmark_group("desingularize_p13_n4");
    g.sample_size(10);
    for (name, exec) in EXECS {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| desingularize(black_box(13), 4, exec).unwrap())
        });
    }
    g.finish();
}

fn vojta(c: &mut Criterion) {
    let mut g = c.benchmark_group("vojta_standard");
    g.sample_size(10);
    for (name, exec) in EXECS {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| vojta_violation_demo(black_box(VojtaParams::standard()), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, genericity, desing, vojta);
criterion_main!(benches);
