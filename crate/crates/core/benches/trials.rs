use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use listcolour::graph::cycle_power;
use listcolour::{mc_colourable, Execution, McOptions};

fn trials(c: &mut Criterion) {
    let g = cycle_power(4096, 2).unwrap();
    let mut group = c.benchmark_group("mc_colourable");
    group.sample_size(10);
    for (name, exec) in [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ] {
        for m in [8u32, 64] {
            let opts = McOptions {
                exec,
                ..McOptions::new(2, m, 64, 1)
            };
            group.bench_with_input(BenchmarkId::new(name, m), &opts, |b, opts| {
                b.iter(|| {
                    mc_colourable(&g, "cyclepow:4096:2", opts)
                        .unwrap()
                        .record
                        .successes
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, trials);
criterion_main!(benches);
