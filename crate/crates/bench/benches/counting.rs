use std::hint::black_box;

use absq_core::{count_multinomial, count_recurrence, count_split, CountTable};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    for (k, n) in [(3usize, 100usize), (6, 100), (4, 400)] {
        let id = format!("k{k}_n{n}");
        group.bench_with_input(
            BenchmarkId::new("recurrence", &id),
            &(k, n),
            |b, &(k, n)| {
                b.iter(|| count_recurrence(black_box(k), black_box(n), &CountTable::new()))
            },
        );
        group.bench_with_input(BenchmarkId::new("split", &id), &(k, n), |b, &(k, n)| {
            b.iter(|| {
                count_split(
                    black_box(k / 2),
                    k - k / 2,
                    black_box(n),
                    &CountTable::new(),
                )
            })
        });
    }
    for (k, n) in [(3usize, 40usize), (6, 20), (8, 12)] {
        group.bench_with_input(
            BenchmarkId::new("multinomial", format!("k{k}_n{n}")),
            &(k, n),
            |b, &(k, n)| b.iter(|| count_multinomial(black_box(k), black_box(n))),
        );
    }
    group.finish();
}

criterion_group!(benches, counting);
criterion_main!(benches);
