//! Compare the rayon-parallel scans against the sequential fallbacks, on a
//! synthetic fold and on a real group-scan workload.

use criterion::{criterion_group, criterion_main, Criterion};

use e7check::par;
use e7check::rootdata::{self, CartanType};
use e7check::weyl;

fn bench_index_fold(c: &mut Criterion) {
    let n = 1 << 16;
    let mut g = c.benchmark_group("index_fold_vec");
    g.bench_function("parallel", |b| {
        b.iter(|| {
            par::index_fold_vec(n, 8, |acc, i| {
                acc[i % 8] += (i as i64).wrapping_mul(2654435761);
            })
        })
    });
    g.bench_function("sequential", |b| {
        b.iter(|| {
            par::index_fold_vec_seq(n, 8, |acc, i| {
                acc[i % 8] += (i as i64).wrapping_mul(2654435761);
            })
        })
    });
    g.finish();
}

/// Scan the whole reflection group of type D6 (23040 elements), counting
/// the involutions — the same access pattern as the normalizer scan.
fn bench_group_scan(c: &mut Criterion) {
    let rs = rootdata::build_root_system(CartanType::builtin("D6").unwrap()).unwrap();
    let store = weyl::enumerate_group(&rs, weyl::DEFAULT_BUDGET).unwrap();
    let mut g = c.benchmark_group("involution_scan_d6");
    g.bench_function("parallel", |b| {
        b.iter(|| {
            par::index_sum(store.len(), |id| {
                u64::from(store.order_of(id as u32) <= 2)
            })
        })
    });
    g.bench_function("sequential", |b| {
        b.iter(|| {
            par::index_sum_seq(store.len(), |id| {
                u64::from(store.order_of(id as u32) <= 2)
            })
        })
    });
    g.finish();
}

criterion_group!(benches, bench_index_fold, bench_group_scan);
criterion_main!(benches);
