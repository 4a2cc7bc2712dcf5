use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use specht_bench::{proxy_field, shape};
use specht_core::betti::koszul_betti;
use specht_core::ideal::{equal_up_to_degree, IdealSpec};
use specht_core::specht::{independence_rank, straighten_quasi_h};
use specht_core::variety::{condition_star, enumerate_set_partitions, minimal_primes};
use specht_core::{Rationals, Tableau};

fn components(c: &mut Criterion) {
    let f = proxy_field();
    let mut g = c.benchmark_group("components");
    g.sample_size(10);
    // Fresh ideals each iteration so the per-degree cache does not hide the work.
    g.bench_function("ink_6_4_deg6", |b| {
        b.iter_batched(
            || IdealSpec::intersection_ink(f, 6, 4).unwrap(),
            |i| black_box(i.component(6).unwrap().dimension()),
            BatchSize::SmallInput,
        )
    });
    g.bench_function("specht_3_3_deg7", |b| {
        b.iter_batched(
            || IdealSpec::specht(f, &shape("3,3")).unwrap(),
            |i| black_box(i.component(7).unwrap().dimension()),
            BatchSize::SmallInput,
        )
    });
    g.bench_function("radical_check_3_2_deg6", |b| {
        b.iter(|| {
            let lam = shape("3,2");
            let a = IdealSpec::specht(f, &lam).unwrap();
            let i = IdealSpec::intersection_ink(f, 5, 4).unwrap();
            black_box(equal_up_to_degree(&a, &i, 6).unwrap().equal)
        })
    });
    g.finish();
}

fn combinatorics(c: &mut Criterion) {
    let mut g = c.benchmark_group("combinatorics");
    g.bench_function("catalan_rank_4_4", |b| {
        b.iter(|| black_box(independence_rank(&shape("4,4"), Rationals).unwrap()))
    });
    let t = Tableau::parse("5,1,3,2/7,6,4").unwrap();
    g.bench_function("straighten_4_3", |b| b.iter(|| black_box(straighten_quasi_h(&t, &[1]).unwrap().len())));
    let parts = enumerate_set_partitions(7);
    let lam = shape("3,2,2");
    g.bench_function("condition_star_bell7", |b| {
        b.iter(|| black_box(parts.iter().filter(|p| condition_star(p, &lam).unwrap()).count()))
    });
    g.bench_function("minimal_primes_4_2_1", |b| b.iter(|| black_box(minimal_primes(&shape("4,2,1")).unwrap().len())));
    g.finish();
}

fn homology(c: &mut Criterion) {
    let f = proxy_field();
    let mut g = c.benchmark_group("homology");
    g.sample_size(10);
    g.bench_function("betti_4_2", |b| {
        b.iter(|| {
            let lam = shape("4,2");
            let i = IdealSpec::specht(f, &lam).unwrap();
            black_box(koszul_betti(&i, lam.specht_degree() + lam.n()).unwrap().totals())
        })
    });
    g.finish();
}

criterion_group!(benches, components, combinatorics, homology);
criterion_main!(benches);
