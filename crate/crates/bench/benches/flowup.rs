use criterion::{criterion_group, criterion_main, Criterion};
use pinball_bench::{full_classes, group};
use pinball_core::flowup::{hermite_form, linearly_independent};
use pinball_core::LieType;

fn modules(c: &mut Criterion) {
    let mut grp = c.benchmark_group("flowup");
    grp.sample_size(10);
    for (lie, rank) in [(LieType::A, 2), (LieType::A, 3), (LieType::B, 2)] {
        let g = group(lie, rank);
        let classes = full_classes(&g);
        let order: Vec<usize> = (0..g.order()).collect();
        grp.bench_function(format!("hermite_{lie}{rank}"), |b| {
            b.iter(|| hermite_form(&classes, &order).expect("hermite form"))
        });
        grp.bench_function(format!("independence_{lie}{rank}"), |b| b.iter(|| linearly_independent(&classes)));
    }
    grp.finish();
}

criterion_group!(benches, modules);
criterion_main!(benches);
