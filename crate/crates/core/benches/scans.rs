use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gradval::par::Strategy;
use gradval::pattern::oracle::{stable_by_scan, total_by_scan, Window};
use gradval::{BoundPattern, Ext, FieldDescriptor, FiniteGroup, GSkewfield, Groupoid, PatternKind};

fn patterns() -> Vec<(&'static str, BoundPattern)> {
    let f = FieldDescriptor::padic(5);
    let m3 = Arc::new(GSkewfield::untwisted(f, Arc::new(Groupoid::delta(3))));
    let z2 = Groupoid::product_with_delta(&FiniteGroup::cyclic(2), 2).unwrap();
    let z2 = Arc::new(GSkewfield::untwisted(f, Arc::new(z2)));
    vec![
        ("M3", BoundPattern::new(m3, vec![Ext::ZERO; 9], PatternKind::Subring).unwrap()),
        ("Z2[Delta2]", BoundPattern::new(z2, vec![Ext::ZERO; 8], PatternKind::Subring).unwrap()),
    ]
}

fn scans(c: &mut Criterion) {
    let window = Window::DEFAULT;
    for (name, p) in patterns() {
        let mut group = c.benchmark_group(format!("scan/{name}"));
        group.sample_size(10);
        for strategy in [Strategy::Sequential, Strategy::Parallel] {
            let label = format!("{strategy:?}");
            group.bench_with_input(BenchmarkId::new("total", &label), &strategy, |b, &s| {
                b.iter(|| total_by_scan(black_box(&p), window, s).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("stable", &label), &strategy, |b, &s| {
                b.iter(|| stable_by_scan(black_box(&p), window, s).unwrap())
            });
        }
        group.finish();
    }
}

criterion_group!(benches, scans);
criterion_main!(benches);
