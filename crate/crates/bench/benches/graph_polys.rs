use coprime_census::graphpoly::{compute_polynomial, PolyKind, PolyOptions, SubsetMethod};
use coprime_census::CoprimalityGraph;
use coprime_census_bench::fixtures;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn subset_methods(c: &mut Criterion) {
    let mut graphs = fixtures();
    graphs.push(("K6", CoprimalityGraph::complete(6).unwrap()));
    let mut group = c.benchmark_group("q_g");
    for (name, g) in &graphs {
        for method in [SubsetMethod::Direct, SubsetMethod::GrayCode] {
            let opts = PolyOptions { method, ..Default::default() };
            group.bench_with_input(BenchmarkId::new(format!("{method:?}"), name), g, |b, g| {
                b.iter(|| compute_polynomial(g, PolyKind::Signed, opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, subset_methods);
criterion_main!(benches);
