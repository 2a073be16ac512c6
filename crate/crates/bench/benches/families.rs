use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orthodontia::families::{family_table, lascoux, script_g, Family};
use orthodontia::lascouxbasis::{flipped_specialization, lascoux_expand};
use orthodontia::pipedreams::pipe_dream_table;
use orthodontia::{InnerOmega, LascouxCache};
use orthodontia_bench::{lascoux_fixtures, rothe_fixtures};

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("tables");
    g.sample_size(10);
    g.bench_function("double_grothendieck_s5", |b| b.iter(|| family_table(Family::DoubleGrothendieck, 5)));
    g.bench_function("pipe_dreams_s5", |b| b.iter(|| pipe_dream_table(5).unwrap()));
    g.finish();
}

fn orthodontia(c: &mut Criterion) {
    let mut g = c.benchmark_group("script_g");
    for (name, d) in rothe_fixtures() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| {
            b.iter(|| script_g(d, InnerOmega::Barred).unwrap())
        });
    }
    g.finish();
}

fn expansion(c: &mut Criterion) {
    let mut g = c.benchmark_group("lascoux_expand");
    for (name, d) in rothe_fixtures() {
        let f = flipped_specialization(&d).unwrap();
        g.bench_with_input(BenchmarkId::new("rothe", name), &f, |b, f| {
            b.iter(|| lascoux_expand(f, &LascouxCache::new()).unwrap())
        });
    }
    for alpha in lascoux_fixtures() {
        g.bench_with_input(BenchmarkId::new("lascoux", alpha.to_string()), &alpha, |b, a| b.iter(|| lascoux(a)));
    }
    g.finish();
}

criterion_group!(benches, tables, orthodontia, expansion);
criterion_main!(benches);
