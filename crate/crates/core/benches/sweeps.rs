use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use monotypy::cone::NormalSet;
use monotypy::criteria::{check_m3prime_with, classify_with, ConicalTable, MonotypyClass};
use monotypy::par::Exec;
use monotypy::search::{find_example, random_normal_set, SearchSpec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn sets(dim: usize, facets: (usize, usize), count: u64) -> Vec<NormalSet> {
    let spec = SearchSpec::new(dim, facets, MonotypyClass::StronglyMonotypic, 1, 1);
    (0..count)
        .map(|i| random_normal_set(&spec, i).unwrap())
        .collect()
}

fn conical_table(c: &mut Criterion) {
    let corpus = sets(4, (8, 9), 8);
    let mut group = c.benchmark_group("conical_table");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &corpus, |b, corpus| {
            b.iter(|| {
                corpus
                    .iter()
                    .map(|n| ConicalTable::build(n, exec).unwrap())
                    .collect::<Vec<_>>()
            })
        });
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let corpus = sets(3, (6, 8), 16);
    let mut group = c.benchmark_group("classify");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &corpus, |b, corpus| {
            b.iter(|| {
                corpus
                    .iter()
                    .map(|n| classify_with(n, exec).unwrap().class)
                    .collect::<Vec<_>>()
            })
        });
    }
    group.finish();
}

fn m3prime(c: &mut Criterion) {
    let corpus = sets(4, (7, 8), 8);
    let mut group = c.benchmark_group("m3prime");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &corpus, |b, corpus| {
            b.iter(|| {
                corpus
                    .iter()
                    .filter(|n| check_m3prime_with(n, exec).unwrap().holds)
                    .count()
            })
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let spec = SearchSpec::new(3, (4, 8), MonotypyClass::MonotypicNotStrong, 42, 200);
    let mut group = c.benchmark_group("find_example");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| find_example(&spec, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, conical_table, classification, m3prime, search);
criterion_main!(benches);
