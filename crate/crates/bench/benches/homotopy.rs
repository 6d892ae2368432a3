use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use lambdakit::freelie;
use lambdakit::hopf::{self, RestrictedLie, UrPresentation};
use lambdakit::koszul::{self, ExtMethod, Flavor, Koszul, KoszulComplex};
use lambdakit::FrobeniusField;

fn koszul_complex(c: &mut Criterion) {
    let mut group = c.benchmark_group("koszul complex s<=4 t<=14");
    group.sample_size(10);
    for p in [2u32, 3] {
        let k = Koszul::new(p).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(p), &k, |b, k| {
            b.iter(|| black_box(KoszulComplex::build(k, &koszul::sphere(2), Flavor::Hat, 4, 14).unwrap().verify()))
        });
    }
    group.finish();
}

fn ext_closed(c: &mut Criterion) {
    let k = Koszul::new(2).unwrap();
    c.bench_function("ext closed form p=2 l=3 s<=6 t<=24", |b| {
        b.iter(|| black_box(koszul::ext_chart(&k, &koszul::sphere(3), Flavor::Hat, 6, 24, ExtMethod::Closed).unwrap()))
    });
}

fn lie_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("free Lie oracle stems<=4");
    group.sample_size(10);
    for (p, n) in [(2u32, 2usize), (2, 4), (3, 3)] {
        let v = freelie::sphere_model(p, 1, 5);
        group.bench_with_input(BenchmarkId::new(format!("p{p}"), n), &v, |b, v| {
            b.iter(|| black_box(freelie::homotopy_oracle(v, n, 4).unwrap()))
        });
    }
    group.finish();
}

fn bar(c: &mut Criterion) {
    let k = FrobeniusField::prime(2).unwrap();
    let ur = UrPresentation::new(RestrictedLie::heisenberg(k).unwrap(), 8).unwrap();
    c.bench_function("bar tor heisenberg s<=3", |b| b.iter(|| black_box(hopf::bar_tor(&ur, 3).unwrap())));
}

criterion_group!(benches, koszul_complex, ext_closed, lie_oracle, bar);
criterion_main!(benches);
