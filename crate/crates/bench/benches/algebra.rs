use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use lambdakit::lambda::LambdaAlgebra;
use lambdakit::steenrod::Strategy;
use lambdakit::twisted::{tp_divmod, Side};
use lambdakit::{FrobeniusField, SteenrodAlgebra};
use lambdakit_bench::{steenrod_words, twisted_pairs};

fn euclid(c: &mut Criterion) {
    let k = FrobeniusField::new(3, 2, Some(&[1, 0, 1])).unwrap();
    let pairs = twisted_pairs(&k, 200, 8, 7);
    c.bench_function("twisted divmod F_9 x200", |b| {
        b.iter(|| {
            for (f, g) in &pairs {
                black_box(tp_divmod(&k, f, g, Side::Left).unwrap());
            }
        })
    });
}

fn adem(c: &mut Criterion) {
    let mut group = c.benchmark_group("adem words of length 3");
    for p in [2u32, 3, 5] {
        let a = SteenrodAlgebra::new(p).unwrap();
        let words = steenrod_words(p, 3, 12);
        for strategy in [Strategy::Leftmost, Strategy::Rightmost] {
            group.bench_with_input(BenchmarkId::new(format!("{strategy:?}"), p), &words, |b, words| {
                b.iter(|| {
                    for w in words {
                        black_box(a.normalize_fp(w, strategy).unwrap());
                    }
                })
            });
        }
    }
    group.finish();
}

fn lambda_words(c: &mut Criterion) {
    let l = LambdaAlgebra::new(2).unwrap();
    let words: Vec<Vec<u32>> = (0..8).flat_map(|a| (0..8).flat_map(move |b| (0..8).map(move |c| vec![a, b, c]))).collect();
    c.bench_function("lambda normalize p=2 codes < 8", |b| {
        b.iter(|| {
            for w in &words {
                black_box(l.normalize_fp(w, Strategy::Leftmost).unwrap());
            }
        })
    });
}

criterion_group!(benches, euclid, adem, lambda_words);
criterion_main!(benches);
