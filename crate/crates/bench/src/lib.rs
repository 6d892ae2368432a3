//! Fixed inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lambdakit::steenrod;
use lambdakit::{FrobeniusField, TwistedPoly};

/// Every word of `len` valid Steenrod indices `<= max`.
pub fn steenrod_words(p: u32, len: usize, max: u32) -> Vec<Vec<u32>> {
    let indices: Vec<u32> = (1..=max).filter(|&i| steenrod::is_valid_index(p, i)).collect();
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                indices.iter().map(move |&i| {
                    let mut next = w.clone();
                    next.push(i);
                    next
                })
            })
            .collect();
    }
    words
}

/// Seeded random pairs `(f, g)` with `g != 0` and degrees at most `deg`.
pub fn twisted_pairs(k: &FrobeniusField, count: usize, deg: usize, seed: u64) -> Vec<(TwistedPoly, TwistedPoly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poly = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(1..=deg + 1);
        TwistedPoly::new((0..n).map(|_| k.element_from_index(rng.gen_range(0..k.order()))).collect())
    };
    (0..count)
        .map(|_| {
            let f = poly(&mut rng);
            let mut g = poly(&mut rng);
            while g.is_zero() {
                g = poly(&mut rng);
            }
            (f, g)
        })
        .collect()
}
