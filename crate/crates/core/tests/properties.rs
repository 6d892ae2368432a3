//! Property tests for the structural invariants of each module.

use std::collections::BTreeMap;

use proptest::prelude::*;

use lambdakit::freelie::{self, LieOperad};
use lambdakit::hopf::{self, RestrictedLie, UrPresentation};
use lambdakit::koszul::{self, Koszul};
use lambdakit::lambda::{self, LambdaAlgebra};
use lambdakit::steenrod::{self, Strategy, UnstableFlavor};
use lambdakit::twisted::{tp_add, tp_divmod, tp_mul, Side};
use lambdakit::{FPModule, FieldElement, FrobeniusField, SteenrodAlgebra, TwistedPoly};

fn field(which: usize) -> FrobeniusField {
    match which {
        0 => FrobeniusField::prime(2).unwrap(),
        1 => FrobeniusField::new(2, 2, Some(&[1, 1, 1])).unwrap(),
        2 => FrobeniusField::new(3, 2, Some(&[1, 0, 1])).unwrap(),
        _ => FrobeniusField::new(2, 3, Some(&[1, 1, 0, 1])).unwrap(),
    }
}

fn element(k: &FrobeniusField, idx: u64) -> FieldElement {
    k.element_from_index(idx % k.order())
}

fn poly(k: &FrobeniusField, idx: &[u64]) -> TwistedPoly {
    TwistedPoly::new(idx.iter().map(|&i| element(k, i)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_is_a_ring_map(which in 0usize..4, a in any::<u64>(), b in any::<u64>(), s in -9i64..=9) {
        let k = field(which);
        let (x, y) = (element(&k, a), element(&k, b));
        prop_assert_eq!(k.frobenius(k.add(x, y), 1), k.add(k.frobenius(x, 1), k.frobenius(y, 1)));
        prop_assert_eq!(k.frobenius(k.mul(x, y), 1), k.mul(k.frobenius(x, 1), k.frobenius(y, 1)));
        prop_assert_eq!(k.frobenius(x, 1), k.pow(x, k.p() as u64));
        prop_assert_eq!(k.frobenius(k.frobenius(x, s), -s), x);
    }

    #[test]
    fn euclidean_roundtrip(which in 0usize..4, f in prop::collection::vec(any::<u64>(), 0..9), g in prop::collection::vec(any::<u64>(), 1..9)) {
        let k = field(which);
        let (f, mut g) = (poly(&k, &f), poly(&k, &g));
        if g.is_zero() {
            g = TwistedPoly::constant(k.one());
        }
        for side in [Side::Left, Side::Right] {
            let (q, r) = tp_divmod(&k, &f, &g, side).unwrap();
            let prod = match side {
                Side::Left => tp_mul(&k, &q, &g),
                Side::Right => tp_mul(&k, &g, &q),
            };
            prop_assert_eq!(tp_add(&k, &prod, &r), f.clone());
            prop_assert!(r.degree().map_or(true, |d| d < g.degree().unwrap()));
        }
    }

    #[test]
    fn normal_form_matches_raw_quotients(which in 0usize..3, gens in 1usize..=3, entries in prop::collection::vec(prop::collection::vec(any::<u64>(), 0..5), 0..9)) {
        let k = field(which);
        let relations: Vec<Vec<TwistedPoly>> = entries.chunks(gens).filter(|c| c.len() == gens).map(|row| row.iter().map(|e| poly(&k, e)).collect()).collect();
        let m = FPModule::new(k.clone(), gens, relations).unwrap();
        for n in 1..=10 {
            prop_assert_eq!(m.quotient_dim_raw(n), m.normal_form().quotient_dim(n));
        }
    }

    #[test]
    fn completion_is_idempotent(which in 0usize..3, free in 0usize..2, torsion in prop::collection::vec(1usize..6, 0..3)) {
        let k = field(which);
        let m = FPModule::from_diagonal(k.clone(), free, &torsion);
        let c = m.derived_completion(12).unwrap();
        prop_assert!(c.l1_is_zero());
        let again = c.l0_module(&k).derived_completion(12).unwrap();
        prop_assert!(again.l1_is_zero());
        prop_assert_eq!(again.l0_tower, c.l0_tower);
    }

    /// Split sequences `0 → M' → M' ⊕ M'' → M'' → 0` from diagonal data:
    /// the alternating sum of L1 and L0 truncation dims vanishes.
    #[test]
    fn six_term_alternating_sum(free1 in 0usize..2, t1 in prop::collection::vec(1usize..5, 0..3), free2 in 0usize..2, t2 in prop::collection::vec(1usize..5, 0..3)) {
        let k = field(0);
        let a = FPModule::from_diagonal(k.clone(), free1, &t1).derived_completion(10).unwrap();
        let c = FPModule::from_diagonal(k.clone(), free2, &t2).derived_completion(10).unwrap();
        let t: Vec<usize> = t1.iter().chain(&t2).copied().collect();
        let b = FPModule::from_diagonal(k, free1 + free2, &t).derived_completion(10).unwrap();
        for j in 0..10 {
            let l1 = |r: &lambdakit::twisted::CompletionResult| r.l1_tower.get(j).copied().unwrap_or(0) as i64;
            let l0 = |r: &lambdakit::twisted::CompletionResult| r.l0_tower[j] as i64;
            prop_assert_eq!(l1(&a) - l1(&b) + l1(&c) - l0(&a) + l0(&b) - l0(&c), 0);
        }
    }

    #[test]
    fn steenrod_strategies_agree(p in prop::sample::select(vec![2u32, 3, 5]), raw in prop::collection::vec(1u32..=20, 1..=4)) {
        let a = SteenrodAlgebra::new(p).unwrap();
        let word: Vec<u32> = raw.into_iter().filter(|&i| steenrod::is_valid_index(p, i)).collect();
        prop_assert_eq!(a.normalize_fp(&word, Strategy::Leftmost).unwrap(), a.normalize_fp(&word, Strategy::Rightmost).unwrap());
    }

    #[test]
    fn lambda_strategies_agree(p in prop::sample::select(vec![2u32, 3, 5]), raw in prop::collection::vec(0u32..=20, 1..=4)) {
        let l = LambdaAlgebra::new(p).unwrap();
        let word: Vec<u32> = raw.into_iter().filter(|&c| lambda::is_valid_code(p, c)).collect();
        let left = l.normalize_fp(&word, Strategy::Leftmost).unwrap();
        prop_assert_eq!(&left, &l.normalize_fp(&word, Strategy::Rightmost).unwrap());
        // same bidegree, admissible terms only
        for w in left.keys() {
            prop_assert_eq!(w.len(), word.len());
            prop_assert_eq!(w.iter().sum::<u32>(), word.iter().sum::<u32>());
            prop_assert!(lambda::LambdaMonomial::new(w.clone()).is_admissible(p));
        }
    }

    #[test]
    fn steenrod_semilinearity(which in 0usize..4, raw in prop::collection::vec(1u32..=12, 1..=3), a in any::<u64>(), c in any::<u64>()) {
        let k = field(which);
        let alg = SteenrodAlgebra::new(k.p()).unwrap();
        let word: Vec<u32> = raw.into_iter().filter(|&i| steenrod::is_valid_index(k.p(), i)).collect();
        let (a, c) = (element(&k, a), element(&k, c));
        let direct = alg.adem_normalize(&k, &word, k.mul(a, c)).unwrap();
        let scaled: BTreeMap<Vec<u32>, FieldElement> = alg
            .adem_normalize(&k, &word, c)
            .unwrap()
            .terms
            .into_iter()
            .map(|(w, x)| (w, k.mul(a, x)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        prop_assert_eq!(direct.terms, scaled);
    }

    #[test]
    fn phi_is_anti_multiplicative(p in prop::sample::select(vec![2u32, 3]), u in prop::collection::vec(1u32..=13, 1..=2), v in prop::collection::vec(1u32..=13, 1..=2)) {
        let k = Koszul::new(p).unwrap();
        let valid = |w: Vec<u32>| -> Vec<u32> { w.into_iter().filter(|&i| steenrod::is_valid_index(p, i)).collect() };
        let (u, v) = (valid(u), valid(v));
        let uv: Vec<u32> = u.iter().chain(&v).copied().collect();
        let left: BTreeMap<Vec<u32>, u32> = k.k_normalize(&uv).unwrap().into_iter().map(|(w, c)| (koszul::phi(p, &w).unwrap().codes, c)).collect();
        let mut codes = koszul::phi(p, &v).unwrap().codes;
        codes.extend(koszul::phi(p, &u).unwrap().codes);
        prop_assert_eq!(left, k.lambda.normalize_fp(&codes, Strategy::Leftmost).unwrap());
    }

    #[test]
    fn abelian_pbw(p in prop::sample::select(vec![2u32, 3]), weights in prop::collection::vec(1u32..=4, 0..4)) {
        let k = FrobeniusField::prime(p).unwrap();
        let d = weights.len();
        let lie = RestrictedLie::abelian(k.clone(), Some(weights), vec![vec![k.zero(); d]; d]).unwrap();
        prop_assert!(hopf::pbw_check(&lie, 8).unwrap().passes());
    }
}

#[test]
fn steenrod_products_close_on_admissibles() {
    for p in [2, 3] {
        let a = SteenrodAlgebra::new(p).unwrap();
        for t in 1..=20 {
            for s in 1..=3 {
                let basis = a.admissible_basis(t, s);
                for s1 in 1..s {
                    for t1 in 1..t {
                        for x in a.admissible_basis(t1, s1) {
                            for y in a.admissible_basis(t - t1, s - s1) {
                                let word: Vec<u32> = x.iter().chain(&y).copied().collect();
                                for w in a.normalize_fp(&word, Strategy::Leftmost).unwrap().keys() {
                                    assert!(basis.contains(w), "p = {p}: {word:?} gives {w:?}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn st_act_respects_instability() {
    for p in [2, 3] {
        let a = SteenrodAlgebra::new(p).unwrap();
        for flavor in [UnstableFlavor::Module, UnstableFlavor::StrongModule] {
            for l in 1..=4 {
                for x in a.unstable_basis(l, flavor, 16).unwrap() {
                    for i in steenrod::valid_indices(p, 8).filter(|&i| i > 0) {
                        for (y, _) in a.st_act(i, &x).unwrap() {
                            assert!(flavor.allows(p, steenrod::excess(p, &y.word), l));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn lambda_filtration_is_monotone() {
    for p in [2, 3] {
        let a = LambdaAlgebra::new(p).unwrap();
        for l in 1..=5 {
            let small = a.l_basis(l, 12, 3);
            let big = a.l_basis(l + 1, 12, 3);
            assert!(small.iter().all(|y| big.contains(y)), "p = {p}, l = {l}");
        }
    }
}

#[test]
fn lie_operad_dimensions() {
    for p in [2, 3] {
        for n in 1..=5 {
            let lie = LieOperad::new(p, n).unwrap();
            assert_eq!(lie.dim(), (1..n).product::<usize>());
            // (0 1) squares to the identity; the n-cycle has order n
            let mut v = vec![0u8; lie.dim()];
            v[0] = 1;
            if n >= 2 {
                let t: Vec<usize> = (0..n).map(|i| match i { 0 => 1, 1 => 0, _ => i }).collect();
                assert_eq!(lie.act(&t, &lie.act(&t, &v)), v);
            }
            let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let mut w = v.clone();
            for _ in 0..n {
                w = lie.act(&c, &w);
            }
            assert_eq!(w, v);
        }
    }
}

#[test]
fn dold_kan_roundtrip() {
    for p in [2, 3] {
        for chain in [BTreeMap::from([(1, 1)]), BTreeMap::from([(0, 1), (2, 2)]), BTreeMap::from([(1, 2), (3, 1)])] {
            let v = freelie::dold_kan(p, &chain, 5);
            v.check_identities().unwrap();
            let pi = freelie::homotopy_oracle(&v, 1, 4).unwrap();
            let expect: Vec<usize> = (0..=4).map(|q| chain.get(&q).copied().unwrap_or(0)).collect();
            assert_eq!(pi, expect);
        }
    }
}

#[test]
fn bar_tor_kunneth_on_direct_sums() {
    for p in [2, 3] {
        let k = FrobeniusField::prime(p).unwrap();
        let a = RestrictedLie::heisenberg(k.clone()).unwrap();
        let b = RestrictedLie::triv_xi(k.clone(), 0, &[2], 7).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        let tor = |l: &RestrictedLie| hopf::bar_tor(&UrPresentation::new(l.clone(), 7).unwrap(), 3).unwrap();
        assert_eq!(tor(&sum), hopf::kunneth(&tor(&a), &tor(&b)), "p = {p}");
    }
}
