//! The lambda algebra: rewriting to admissible monomials, the filtration
//! `Λ(l)`, and the subspaces `W ⊗̂ Λ` and `W ⊗̃ Λ`.
//!
//! A generator is stored as its internal degree ("code"): for p = 2, `λ_a` has
//! code `a`; for odd p, `λ_a` (a ≥ 1) has code `2a(p-1) - 1` and `μ_a` (a ≥ 0)
//! has code `2a(p-1)`. The code is exactly one less than the index of the
//! dual Koszul generator.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::binom::{binom_mod, sign};
use crate::error::{invalid, Result};
use crate::field::{FieldElement, FrobeniusField};
use crate::koszul::Flavor;
use crate::steenrod::{normalize_with, FpCombination, PairRewriter, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Lambda,
    Mu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LambdaGenerator {
    pub kind: Kind,
    pub index: u32,
}

impl LambdaGenerator {
    pub fn lambda(index: u32) -> Self {
        LambdaGenerator { kind: Kind::Lambda, index }
    }
    pub fn mu(index: u32) -> Self {
        LambdaGenerator { kind: Kind::Mu, index }
    }

    pub fn code(self, p: u32) -> Result<u32> {
        match (p, self.kind) {
            (2, Kind::Lambda) => Ok(self.index),
            (2, Kind::Mu) => invalid("μ generators exist only for odd p"),
            (_, Kind::Lambda) if self.index == 0 => invalid("λ_a needs a ≥ 1 for odd p"),
            (_, Kind::Lambda) => Ok(2 * self.index * (p - 1) - 1),
            (_, Kind::Mu) => Ok(2 * self.index * (p - 1)),
        }
    }

    pub fn from_code(p: u32, code: u32) -> Self {
        if p == 2 {
            return LambdaGenerator::lambda(code);
        }
        let m = 2 * (p - 1);
        if code % m == 0 {
            LambdaGenerator::mu(code / m)
        } else {
            debug_assert_eq!(code % m, m - 1);
            LambdaGenerator::lambda((code + 1) / m)
        }
    }

    /// ε in the ν-notation: 1 for λ, 0 for μ.
    pub fn epsilon(self) -> u32 {
        match self.kind {
            Kind::Lambda => 1,
            Kind::Mu => 0,
        }
    }
}

impl fmt::Display for LambdaGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Lambda => write!(f, "λ{}", self.index),
            Kind::Mu => write!(f, "μ{}", self.index),
        }
    }
}

pub fn is_valid_code(p: u32, code: u32) -> bool {
    if p == 2 {
        return true;
    }
    let m = 2 * (p - 1);
    code % m == 0 || code % m == m - 1
}

/// Monomial as a sequence of generator codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LambdaMonomial {
    pub codes: Vec<u32>,
}

impl LambdaMonomial {
    pub fn new(codes: Vec<u32>) -> Self {
        LambdaMonomial { codes }
    }

    pub fn generators(&self, p: u32) -> Vec<LambdaGenerator> {
        self.codes.iter().map(|&c| LambdaGenerator::from_code(p, c)).collect()
    }

    /// `(internal degree, weight)`
    pub fn bidegree(&self) -> (u32, usize) {
        (self.codes.iter().sum(), self.codes.len())
    }

    pub fn is_admissible(&self, p: u32) -> bool {
        self.codes.windows(2).all(|w| pair_admissible(p, w[0], w[1]))
    }

    pub fn label(&self, p: u32) -> String {
        if self.codes.is_empty() {
            return "1".into();
        }
        self.generators(p).iter().map(|g| g.to_string()).collect::<Vec<_>>().join("")
    }
}

fn pair_admissible(p: u32, x: u32, y: u32) -> bool {
    let a = LambdaGenerator::from_code(p, x);
    let b = LambdaGenerator::from_code(p, y).index;
    if p == 2 {
        return b <= 2 * a.index;
    }
    match a.kind {
        Kind::Lambda => b < p * a.index,
        Kind::Mu => b <= p * a.index,
    }
}

fn gen_code(p: u32, kind: Kind, index: i64) -> Option<u32> {
    if index < 0 {
        return None;
    }
    LambdaGenerator { kind, index: index as u32 }.code(p).ok()
}

fn nu(eps: u32) -> Kind {
    if eps == 1 {
        Kind::Lambda
    } else {
        Kind::Mu
    }
}

type RawTerm = (Kind, i64, Kind, i64, u32);

/// All terms of the relation for an inadmissible pair, before discarding
/// those that name a nonexistent generator.
fn rewrite_raw(p: u32, x: u32, y: u32) -> Vec<RawTerm> {
    let first = LambdaGenerator::from_code(p, x);
    let second = LambdaGenerator::from_code(p, y);
    let (a, b) = (first.index as i64, second.index as i64);
    let mut out = Vec::new();
    if p == 2 {
        for i in 1..=a + b {
            out.push((Kind::Lambda, a + b - i, Kind::Lambda, i, binom_mod(b - i - 1, i - 2 * a - 1, 2)));
        }
    } else {
        let (pp, q) = (p as i64, p as i64 - 1);
        let eps = second.epsilon() as i64;
        match first.kind {
            Kind::Lambda => {
                for i in 0..=a + b {
                    let c = binom_mod(q * (b - i) - eps, i - pp * a, p) * sign(i + a + eps, p) % p;
                    out.push((nu(eps as u32), a + b - i, Kind::Lambda, i, c));
                    if eps == 0 {
                        let c = binom_mod(q * (b - i) - 1, i - pp * a, p) * sign(i + a + 1, p) % p;
                        out.push((Kind::Lambda, a + b - i, Kind::Mu, i, c));
                    }
                }
            }
            Kind::Mu => {
                for i in 1..=a + b {
                    let c = binom_mod(q * (b - i) - 1, i - pp * a - 1, p) * sign(i + a, p) % p;
                    out.push((Kind::Mu, a + b - i, nu(eps as u32), i, c));
                }
            }
        }
    }
    out.retain(|t| t.4 != 0);
    out
}

/// Rewrite an inadmissible pair of codes.
fn rewrite(p: u32, x: u32, y: u32) -> Vec<(u32, u32, u32)> {
    rewrite_raw(p, x, y)
        .into_iter()
        .filter_map(|(k1, i1, k2, i2, c)| Some((gen_code(p, k1, i1)?, gen_code(p, k2, i2)?, c)))
        .collect()
}

/// Number of nonzero relation terms naming a nonexistent generator (such as
/// `λ_0` at odd p). Tests confirm this is always zero.
pub fn phantom_terms(p: u32, x: u32, y: u32) -> usize {
    rewrite_raw(p, x, y)
        .into_iter()
        .filter(|&(k1, i1, k2, i2, _)| gen_code(p, k1, i1).is_none() || gen_code(p, k2, i2).is_none())
        .count()
}

#[derive(Debug)]
pub struct LambdaAlgebra {
    p: u32,
    memo: RwLock<HashMap<Vec<u32>, std::sync::Arc<Vec<(Vec<u32>, u32)>>>>,
}

impl PairRewriter for LambdaAlgebra {
    fn prime(&self) -> u32 {
        self.p
    }
    fn is_zero_word(&self, _word: &[u32]) -> bool {
        false
    }
    fn pair_admissible(&self, a: u32, b: u32) -> bool {
        pair_admissible(self.p, a, b)
    }
    fn rewrite_pair(&self, a: u32, b: u32) -> Vec<(u32, u32, u32)> {
        rewrite(self.p, a, b)
    }
    fn memo(&self) -> &RwLock<HashMap<Vec<u32>, std::sync::Arc<Vec<(Vec<u32>, u32)>>>> {
        &self.memo
    }
}

/// Element of Λ: admissible monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaElement {
    pub terms: BTreeMap<LambdaMonomial, FieldElement>,
}

impl LambdaElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl LambdaAlgebra {
    pub fn new(p: u32) -> Result<Self> {
        if !crate::field::is_prime(p) || p > 251 {
            return invalid(format!("{p} is not a supported prime"));
        }
        Ok(LambdaAlgebra { p, memo: RwLock::new(HashMap::new()) })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn normalize_fp(&self, codes: &[u32], strategy: Strategy) -> Result<FpCombination> {
        if let Some(c) = codes.iter().find(|&&c| !is_valid_code(self.p, c)) {
            return invalid(format!("{c} is not the degree of a lambda generator for p = {}", self.p));
        }
        normalize_with(self, codes, strategy)
    }

    pub fn lambda_normalize(
        &self,
        field: &FrobeniusField,
        word: &[LambdaGenerator],
        coeff: FieldElement,
    ) -> Result<LambdaElement> {
        let codes = word.iter().map(|g| g.code(self.p)).collect::<Result<Vec<_>>>()?;
        let terms = self
            .normalize_fp(&codes, Strategy::Leftmost)?
            .into_iter()
            .map(|(w, c)| (LambdaMonomial::new(w), field.scale(coeff, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(LambdaElement { terms })
    }

    /// Admissible monomials of internal degree `m` and weight `s`.
    pub fn admissible_basis(&self, m: u32, s: usize) -> Vec<LambdaMonomial> {
        admissible_with_first(self.p, m, s, |_| true)
    }

    /// Admissible monomials in `Λ(l)` up to the given bounds.
    pub fn l_basis(&self, l: u32, max_degree: u32, max_weight: usize) -> Vec<LambdaMonomial> {
        let mut out = Vec::new();
        for s in 0..=max_weight {
            for m in 0..=max_degree {
                out.extend(l_basis_at(self.p, l, m, s));
            }
        }
        out
    }
}

/// Does a leading generator with this code belong to `Λ(l)`?
pub fn first_in_filtration(p: u32, l: u32, code: u32) -> bool {
    let g = LambdaGenerator::from_code(p, code);
    if p == 2 {
        return g.index < l;
    }
    let n = l / 2;
    match (l % 2, g.kind) {
        (0, Kind::Lambda) => g.index <= n,
        (0, Kind::Mu) => g.index < n,
        _ => g.index <= n,
    }
}

/// Admissible monomials of bidegree `(m, s)` in `Λ(l)`.
pub fn l_basis_at(p: u32, l: u32, m: u32, s: usize) -> Vec<LambdaMonomial> {
    admissible_with_first(p, m, s, |c| first_in_filtration(p, l, c))
}

fn admissible_with_first(p: u32, m: u32, s: usize, first_ok: impl Fn(u32) -> bool) -> Vec<LambdaMonomial> {
    let mut out = Vec::new();
    if s == 0 {
        if m == 0 {
            out.push(LambdaMonomial::new(Vec::new()));
        }
        return out;
    }
    fn rec(p: u32, left: u32, s_left: usize, cur: &mut Vec<u32>, out: &mut Vec<LambdaMonomial>) {
        if s_left == 0 {
            if left == 0 {
                out.push(LambdaMonomial::new(cur.clone()));
            }
            return;
        }
        let prev = *cur.last().unwrap();
        for c in 0..=left {
            if is_valid_code(p, c) && pair_admissible(p, prev, c) {
                cur.push(c);
                rec(p, left - c, s_left - 1, cur, out);
                cur.pop();
            }
        }
    }
    for c in 0..=m {
        if is_valid_code(p, c) && first_ok(c) {
            let mut cur = vec![c];
            rec(p, m - c, s - 1, &mut cur, &mut out);
        }
    }
    out
}

/// Basis element `w ⊗ y` of `W ⊗̂ Λ` or `W ⊗̃ Λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WLambdaBasis {
    pub w_degree: u32,
    pub w_index: usize,
    pub y: LambdaMonomial,
}

impl WLambdaBasis {
    pub fn bidegree(&self) -> (u32, usize) {
        let (m, s) = self.y.bidegree();
        (self.w_degree + m, s)
    }
}

/// May a monomial with first letter `code` follow a class of degree `w_degree`?
/// Hat: `2a - ε < |w|` (odd p), `a < |w|` (p = 2). Tilde: `2a < |w|`, `a + 1 < |w|`.
pub fn w_leading_ok(p: u32, flavor: Flavor, w_degree: u32, code: u32) -> bool {
    let g = LambdaGenerator::from_code(p, code);
    let w = w_degree as i64;
    let a = g.index as i64;
    match (p == 2, flavor) {
        (true, Flavor::Hat) => a < w,
        (true, Flavor::Tilde) => a + 1 < w,
        (false, Flavor::Hat) => 2 * a - i64::from(g.kind == Kind::Lambda) < w,
        (false, Flavor::Tilde) => 2 * a < w,
    }
}

/// Basis of the bidegree-`(m, s)` part of `W ⊗̂ Λ` (hat) or `W ⊗̃ Λ` (tilde),
/// where `m` includes the degree of `w`.
pub fn w_tensor_lambda(
    p: u32,
    w: &BTreeMap<u32, usize>,
    flavor: Flavor,
    m: u32,
    s: usize,
) -> Vec<WLambdaBasis> {
    let mut out = Vec::new();
    for (&deg, &dim) in w {
        if deg > m || dim == 0 {
            continue;
        }
        for y in admissible_with_first(p, m - deg, s, |c| w_leading_ok(p, flavor, deg, c)) {
            for idx in 0..dim {
                out.push(WLambdaBasis { w_degree: deg, w_index: idx, y: y.clone() });
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_examples() {
        let l = LambdaAlgebra::new(2).unwrap();
        let k = FrobeniusField::prime(2).unwrap();
        let one = k.one();
        let g = LambdaGenerator::lambda;
        assert_eq!(l.lambda_normalize(&k, &[g(1), g(2)], one).unwrap().terms.len(), 1);
        assert!(l.lambda_normalize(&k, &[g(0), g(1)], one).unwrap().is_zero());
        let e = l.lambda_normalize(&k, &[g(2), g(5)], one).unwrap();
        for m in e.terms.keys() {
            assert_eq!(m.bidegree(), (7, 2));
            assert!(m.is_admissible(2));
        }
    }

    #[test]
    fn basis_examples() {
        let l = LambdaAlgebra::new(2).unwrap();
        assert_eq!(l.admissible_basis(0, 3), vec![LambdaMonomial::new(vec![0, 0, 0])]);
        assert_eq!(l.admissible_basis(1, 1), vec![LambdaMonomial::new(vec![1])]);
        // λ2λ0 is admissible too: 0 <= 2*2
        assert_eq!(
            l.admissible_basis(2, 2),
            vec![LambdaMonomial::new(vec![1, 1]), LambdaMonomial::new(vec![2, 0])]
        );
        let l1 = l.l_basis(1, 6, 3);
        assert_eq!(l1.len(), 4);
        assert!(l1.iter().all(|m| m.codes.iter().all(|&c| c == 0)));
        let l2: Vec<_> = l.l_basis(2, 1, 1).into_iter().filter(|m| m.codes.len() == 1).collect();
        assert_eq!(l2, vec![LambdaMonomial::new(vec![0]), LambdaMonomial::new(vec![1])]);
        let l3 = LambdaAlgebra::new(3).unwrap();
        let w1: Vec<_> = l3.l_basis(1, 20, 1).into_iter().filter(|m| m.codes.len() == 1).collect();
        assert_eq!(w1, vec![LambdaMonomial::new(vec![0])]);
    }

    #[test]
    fn w_tensor_examples() {
        let w: BTreeMap<u32, usize> = [(2, 1)].into();
        let hat: Vec<_> = (0..=4).flat_map(|m| w_tensor_lambda(2, &w, Flavor::Hat, m, 1)).collect();
        let ys: Vec<_> = hat.iter().map(|b| b.y.codes.clone()).collect();
        assert_eq!(ys, vec![vec![0], vec![1]]);
        let tilde: Vec<_> = (0..=4).flat_map(|m| w_tensor_lambda(2, &w, Flavor::Tilde, m, 1)).collect();
        assert_eq!(tilde.len(), 1);
        let w1: BTreeMap<u32, usize> = [(1, 1)].into();
        assert!((0..=6).all(|m| w_tensor_lambda(2, &w1, Flavor::Tilde, m, 1).is_empty()));
    }

    #[test]
    fn invalid_generators_rejected() {
        assert!(LambdaGenerator::lambda(0).code(3).is_err());
        assert!(LambdaGenerator::mu(1).code(2).is_err());
        let l = LambdaAlgebra::new(3).unwrap();
        assert!(l.normalize_fp(&[1], Strategy::Leftmost).is_err());
    }
}
