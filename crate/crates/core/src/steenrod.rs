//! The homogenized Steenrod algebra: Adem rewriting to admissible monomials,
//! excess, and bases of free unstable modules and algebras.
//!
//! Generators are indexed by their internal degree `i`: `Sq^i` for p = 2, and
//! for odd p `P^a` (i = 2a(p-1)) or `βP^a` (i = 2a(p-1)+1). Index 0 is
//! `P^0 = Sq^0 = 0`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::binom::{binom_mod, sign};
use crate::error::{invalid, Error, Result};
use crate::field::{FieldElement, FrobeniusField};

/// Linear combination over F_p keyed by monomial.
pub type FpCombination = BTreeMap<Vec<u32>, u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnstableFlavor {
    /// `e(I) <= (p-1) l`
    Module,
    /// `e(I) < (p-1) l`
    StrongModule,
    /// generators of the free unstable algebra, `e(I) < (p-1) l`
    AlgebraGenerator,
}

impl UnstableFlavor {
    pub fn allows(self, p: u32, excess: i64, l: u32) -> bool {
        let bound = (p as i64 - 1) * l as i64;
        match self {
            UnstableFlavor::Module => excess <= bound,
            _ => excess < bound,
        }
    }
}

pub fn is_valid_index(p: u32, i: u32) -> bool {
    p == 2 || matches!(i % (2 * (p - 1)), 0 | 1)
}

/// `(a, ε)` with `St^i = β^ε P^a` (for p = 2, `Sq^i = (i, 0)`).
pub fn decode(p: u32, i: u32) -> (u32, u32) {
    if p == 2 {
        (i, 0)
    } else {
        (i / (2 * (p - 1)), i % (2 * (p - 1)))
    }
}

pub fn encode(p: u32, a: u32, eps: u32) -> u32 {
    if p == 2 {
        a
    } else {
        2 * a * (p - 1) + eps
    }
}

pub fn is_admissible(p: u32, word: &[u32]) -> bool {
    word.windows(2).all(|w| w[0] >= p * w[1])
}

/// `e(I) = i_1 - (p-1)(i_2 + ...)`, with `e(∅) = -1`.
pub fn excess(p: u32, word: &[u32]) -> i64 {
    match word.split_first() {
        None => -1,
        Some((&first, rest)) => first as i64 - (p as i64 - 1) * rest.iter().map(|&x| x as i64).sum::<i64>(),
    }
}

/// Positive valid indices up to `max`, ascending.
pub fn valid_indices(p: u32, max: u32) -> impl Iterator<Item = u32> {
    (1..=max).filter(move |&i| is_valid_index(p, i))
}

/// Adem relation for an inadmissible pair `(i, j)`, `i < p j`, both nonzero.
/// Returns the admissible-or-not pairs `(i', j', c)` with zero-index terms dropped.
fn adem_pair(p: u32, i: u32, j: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    let mut push = |x: u32, y: u32, c: u32| {
        if c != 0 && x != 0 && y != 0 {
            out.push((x, y, c));
        }
    };
    if p == 2 {
        let (a, b) = (i as i64, j as i64);
        for jj in 0..=a / 2 {
            push((a + b - jj) as u32, jj as u32, binom_mod(b - jj - 1, a - 2 * jj, 2));
        }
        return out;
    }
    let (a, eps) = decode(p, i);
    let (b, delta) = decode(p, j);
    let (a, b, pp, q) = (a as i64, b as i64, p as i64, p as i64 - 1);
    if delta == 0 {
        for jj in 0..=a / pp {
            let c = binom_mod(q * (b - jj) - 1, a - pp * jj, p) * sign(a + jj, p) % p;
            push(encode(p, (a + b - jj) as u32, eps), encode(p, jj as u32, 0), c);
        }
    } else {
        for jj in 0..=a / pp {
            let c = binom_mod(q * (b - jj) - 1, a - pp * jj - 1, p) * sign(a + jj - 1, p) % p;
            push(encode(p, (a + b - jj) as u32, eps), encode(p, jj as u32, 1), c);
            if eps == 0 {
                let c = binom_mod(q * (b - jj), a - pp * jj, p) * sign(a + jj, p) % p;
                push(encode(p, (a + b - jj) as u32, 1), encode(p, jj as u32, 0), c);
            }
        }
    }
    out
}

type Memo = RwLock<HashMap<Vec<u32>, Arc<Vec<(Vec<u32>, u32)>>>>;

/// Quadratic rewriting system shared by the Steenrod and lambda algebras.
pub(crate) trait PairRewriter: Sync {
    fn prime(&self) -> u32;
    /// Is the index sequence already a zero element (e.g. contains `P^0`)?
    fn is_zero_word(&self, word: &[u32]) -> bool;
    fn pair_admissible(&self, a: u32, b: u32) -> bool;
    fn rewrite_pair(&self, a: u32, b: u32) -> Vec<(u32, u32, u32)>;
    fn memo(&self) -> &Memo;
}

const MAX_DEPTH: usize = 100_000;

pub(crate) fn normalize_with<R: PairRewriter + ?Sized>(
    r: &R,
    word: &[u32],
    strategy: Strategy,
) -> Result<FpCombination> {
    let mut out = FpCombination::new();
    let p = r.prime();
    for (w, c) in normalize_rec(r, word, strategy, 0)?.iter() {
        let e = out.entry(w.clone()).or_insert(0);
        *e = (*e + c) % p;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

fn normalize_rec<R: PairRewriter + ?Sized>(
    r: &R,
    word: &[u32],
    strategy: Strategy,
    depth: usize,
) -> Result<Arc<Vec<(Vec<u32>, u32)>>> {
    if depth > MAX_DEPTH {
        return Err(Error::Invariant(format!("rewriting did not terminate on {word:?}")));
    }
    if r.is_zero_word(word) {
        return Ok(Arc::new(Vec::new()));
    }
    let bad: Vec<usize> = (0..word.len().saturating_sub(1))
        .filter(|&k| !r.pair_admissible(word[k], word[k + 1]))
        .collect();
    let pos = match strategy {
        Strategy::Leftmost => bad.first(),
        Strategy::Rightmost => bad.last(),
    };
    let Some(&k) = pos else { return Ok(Arc::new(vec![(word.to_vec(), 1)])) };
    if strategy == Strategy::Leftmost {
        if let Some(hit) = r.memo().read().unwrap().get(word) {
            return Ok(hit.clone());
        }
    }
    let p = r.prime();
    let mut acc: HashMap<Vec<u32>, u32> = HashMap::new();
    for (x, y, c) in r.rewrite_pair(word[k], word[k + 1]) {
        let mut w = word.to_vec();
        w[k] = x;
        w[k + 1] = y;
        for (v, d) in normalize_rec(r, &w, strategy, depth + 1)?.iter() {
            let e = acc.entry(v.clone()).or_insert(0);
            *e = (*e + c * d) % p;
        }
    }
    let mut res: Vec<(Vec<u32>, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    res.sort();
    let res = Arc::new(res);
    if strategy == Strategy::Leftmost {
        r.memo().write().unwrap().insert(word.to_vec(), res.clone());
    }
    Ok(res)
}

/// `A^h_p` with an insert-only memo of normalized words.
#[derive(Debug)]
pub struct SteenrodAlgebra {
    p: u32,
    memo: Memo,
}

impl PairRewriter for SteenrodAlgebra {
    fn prime(&self) -> u32 {
        self.p
    }
    fn is_zero_word(&self, word: &[u32]) -> bool {
        word.contains(&0)
    }
    fn pair_admissible(&self, a: u32, b: u32) -> bool {
        a >= self.p * b
    }
    fn rewrite_pair(&self, a: u32, b: u32) -> Vec<(u32, u32, u32)> {
        adem_pair(self.p, a, b)
    }
    fn memo(&self) -> &Memo {
        &self.memo
    }
}

/// Element of `A^h_p`: admissible monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteenrodElement {
    pub terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl SteenrodElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(internal degree, weight)` when nonzero.
    pub fn bidegree(&self) -> Option<(u32, usize)> {
        self.terms.keys().next().map(|w| (w.iter().sum(), w.len()))
    }
}

/// Element of a free unstable module or a generator of a free unstable algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnstableBasisElement {
    pub word: Vec<u32>,
    pub l: u32,
    pub flavor: UnstableFlavor,
}

impl UnstableBasisElement {
    pub fn degree(&self) -> u32 {
        self.l + self.word.iter().sum::<u32>()
    }
}

impl SteenrodAlgebra {
    pub fn new(p: u32) -> Result<Self> {
        if !crate::field::is_prime(p) || p > 251 {
            return invalid(format!("{p} is not a supported prime"));
        }
        Ok(SteenrodAlgebra { p, memo: RwLock::new(HashMap::new()) })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn check(&self, word: &[u32]) -> Result<()> {
        match word.iter().find(|&&i| !is_valid_index(self.p, i)) {
            Some(i) => invalid(format!("index {i} is not a generator for p = {}", self.p)),
            None => Ok(()),
        }
    }

    /// Normal form over F_p.
    pub fn normalize_fp(&self, word: &[u32], strategy: Strategy) -> Result<FpCombination> {
        self.check(word)?;
        normalize_with(self, word, strategy)
    }

    /// `coeff · St^{i_1} ⋯ St^{i_k}` in the admissible basis.
    pub fn adem_normalize(&self, field: &FrobeniusField, word: &[u32], coeff: FieldElement) -> Result<SteenrodElement> {
        if field.p() != self.p {
            return invalid("field characteristic differs from the algebra's prime");
        }
        let terms = self
            .normalize_fp(word, Strategy::Leftmost)?
            .into_iter()
            .map(|(w, c)| (w, field.scale(coeff, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(SteenrodElement { terms })
    }

    /// Admissible monomials of internal degree `t` and weight `s`.
    pub fn admissible_basis(&self, t: u32, s: usize) -> Vec<Vec<u32>> {
        admissible_sequences(self.p, t, s)
    }

    /// Basis of the free (strongly) unstable module on a class of degree `l`,
    /// up to total degree `d`; for `AlgebraGenerator`, the algebra generators.
    pub fn unstable_basis(&self, l: u32, flavor: UnstableFlavor, d: u32) -> Result<Vec<UnstableBasisElement>> {
        if l == 0 {
            return invalid("generator degree must be positive");
        }
        let mut out = Vec::new();
        if d < l {
            return Ok(out);
        }
        for t in 0..=(d - l) {
            for s in 0..=t as usize {
                for w in admissible_sequences(self.p, t, s) {
                    if flavor.allows(self.p, excess(self.p, &w), l) {
                        out.push(UnstableBasisElement { word: w, l, flavor });
                    }
                }
            }
        }
        out.sort_by_key(|e| (e.degree(), e.word.len(), e.word.clone()));
        Ok(out)
    }

    /// Dimensions of the free unstable algebra on a class of degree `l`.
    pub fn unstable_algebra_dims(&self, l: u32, d: u32) -> Result<BTreeMap<u32, usize>> {
        let gens = self.unstable_basis(l, UnstableFlavor::AlgebraGenerator, d)?;
        let mut series = vec![0u64; d as usize + 1];
        series[0] = 1;
        for g in gens {
            let deg = g.degree() as usize;
            let exterior = self.p != 2 && deg % 2 == 1;
            let mut next = series.clone();
            if exterior {
                for t in deg..=d as usize {
                    next[t] += series[t - deg];
                }
            } else {
                // multiply by 1/(1 - x^deg)
                for t in deg..=d as usize {
                    next[t] += next[t - deg];
                }
            }
            series = next;
        }
        Ok((1..=d).map(|t| (t, series[t as usize] as usize)).collect())
    }

    /// `St^i x` in the free unstable module containing `x`.
    pub fn st_act(&self, i: u32, x: &UnstableBasisElement) -> Result<Vec<(UnstableBasisElement, u32)>> {
        if !is_valid_index(self.p, i) {
            return invalid(format!("index {i} is not a generator for p = {}", self.p));
        }
        if x.flavor == UnstableFlavor::AlgebraGenerator {
            return invalid("st_act needs an element of a free module");
        }
        let mut word = vec![i];
        word.extend_from_slice(&x.word);
        Ok(self
            .normalize_fp(&word, Strategy::Leftmost)?
            .into_iter()
            .filter(|(w, _)| x.flavor.allows(self.p, excess(self.p, w), x.l))
            .map(|(w, c)| (UnstableBasisElement { word: w, l: x.l, flavor: x.flavor }, c))
            .collect())
    }
}

/// All admissible sequences `i_j >= p i_{j+1}` of valid positive indices with
/// the given sum and length.
pub fn admissible_sequences(p: u32, t: u32, s: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    // Build from the last entry backwards: each earlier entry is >= p * later.
    fn rec(p: u32, t_left: u32, s_left: usize, min_next: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if s_left == 0 {
            if t_left == 0 {
                let mut w = cur.clone();
                w.reverse();
                out.push(w);
            }
            return;
        }
        // entries to the left are at least p^k times this one
        let mut weight: u64 = 0;
        let mut pk: u64 = 1;
        for _ in 0..s_left {
            weight += pk;
            pk *= p as u64;
        }
        let start = min_next.max(1);
        let mut i = start;
        while (i as u64) * weight <= t_left as u64 {
            if is_valid_index(p, i) {
                cur.push(i);
                rec(p, t_left - i, s_left - 1, i * p, cur, out);
                cur.pop();
            }
            i += 1;
        }
    }
    rec(p, t, s, 1, &mut cur, &mut out);
    out.sort();
    out
}
