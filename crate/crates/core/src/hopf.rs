//! Restricted Lie algebras, their enveloping algebras, truncated coalgebras
//! and bar-complex Tor.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::field::{FieldElement, FrobeniusField};
use crate::linalg::{rank_over, Echelon};
use crate::twisted::FPModule;

type Vector = Vec<FieldElement>;

/// A finite-dimensional restricted Lie algebra with optional positive weights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestrictedLie {
    pub field: FrobeniusField,
    pub labels: Vec<String>,
    pub weights: Option<Vec<u32>>,
    /// `bracket[i][j] = [e_i, e_j]`.
    pub bracket: Vec<Vec<Vector>>,
    /// `xi[i] = ξ(e_i)`.
    pub xi: Vec<Vector>,
}

/// What failed, with the offending elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checked_pairs: usize,
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

impl RestrictedLie {
    pub fn new(field: FrobeniusField, labels: Vec<String>, weights: Option<Vec<u32>>, bracket: Vec<Vec<Vector>>, xi: Vec<Vector>) -> Result<Self> {
        let d = labels.len();
        let shape_ok = bracket.len() == d
            && bracket.iter().all(|row| row.len() == d && row.iter().all(|v| v.len() == d))
            && xi.len() == d
            && xi.iter().all(|v| v.len() == d)
            && weights.as_ref().map_or(true, |w| w.len() == d);
        if !shape_ok {
            return invalid("structure constants do not match the dimension");
        }
        if weights.as_ref().is_some_and(|w| w.contains(&0)) {
            return invalid("weights must be positive");
        }
        Ok(RestrictedLie { field, labels, weights, bracket, xi })
    }

    /// Abelian algebra with the given `ξ` on basis vectors.
    pub fn abelian(field: FrobeniusField, weights: Option<Vec<u32>>, xi: Vec<Vector>) -> Result<Self> {
        let d = xi.len();
        let zero = vec![vec![vec![field.zero(); d]; d]; d];
        let labels = (0..d).map(|i| format!("e{i}")).collect();
        Self::new(field, labels, weights, zero, xi)
    }

    /// `trivξ(M)` for `M = k{ξ}^r ⊕ ⊕_j k{ξ}/ξ^{v_j}` truncated at weight `bound`,
    /// with generators in weight 1 and `ξ^i g` in weight `p^i`.
    pub fn triv_xi(field: FrobeniusField, free_rank: usize, torsion: &[usize], bound: u32) -> Result<Self> {
        let p = field.p();
        let mut chains: Vec<usize> = Vec::new();
        let levels_below = |limit: Option<usize>| {
            let mut n = 0usize;
            let mut w = 1u64;
            while w <= bound as u64 && limit.map_or(true, |l| n < l) {
                n += 1;
                w *= p as u64;
            }
            n
        };
        for _ in 0..free_rank {
            chains.push(levels_below(None));
        }
        for &v in torsion {
            chains.push(levels_below(Some(v)));
        }
        let d: usize = chains.iter().sum();
        let mut xi = vec![vec![field.zero(); d]; d];
        let mut weights = Vec::with_capacity(d);
        let mut labels = Vec::with_capacity(d);
        let mut start = 0;
        for (g, &len) in chains.iter().enumerate() {
            for i in 0..len {
                weights.push((p as u64).pow(i as u32) as u32);
                labels.push(format!("ξ^{i}g{g}"));
                if i + 1 < len {
                    xi[start + i][start + i + 1] = field.one();
                }
            }
            start += len;
        }
        let zero = vec![vec![vec![field.zero(); d]; d]; d];
        Self::new(field, labels, Some(weights), zero, xi)
    }

    /// Heisenberg algebra `[x, y] = z`, `ξ = 0`, weights 1, 1, 2.
    pub fn heisenberg(field: FrobeniusField) -> Result<Self> {
        let (z, o) = (field.zero(), field.one());
        let mut bracket = vec![vec![vec![z; 3]; 3]; 3];
        bracket[0][1] = vec![z, z, o];
        bracket[1][0] = vec![z, z, field.neg(o)];
        let xi = vec![vec![z; 3]; 3];
        Self::new(field, vec!["x".into(), "y".into(), "z".into()], Some(vec![1, 1, 2]), bracket, xi)
    }

    /// `sl_2` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f` and the given `ξ(h)`.
    pub fn sl2(field: FrobeniusField, xi_h: Vector) -> Result<Self> {
        let (z, o) = (field.zero(), field.one());
        let two = field.from_int(2);
        let mut b = vec![vec![vec![z; 3]; 3]; 3];
        // basis e, f, h
        b[0][1] = vec![z, z, o];
        b[1][0] = vec![z, z, field.neg(o)];
        b[2][0] = vec![two, z, z];
        b[0][2] = vec![field.neg(two), z, z];
        b[2][1] = vec![z, field.neg(two), z];
        b[1][2] = vec![z, two, z];
        let xi = vec![vec![z; 3], vec![z; 3], xi_h];
        Self::new(field, vec!["e".into(), "f".into(), "h".into()], None, b, xi)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn k(&self) -> &FrobeniusField {
        &self.field
    }

    pub fn zero_vector(&self) -> Vector {
        vec![self.field.zero(); self.dim()]
    }

    fn add(&self, a: &Vector, b: &Vector) -> Vector {
        a.iter().zip(b).map(|(&x, &y)| self.k().add(x, y)).collect()
    }

    fn scale(&self, c: FieldElement, a: &Vector) -> Vector {
        a.iter().map(|&x| self.k().mul(c, x)).collect()
    }

    pub fn bracket_of(&self, a: &Vector, b: &Vector) -> Vector {
        let k = self.k();
        let mut out = self.zero_vector();
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = k.mul(x, y);
                for (o, &s) in out.iter_mut().zip(&self.bracket[i][j]) {
                    *o = k.add(*o, k.mul(c, s));
                }
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    /// `Σ_i s_i(x, y)` where `i s_i` is the `t^{i-1}` coefficient of `ad(tx+y)^{p-1}(x)`.
    pub fn jacobson_correction(&self, x: &Vector, y: &Vector) -> Vector {
        let k = self.k();
        let p = k.p() as usize;
        // coefficients of a polynomial in t with vector values
        let mut poly: Vec<Vector> = vec![x.clone()];
        for _ in 0..p - 1 {
            let mut next = vec![self.zero_vector(); poly.len() + 1];
            for (deg, c) in poly.iter().enumerate() {
                next[deg + 1] = self.add(&next[deg + 1], &self.bracket_of(x, c));
                next[deg] = self.add(&next[deg], &self.bracket_of(y, c));
            }
            poly = next;
        }
        let mut out = self.zero_vector();
        for i in 1..p {
            let inv = k.inv(k.from_int(i as i64)).expect("i < p is invertible");
            out = self.add(&out, &self.scale(inv, &poly[i - 1]));
        }
        out
    }

    /// `ξ` on an arbitrary vector, extended from the basis by semilinearity and
    /// the Jacobson formula, adding basis components in the given order.
    pub fn xi_of(&self, x: &Vector, order: &[usize]) -> Vector {
        let k = self.k();
        let mut acc = self.zero_vector();
        let mut xi_acc = self.zero_vector();
        for &i in order {
            if x[i].is_zero() {
                continue;
            }
            let term = self.scale(x[i], &self.basis_vector(i));
            let xi_term = self.scale(k.frobenius(x[i], 1), &self.xi[i]);
            let corr = self.jacobson_correction(&acc, &term);
            xi_acc = self.add(&self.add(&xi_acc, &xi_term), &corr);
            acc = self.add(&acc, &term);
        }
        xi_acc
    }

    fn ad_power(&self, x: &Vector, y: &Vector, n: usize) -> Vector {
        (0..n).fold(y.clone(), |v, _| self.bracket_of(x, &v))
    }

    fn format_vector(&self, v: &Vector) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(&c, l)| format!("{}·{l}", self.field.format(c)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Lie axioms on basis triples, `ad(ξ(e_i)) = ad(e_i)^p`, and on
    /// `samples` seeded random elements: semilinearity, additivity with the
    /// Jacobson correction, independence of the extension order, and
    /// `ad(ξ(x)) = ad(x)^p`.
    pub fn validate(&self, samples: usize, seed: u64) -> ValidationReport {
        let d = self.dim();
        let k = self.k();
        let p = k.p() as usize;
        let mut failures = Vec::new();
        let mut fail = |axiom: &str, witness: String| failures.push(AxiomFailure { axiom: axiom.into(), witness });
        for i in 0..d {
            for j in 0..d {
                let neg: Vector = self.bracket[j][i].iter().map(|&c| k.neg(c)).collect();
                if self.bracket[i][j] != neg {
                    fail("antisymmetry", format!("({}, {})", self.labels[i], self.labels[j]));
                }
                for l in 0..d {
                    let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(l));
                    let s = self.add(
                        &self.add(&self.bracket_of(&a, &self.bracket_of(&b, &c)), &self.bracket_of(&b, &self.bracket_of(&c, &a))),
                        &self.bracket_of(&c, &self.bracket_of(&a, &b)),
                    );
                    if s.iter().any(|x| !x.is_zero()) {
                        fail("Jacobi", format!("({}, {}, {})", self.labels[i], self.labels[j], self.labels[l]));
                    }
                }
            }
        }
        for i in 0..d {
            let e = self.basis_vector(i);
            for j in 0..d {
                let y = self.basis_vector(j);
                if self.bracket_of(&self.xi[i], &y) != self.ad_power(&e, &y, p) {
                    fail("ad(ξ(x)) = ad(x)^p", format!("x = {}, y = {}", self.labels[i], self.labels[j]));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = k.order();
        let random_vector = |rng: &mut ChaCha8Rng| -> Vector { (0..d).map(|_| k.element_from_index(rng.gen_range(0..order))).collect() };
        let forward: Vec<usize> = (0..d).collect();
        let backward: Vec<usize> = (0..d).rev().collect();
        for _ in 0..samples {
            let x = random_vector(&mut rng);
            let y = random_vector(&mut rng);
            let a = k.element_from_index(rng.gen_range(0..order));
            let xi_x = self.xi_of(&x, &forward);
            let xi_y = self.xi_of(&y, &forward);
            if self.xi_of(&x, &backward) != xi_x {
                fail("extension independent of order", format!("x = {}", self.format_vector(&x)));
            }
            let xi_ax = self.xi_of(&self.scale(a, &x), &forward);
            if xi_ax != self.scale(k.frobenius(a, 1), &xi_x) {
                fail("ξ(ax) = a^p ξ(x)", format!("a = {}, x = {}", k.format(a), self.format_vector(&x)));
            }
            let sum = self.xi_of(&self.add(&x, &y), &forward);
            let expect = self.add(&self.add(&xi_x, &xi_y), &self.jacobson_correction(&x, &y));
            if sum != expect {
                fail("ξ(x+y) = ξ(x) + ξ(y) + Σ s_i(x,y)", format!("x = {}, y = {}", self.format_vector(&x), self.format_vector(&y)));
            }
            if self.bracket_of(&xi_x, &y) != self.ad_power(&x, &y, p) {
                fail("ad(ξ(x)) = ad(x)^p", format!("x = {}, y = {}", self.format_vector(&x), self.format_vector(&y)));
            }
        }
        ValidationReport { checked_pairs: samples, failures }
    }

    /// Direct sum of two restricted Lie algebras over the same field.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return invalid("summands live over different fields");
        }
        let (d1, d2) = (self.dim(), other.dim());
        let d = d1 + d2;
        let z = self.field.zero();
        let embed = |v: &Vector, shift: usize| -> Vector {
            let mut out = vec![z; d];
            out[shift..shift + v.len()].copy_from_slice(v);
            out
        };
        let mut bracket = vec![vec![vec![z; d]; d]; d];
        for i in 0..d1 {
            for j in 0..d1 {
                bracket[i][j] = embed(&self.bracket[i][j], 0);
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                bracket[d1 + i][d1 + j] = embed(&other.bracket[i][j], d1);
            }
        }
        let xi = self.xi.iter().map(|v| embed(v, 0)).chain(other.xi.iter().map(|v| embed(v, d1))).collect();
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        let weights = match (&self.weights, &other.weights) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Self::new(self.field.clone(), labels, weights, bracket, xi)
    }
}

// ------------------------------------------------------------------ Sym^tr

/// Sign rule for `Sym^tr`: plain truncated polynomials, or odd-weight generators
/// exterior at odd `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignRule {
    Plain,
    Koszul,
}

/// Dimensions of `Sym(W)/(w^p)` by weight, `0..=bound`.
pub fn symtr_dims(p: u32, w: &BTreeMap<u32, usize>, bound: u32, signs: SignRule) -> Vec<usize> {
    let mut series = vec![0usize; bound as usize + 1];
    series[0] = 1;
    for (&deg, &n) in w {
        if deg == 0 || deg > bound {
            continue;
        }
        let top = if signs == SignRule::Koszul && p != 2 && deg % 2 == 1 { 1 } else { p - 1 };
        for _ in 0..n {
            let mut next = vec![0usize; series.len()];
            for (t, &c) in series.iter().enumerate() {
                for e in 0..=top as usize {
                    let s = t + e * deg as usize;
                    if s <= bound as usize {
                        next[s] += c;
                    }
                }
            }
            series = next;
        }
    }
    series
}

// -------------------------------------------------------------------- U^r

type Word = Vec<u16>;
type Elem = BTreeMap<Word, FieldElement>;

/// `U^r(L)` truncated at a weight bound, by rewriting with
/// `x_j x_i → x_i x_j + [x_j, x_i]` (`j > i`) and `x_i^p → ξ(x_i)`.
#[derive(Debug)]
pub struct UrPresentation {
    pub lie: RestrictedLie,
    pub bound: u32,
    weights: Vec<u32>,
    memo: Mutex<HashMap<Word, Elem>>,
}

/// An overlap whose two reductions disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapWitness {
    pub word: Vec<String>,
}

impl UrPresentation {
    pub fn new(lie: RestrictedLie, bound: u32) -> Result<Self> {
        let weights = lie.weights.clone().ok_or_else(|| Error::Invalid("U^r needs positive weights".into()))?;
        let k = &lie.field;
        for i in 0..lie.dim() {
            for j in 0..lie.dim() {
                let w = weights[i] + weights[j];
                for (l, c) in lie.bracket[i][j].iter().enumerate() {
                    if !c.is_zero() && weights[l] != w {
                        return invalid(format!("bracket of {} and {} is not homogeneous", lie.labels[i], lie.labels[j]));
                    }
                }
            }
            for (l, c) in lie.xi[i].iter().enumerate() {
                if !c.is_zero() && weights[l] != k.p() * weights[i] {
                    return invalid(format!("ξ({}) is not homogeneous", lie.labels[i]));
                }
            }
        }
        Ok(UrPresentation { lie, bound, weights, memo: Mutex::new(HashMap::new()) })
    }

    pub fn field(&self) -> &FrobeniusField {
        &self.lie.field
    }

    pub fn weight(&self, w: &[u16]) -> u32 {
        w.iter().map(|&x| self.weights[x as usize]).sum()
    }

    fn p(&self) -> usize {
        self.lie.field.p() as usize
    }

    /// First position where a rule applies, with the rule kind.
    fn redex(&self, w: &[u16]) -> Option<(usize, bool)> {
        let p = self.p();
        let mut run = 1;
        for i in 0..w.len() {
            if i > 0 {
                run = if w[i] == w[i - 1] { run + 1 } else { 1 };
            }
            if run == p {
                return Some((i + 1 - p, true));
            }
            if i + 1 < w.len() && w[i] > w[i + 1] {
                return Some((i, false));
            }
        }
        None
    }

    fn add_into(&self, acc: &mut Elem, w: Word, c: FieldElement) {
        if c.is_zero() || self.weight(&w) > self.bound {
            return;
        }
        let k = self.field();
        let e = acc.entry(w).or_insert(k.zero());
        *e = k.add(*e, c);
        if e.is_zero() {
            let key: Vec<Word> = acc.iter().filter(|(_, v)| v.is_zero()).map(|(w, _)| w.clone()).collect();
            for w in key {
                acc.remove(&w);
            }
        }
    }

    /// Apply one rule at `pos` (descent when `power` is false).
    fn rewrite_at(&self, w: &[u16], pos: usize, power: bool) -> Elem {
        let k = self.field();
        let mut out = Elem::new();
        if power {
            let x = w[pos] as usize;
            for (l, &c) in self.lie.xi[x].iter().enumerate() {
                if !c.is_zero() {
                    let mut nw = w[..pos].to_vec();
                    nw.push(l as u16);
                    nw.extend_from_slice(&w[pos + self.p()..]);
                    self.add_into(&mut out, nw, c);
                }
            }
        } else {
            let (a, b) = (w[pos], w[pos + 1]);
            let mut swapped = w.to_vec();
            swapped.swap(pos, pos + 1);
            self.add_into(&mut out, swapped, k.one());
            for (l, &c) in self.lie.bracket[a as usize][b as usize].iter().enumerate() {
                if !c.is_zero() {
                    let mut nw = w[..pos].to_vec();
                    nw.push(l as u16);
                    nw.extend_from_slice(&w[pos + 2..]);
                    self.add_into(&mut out, nw, c);
                }
            }
        }
        out
    }

    /// Normal form of a word (leftmost rewriting).
    pub fn normal_form(&self, w: &[u16]) -> Elem {
        if self.weight(w) > self.bound {
            return Elem::new();
        }
        if let Some(e) = self.memo.lock().unwrap().get(w) {
            return e.clone();
        }
        let result = match self.redex(w) {
            None => [(w.to_vec(), self.field().one())].into(),
            Some((pos, power)) => self.normalize(&self.rewrite_at(w, pos, power)),
        };
        self.memo.lock().unwrap().insert(w.to_vec(), result.clone());
        result
    }

    pub fn normalize(&self, e: &Elem) -> Elem {
        let k = self.field();
        let mut out = Elem::new();
        for (w, &c) in e {
            for (nw, d) in self.normal_form(w) {
                self.add_into(&mut out, nw, k.mul(c, d));
            }
        }
        out
    }

    fn labels(&self, w: &[u16]) -> Vec<String> {
        w.iter().map(|&x| self.lie.labels[x as usize].clone()).collect()
    }

    /// Resolve every overlap ambiguity within the weight bound.
    pub fn check_confluence(&self) -> std::result::Result<usize, OverlapWitness> {
        let d = self.lie.dim() as u16;
        let p = self.p();
        let mut overlaps: Vec<(Word, (usize, bool), (usize, bool))> = Vec::new();
        for a in 0..d {
            for b in 0..a {
                for c in 0..b {
                    overlaps.push((vec![a, b, c], (0, false), (1, false)));
                }
                let mut w = vec![a];
                w.extend(std::iter::repeat(b).take(p));
                overlaps.push((w, (0, false), (1, true)));
                let mut w: Word = std::iter::repeat(a).take(p).collect();
                w.push(b);
                overlaps.push((w, (0, true), (p - 1, false)));
            }
            overlaps.push((std::iter::repeat(a).take(p + 1).collect(), (0, true), (1, true)));
        }
        let mut checked = 0;
        for (w, (i, pi), (j, pj)) in overlaps {
            if self.weight(&w) > self.bound {
                continue;
            }
            checked += 1;
            let left = self.normalize(&self.rewrite_at(&w, i, pi));
            let right = self.normalize(&self.rewrite_at(&w, j, pj));
            if left != right {
                return Err(OverlapWitness { word: self.labels(&w) });
            }
        }
        Ok(checked)
    }

    /// Irreducible words of the given weight.
    pub fn normal_basis(&self, weight: u32) -> Vec<Word> {
        fn rec(u: &UrPresentation, left: u32, start: u16, run: usize, cur: &mut Word, out: &mut Vec<Word>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for x in start..u.lie.dim() as u16 {
                let w = u.weights[x as usize];
                if w > left {
                    continue;
                }
                let r = if cur.last() == Some(&x) { run + 1 } else { 1 };
                if r >= u.p() {
                    continue;
                }
                cur.push(x);
                rec(u, left - w, x, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, weight, 0, 0, &mut Vec::new(), &mut out);
        out
    }

    /// `dim U^r(L)` by weight `0..=bound`, after checking confluence.
    pub fn dims(&self) -> Result<Vec<usize>> {
        self.check_confluence()
            .map_err(|w| Error::Invariant(format!("overlap {} does not resolve", w.word.join(" "))))?;
        Ok((0..=self.bound).map(|t| self.normal_basis(t).len()).collect())
    }

    pub fn multiply(&self, a: &[u16], b: &[u16]) -> Elem {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        self.normal_form(&w)
    }
}

/// PBW identity: `dim U^r(L) = dim Sym^tr(L)` by weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwReport {
    pub ur: Vec<usize>,
    pub symtr: Vec<usize>,
    pub overlaps_checked: usize,
}

impl PbwReport {
    pub fn passes(&self) -> bool {
        self.ur == self.symtr
    }
}

pub fn pbw_check(lie: &RestrictedLie, bound: u32) -> Result<PbwReport> {
    let u = UrPresentation::new(lie.clone(), bound)?;
    let overlaps_checked = u
        .check_confluence()
        .map_err(|w| Error::Invariant(format!("overlap {} does not resolve", w.word.join(" "))))?;
    let ur = u.dims()?;
    let mut graded = BTreeMap::new();
    for &w in lie.weights.as_ref().unwrap() {
        *graded.entry(w).or_insert(0) += 1;
    }
    let symtr = symtr_dims(lie.field.p(), &graded, bound, SignRule::Plain);
    Ok(PbwReport { ur, symtr, overlaps_checked })
}

// -------------------------------------------------------------- bar complex

/// `Tor^A_{s,t}(k, k)` from the normalized bar complex, `s <= s_max`, `t <= bound`.
/// Entry `[s][t]`.
pub fn bar_tor(a: &UrPresentation, s_max: usize) -> Result<Vec<Vec<usize>>> {
    a.check_confluence()
        .map_err(|w| Error::Invariant(format!("overlap {} does not resolve", w.word.join(" "))))?;
    let k = a.field().clone();
    let t_max = a.bound as usize;
    // reduced basis per weight
    let reduced: Vec<Vec<Word>> = (0..=t_max).map(|t| if t == 0 { Vec::new() } else { a.normal_basis(t as u32) }).collect();
    let index: Vec<HashMap<Word, usize>> =
        reduced.iter().map(|b| b.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()).collect();
    // bar basis: sequences of (weight, index) with positive weights summing to t
    fn bar_basis(reduced: &[Vec<Word>], s: usize, t: usize) -> Vec<Vec<(usize, usize)>> {
        if s == 0 {
            return if t == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for w in 1..=t {
            for i in 0..reduced[w].len() {
                for mut rest in bar_basis(reduced, s - 1, t - w) {
                    rest.insert(0, (w, i));
                    out.push(rest);
                }
            }
        }
        out
    }
    let bases: Vec<Vec<Vec<Vec<(usize, usize)>>>> =
        (0..=s_max + 1).map(|s| (0..=t_max).map(|t| bar_basis(&reduced, s, t)).collect()).collect();
    let rank = |s: usize, t: usize| -> usize {
        // d: B_s → B_{s-1}, d[a_1|..|a_s] = Σ_i (-1)^i [..|a_i a_{i+1}|..]
        if s <= 1 {
            return 0;
        }
        let rows_index: HashMap<&Vec<(usize, usize)>, usize> = bases[s - 1][t].iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut columns = Vec::new();
        for b in &bases[s][t] {
            let mut col = vec![k.zero(); bases[s - 1][t].len()];
            for i in 0..s - 1 {
                let (w1, i1) = b[i];
                let (w2, i2) = b[i + 1];
                let prod = a.multiply(&reduced[w1][i1], &reduced[w2][i2]);
                let sign = if i % 2 == 0 { k.one() } else { k.neg(k.one()) };
                for (word, c) in prod {
                    let w = w1 + w2;
                    let mut merged = b[..i].to_vec();
                    merged.push((w, index[w][&word]));
                    merged.extend_from_slice(&b[i + 2..]);
                    let r = rows_index[&merged];
                    col[r] = k.add(col[r], k.mul(sign, c));
                }
            }
            columns.push(col);
        }
        rank_over(&k, columns)
    };
    let ranks: Vec<Vec<usize>> = (0..=s_max + 1).map(|s| (0..=t_max).map(|t| rank(s, t)).collect()).collect();
    Ok((0..=s_max)
        .map(|s| (0..=t_max).map(|t| bases[s][t].len() - ranks[s][t] - ranks[s + 1][t]).collect())
        .collect())
}

/// Exterior algebra on `r` classes of bidegree `(1, 1)`: entry `[s][t]`.
pub fn exterior_table(r: usize, s_max: usize, t_max: usize) -> Vec<Vec<usize>> {
    let binom = |n: usize, k: usize| -> usize {
        if k > n {
            0
        } else {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
    };
    (0..=s_max).map(|s| (0..=t_max).map(|t| if s == t { binom(r, s) } else { 0 }).collect()).collect()
}

/// Künneth product of two Tor tables.
pub fn kunneth(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let s_max = a.len().min(b.len()) - 1;
    let t_max = a[0].len().min(b[0].len()) - 1;
    (0..=s_max)
        .map(|s| {
            (0..=t_max)
                .map(|t| (0..=s).map(|s1| (0..=t).map(|t1| a[s1][t1] * b[s - s1][t - t1]).sum::<usize>()).sum())
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianHomologyReport {
    pub tor: Vec<Vec<usize>>,
    pub exterior: Vec<Vec<usize>>,
}

impl AbelianHomologyReport {
    pub fn matches_exterior(&self) -> bool {
        self.tor == self.exterior
    }
}

/// Compare `Tor^{U^r(trivξ M)}(k, k)` with the exterior algebra on `M/ξM`.
pub fn abelian_homology_check(m: &FPModule, s_max: usize, t_max: u32) -> Result<AbelianHomologyReport> {
    let nf = m.normal_form();
    let mut torsion = Vec::new();
    for d in &nf.diagonal {
        match (d.valuation(), d.degree()) {
            (_, Some(0)) => {}
            (Some(v), Some(deg)) if v == deg => torsion.push(v),
            _ => return invalid("torsion summands must be of the form k{ξ}/ξ^v"),
        }
    }
    let lie = RestrictedLie::triv_xi(m.field().clone(), nf.free_rank, &torsion, t_max)?;
    let u = UrPresentation::new(lie, t_max)?;
    let tor = bar_tor(&u, s_max)?;
    let exterior = exterior_table(nf.free_rank + torsion.len(), s_max, t_max as usize);
    Ok(AbelianHomologyReport { tor, exterior })
}

// --------------------------------------------------------- truncated coalgebras

/// Finite-dimensional coalgebra over `F_p` with a group-like coaugmentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coalgebra {
    pub p: u32,
    pub counit: Vec<u32>,
    /// `coproduct[k][i][j]`: coefficient of `e_i ⊗ e_j` in `Δ(e_k)`.
    pub coproduct: Vec<Vec<Vec<u32>>>,
    pub coaugmentation: Vec<u32>,
}

impl Coalgebra {
    pub fn dim(&self) -> usize {
        self.counit.len()
    }

    fn check_structure(&self) -> Result<()> {
        let (n, p) = (self.dim(), self.p);
        if self.coproduct.len() != n || self.coproduct.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return invalid("coproduct has the wrong shape");
        }
        for k in 0..n {
            let c = &self.coproduct[k];
            for i in 0..n {
                for j in 0..n {
                    if c[i][j] % p != c[j][i] % p {
                        return Err(Error::Invariant(format!("not cocommutative at e{k}")));
                    }
                }
                // (ε ⊗ id)Δ = id
                let left: u32 = (0..n).map(|a| self.counit[a] * c[a][i]).sum::<u32>() % p;
                if left != u32::from(i == k) {
                    return Err(Error::Invariant(format!("counit fails at e{k}")));
                }
            }
            // (Δ ⊗ id)Δ = (id ⊗ Δ)Δ
            for a in 0..n {
                for b in 0..n {
                    for d in 0..n {
                        let lhs: u32 = (0..n).map(|m| c[m][d] * self.coproduct[m][a][b]).sum::<u32>() % p;
                        let rhs: u32 = (0..n).map(|m| c[a][m] * self.coproduct[m][b][d]).sum::<u32>() % p;
                        if lhs != rhs {
                            return Err(Error::Invariant(format!("not coassociative at e{k}")));
                        }
                    }
                }
            }
        }
        let eta = &self.coaugmentation;
        if (0..n).map(|a| self.counit[a] * eta[a]).sum::<u32>() % p != 1 {
            return Err(Error::Invariant("coaugmentation has counit ≠ 1".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let delta: u32 = (0..n).map(|k| eta[k] * self.coproduct[k][i][j]).sum::<u32>() % p;
                if delta != eta[i] * eta[j] % p {
                    return Err(Error::Invariant("coaugmentation is not group-like".into()));
                }
            }
        }
        Ok(())
    }
}

/// Is `C` truncated: does every element of the dual augmentation ideal have
/// its p-th power in `k·1`?
pub fn truncated_coalgebra_check(c: &Coalgebra) -> Result<bool> {
    c.check_structure()?;
    let (n, p) = (c.dim(), c.p);
    let mul = |x: &[u32], y: &[u32]| -> Vec<u32> {
        (0..n)
            .map(|k| {
                let mut s = 0u32;
                for i in 0..n {
                    for j in 0..n {
                        s = (s + x[i] * y[j] % p * c.coproduct[k][i][j]) % p;
                    }
                }
                s
            })
            .collect()
    };
    // functionals vanishing on the coaugmentation
    let eta = &c.coaugmentation;
    let mut constraint = Echelon::new(p, n);
    constraint.insert(eta.iter().map(|&x| (x % p) as u8).collect());
    let mut ideal = Vec::new();
    for j in 0..n {
        let mut f = vec![0u32; n];
        f[j] = 1;
        // subtract f(η)·ε so that the result vanishes on η
        let at_eta = eta[j] % p;
        for (x, &e) in f.iter_mut().zip(&c.counit) {
            *x = (*x + (p - at_eta) * e) % p;
        }
        ideal.push(f);
    }
    let unit = &c.counit;
    for f in ideal {
        let mut power = f.clone();
        for _ in 1..p {
            power = mul(&power, &f);
        }
        // power must be a multiple of the unit ε
        let scale = (0..n).find(|&i| unit[i] % p != 0).map(|i| power[i] * crate::field::inv_mod(unit[i] % p, p) % p).unwrap_or(0);
        if (0..n).any(|i| power[i] % p != scale * unit[i] % p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dual of `k[x]/x^m` as a coalgebra: `Δ(e_k) = Σ_{i+j=k} e_i ⊗ e_j`.
pub fn divided_power_coalgebra(p: u32, m: usize) -> Coalgebra {
    let coproduct = (0..m)
        .map(|k| (0..m).map(|i| (0..m).map(|j| u32::from(i + j == k)).collect()).collect())
        .collect();
    let mut counit = vec![0; m];
    counit[0] = 1;
    Coalgebra { p, counit: counit.clone(), coproduct, coaugmentation: counit }
}

/// Group coalgebra of a set of group-like elements (dual of `k^n`).
pub fn group_like_coalgebra(p: u32, m: usize) -> Coalgebra {
    let coproduct = (0..m)
        .map(|k| (0..m).map(|i| (0..m).map(|j| u32::from(i == k && j == k)).collect()).collect())
        .collect();
    let mut eta = vec![0; m];
    eta[0] = 1;
    Coalgebra { p, counit: vec![1; m], coproduct, coaugmentation: eta }
}
