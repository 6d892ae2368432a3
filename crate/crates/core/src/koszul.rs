//! The Koszul dual `K*_p`, the anti-isomorphism `Φ_p: K*_p → Λ`, unstable
//! Koszul complexes `K_•(W)` and their Ext charts.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lambda::{w_tensor_lambda, LambdaAlgebra, LambdaMonomial};
use crate::linalg::{Echelon, Matrix};
use crate::steenrod::{self, is_valid_index, FpCombination, SteenrodAlgebra, Strategy};

/// Unstable (`M^h`, hat) or strongly unstable (`M^h_0`, tilde) modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Hat,
    Tilde,
}

impl Flavor {
    /// Is excess `e` allowed next to a class of degree `deg`?
    pub fn allows(self, p: u32, e: i64, deg: u32) -> bool {
        let bound = (p as i64 - 1) * deg as i64;
        match self {
            Flavor::Hat => e <= bound,
            Flavor::Tilde => e < bound,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Hat => "hat",
            Flavor::Tilde => "tilde",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hat" | "unstable" => Ok(Flavor::Hat),
            "tilde" | "strongly-unstable" => Ok(Flavor::Tilde),
            _ => invalid(format!("unknown flavor {s}")),
        }
    }
}

/// `a_j < p a_{j+1}` for all adjacent entries.
pub fn is_orth_admissible(p: u32, j: &[u32]) -> bool {
    j.windows(2).all(|w| w[0] < p * w[1])
}

/// Excess of a Koszul monomial: its last entry, 0 when empty.
pub fn k_excess(j: &[u32]) -> i64 {
    j.last().map_or(0, |&x| x as i64)
}

fn check_indices(p: u32, j: &[u32]) -> Result<()> {
    match j.iter().find(|&&i| i == 0 || !is_valid_index(p, i)) {
        Some(i) => invalid(format!("{i} is not a Koszul generator index for p = {p}")),
        None => Ok(()),
    }
}

/// `Φ_p`: reverse and send `Pr_i` to the lambda generator of degree `i - 1`.
pub fn phi(p: u32, j: &[u32]) -> Result<LambdaMonomial> {
    check_indices(p, j)?;
    Ok(LambdaMonomial::new(j.iter().rev().map(|&i| i - 1).collect()))
}

pub fn phi_inv(y: &LambdaMonomial) -> Vec<u32> {
    y.codes.iter().rev().map(|&c| c + 1).collect()
}

/// Both algebras for one prime, sharing their rewrite memos.
#[derive(Debug)]
pub struct Koszul {
    p: u32,
    pub steenrod: SteenrodAlgebra,
    pub lambda: LambdaAlgebra,
}

/// Per-degree outcome of the quadratic duality check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityDegree {
    pub degree: u32,
    pub pairs: usize,
    pub dim_r: usize,
    pub dim_r_dual: usize,
    pub annihilates: bool,
}

impl DualityDegree {
    pub fn passes(&self) -> bool {
        self.annihilates && self.dim_r + self.dim_r_dual == self.pairs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub p: u32,
    pub degrees: Vec<DualityDegree>,
}

impl DualityReport {
    pub fn passes(&self) -> bool {
        self.degrees.iter().all(|d| d.passes())
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.degrees.iter().find(|d| !d.passes()).map(|d| d.degree)
    }
}

impl Koszul {
    pub fn new(p: u32) -> Result<Self> {
        Ok(Koszul { p, steenrod: SteenrodAlgebra::new(p)?, lambda: LambdaAlgebra::new(p)? })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Rewrite a word in the `Pr_i` to orthogonally admissible monomials by
    /// transport through `Φ_p`.
    pub fn k_normalize(&self, word: &[u32]) -> Result<FpCombination> {
        self.k_normalize_with(word, Strategy::Leftmost)
    }

    pub fn k_normalize_with(&self, word: &[u32], strategy: Strategy) -> Result<FpCombination> {
        let y = phi(self.p, word)?;
        Ok(self
            .lambda
            .normalize_fp(&y.codes, strategy)?
            .into_iter()
            .map(|(codes, c)| (phi_inv(&LambdaMonomial::new(codes)), c))
            .collect())
    }

    /// Orthogonally admissible monomials of internal degree `t` and weight `s`.
    pub fn k_basis(&self, t: u32, s: usize) -> Vec<Vec<u32>> {
        if (t as usize) < s {
            return Vec::new();
        }
        let mut out: Vec<Vec<u32>> =
            self.lambda.admissible_basis(t - s as u32, s).iter().map(phi_inv).collect();
        out.sort();
        out
    }

    /// Relation spaces of `A^h_p` and `K*_p` in each quadratic degree `<= bound`.
    pub fn quadratic_duality_check(&self, bound: u32) -> Result<DualityReport> {
        let p = self.p;
        let mut degrees = Vec::new();
        for n in 2..=bound {
            let pairs: Vec<(u32, u32)> = steenrod::valid_indices(p, n)
                .filter_map(|i| {
                    let j = n.checked_sub(i)?;
                    (j >= 1 && is_valid_index(p, j)).then_some((i, j))
                })
                .collect();
            if pairs.is_empty() {
                continue;
            }
            let index: HashMap<(u32, u32), usize> = pairs.iter().enumerate().map(|(k, &q)| (q, k)).collect();
            let np = pairs.len();
            let to_vec = |word: (u32, u32), comb: &FpCombination| -> Vec<u8> {
                let mut v = vec![0u8; np];
                v[index[&word]] = 1;
                for (w, &c) in comb {
                    let k = index[&(w[0], w[1])];
                    v[k] = ((v[k] as u32 + p - c) % p) as u8;
                }
                v
            };
            let mut r = Echelon::new(p, np);
            let mut r_dual = Echelon::new(p, np);
            for &(i, j) in &pairs {
                if i < p * j {
                    let comb = self.steenrod.normalize_fp(&[i, j], Strategy::Leftmost)?;
                    r.insert(to_vec((i, j), &comb));
                }
                if !is_orth_admissible(p, &[i, j]) {
                    let comb = self.k_normalize(&[i, j])?;
                    r_dual.insert(to_vec((i, j), &comb));
                }
            }
            let annihilates = r.basis().iter().all(|a| {
                r_dual.basis().iter().all(|b| {
                    a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum::<u32>() % p == 0
                })
            });
            degrees.push(DualityDegree { degree: n, pairs: np, dim_r: r.dim(), dim_r_dual: r_dual.dim(), annihilates });
        }
        Ok(DualityReport { p, degrees })
    }

    /// `Pr^J · Pr_i` as a combination of dual monomials `Pr^{J''}`.
    pub fn dual_right_action(&self, j: &[u32], i: u32) -> Result<Vec<(Vec<u32>, u32)>> {
        check_indices(self.p, j)?;
        check_indices(self.p, &[i])?;
        if j.is_empty() {
            return invalid("dual_right_action needs a nonempty monomial");
        }
        let total: u32 = j.iter().sum();
        let Some(rest) = total.checked_sub(i) else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        for jj in self.k_basis(rest, j.len() - 1) {
            let mut word = vec![i];
            word.extend_from_slice(&jj);
            if let Some(&c) = self.k_normalize(&word)?.get(j) {
                out.push((jj, c));
            }
        }
        Ok(out)
    }
}

/// A generator `Pr^J ⊗ w` of the Koszul complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KoszulGenerator {
    pub j: Vec<u32>,
    pub w_degree: u32,
    pub w_index: usize,
}

impl KoszulGenerator {
    pub fn degree(&self) -> u32 {
        self.j.iter().sum::<u32>() + self.w_degree
    }
}

/// `St^I` applied to generator number `gen` of the same homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KoszulBasis {
    pub gen: usize,
    pub word: Vec<u32>,
}

/// Truncated Koszul complex: bases per `(s, t)` and differentials
/// `d_s: K_{s,t} → K_{s-1,t}`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub p: u32,
    pub flavor: Flavor,
    pub w: BTreeMap<u32, usize>,
    /// Homological degrees verified; degree `s_max + 1` is built as well.
    pub s_max: usize,
    pub t_max: u32,
    pub generators: Vec<Vec<KoszulGenerator>>,
    pub bases: Vec<Vec<Vec<KoszulBasis>>>,
    /// `diffs[s][t]`, rows index `bases[s-1][t]`, columns `bases[s][t]`; `diffs[0]` is empty.
    pub diffs: Vec<Vec<Matrix>>,
    /// Nonzero action terms discarded by the excess filter on `J''`.
    pub filtered_terms: usize,
}

/// Limit on the total number of basis elements of a built complex.
pub const COMPLEX_BUDGET: usize = 2_000_000;

/// Generators `(J, w)` of weight `s` and degree `<= t_max`.
fn over_budget() -> Error {
    Error::Budget(format!("more than {COMPLEX_BUDGET} basis elements"))
}

fn generators_within(
    k: &Koszul,
    w: &BTreeMap<u32, usize>,
    flavor: Flavor,
    s: usize,
    t_max: u32,
    budget: usize,
) -> Result<Vec<KoszulGenerator>> {
    let p = k.p;
    let mut out = Vec::new();
    for (&deg, &dim) in w {
        if deg > t_max {
            continue;
        }
        for tj in 0..=(t_max - deg) {
            for j in k.k_basis(tj, s) {
                if flavor.allows(p, k_excess(&j), deg) {
                    for idx in 0..dim {
                        out.push(KoszulGenerator { j: j.clone(), w_degree: deg, w_index: idx });
                    }
                    if out.len() > budget {
                        return Err(over_budget());
                    }
                }
            }
        }
    }
    out.sort_by_key(|g| (g.degree(), g.clone()));
    Ok(out)
}

/// Full basis `St^I g` of internal degree `t`.
fn basis_at(p: u32, flavor: Flavor, gens: &[KoszulGenerator], t: u32, budget: usize) -> Result<Vec<KoszulBasis>> {
    let mut out = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let d = g.degree();
        if d > t {
            continue;
        }
        let room = t - d;
        for s in 0..=room as usize {
            for word in steenrod::admissible_sequences(p, room, s) {
                if word.is_empty() || flavor.allows(p, steenrod::excess(p, &word), d) {
                    out.push(KoszulBasis { gen: gi, word });
                }
            }
            if out.len() > budget {
                return Err(over_budget());
            }
        }
    }
    Ok(out)
}

impl KoszulComplex {
    pub fn build(k: &Koszul, w: &BTreeMap<u32, usize>, flavor: Flavor, s_max: usize, t_max: u32) -> Result<Self> {
        let p = k.p;
        if w.contains_key(&0) && w[&0] > 0 {
            return invalid("W must be concentrated in positive degrees");
        }
        let s_built = s_max + 1;
        let mut left = COMPLEX_BUDGET;
        let mut generators: Vec<Vec<KoszulGenerator>> = Vec::new();
        for s in 0..=s_built {
            let gens = generators_within(k, w, flavor, s, t_max, left)?;
            left -= gens.len();
            generators.push(gens);
        }
        let mut bases: Vec<Vec<Vec<KoszulBasis>>> = Vec::new();
        for gens in &generators {
            let mut row = Vec::new();
            for t in 0..=t_max {
                let b = basis_at(p, flavor, gens, t, left)?;
                left -= b.len();
                row.push(b);
            }
            bases.push(row);
        }

        let mut diffs = vec![Vec::new()];
        let mut filtered_terms = 0;
        for s in 1..=s_built {
            let gens = &generators[s];
            let lower = &generators[s - 1];
            let lower_index: HashMap<&KoszulGenerator, usize> =
                lower.iter().enumerate().map(|(i, g)| (g, i)).collect();
            // action of every Pr_i on the dual monomials of weight s, collected
            // by expanding Pr_i · Pr_{J''} for all J'' of weight s - 1
            let mut action: HashMap<Vec<u32>, Vec<(u32, Vec<u32>, u32)>> = HashMap::new();
            let max_j = gens.iter().map(|g| g.j.iter().sum::<u32>()).max().unwrap_or(0);
            for tj in 0..max_j {
                for jj in k.k_basis(tj, s - 1) {
                    for i in steenrod::valid_indices(p, max_j - tj) {
                        let mut word = vec![i];
                        word.extend_from_slice(&jj);
                        for (j, c) in k.k_normalize(&word)? {
                            action.entry(j).or_default().push((i, jj.clone(), c));
                        }
                    }
                }
            }
            // d(generator) as a list of (St^i, lower generator, coefficient)
            let mut gen_diff: Vec<Vec<(u32, usize, u32)>> = Vec::with_capacity(gens.len());
            for g in gens {
                let mut terms = Vec::new();
                for (i, jj, c) in action.get(&g.j).map(Vec::as_slice).unwrap_or(&[]) {
                    let target = KoszulGenerator { j: jj.clone(), w_degree: g.w_degree, w_index: g.w_index };
                    let Some(&li) = lower_index.get(&target) else {
                        filtered_terms += 1;
                        continue;
                    };
                    if flavor.allows(p, *i as i64, target.degree()) {
                        terms.push((*i, li, *c));
                    }
                }
                gen_diff.push(terms);
            }
            let per_t: Vec<Result<Matrix>> = (0..=t_max)
                .into_par_iter()
                .map(|t| {
                    let rows = &bases[s - 1][t as usize];
                    let cols = &bases[s][t as usize];
                    let row_index: HashMap<(usize, &[u32]), usize> =
                        rows.iter().enumerate().map(|(r, b)| ((b.gen, b.word.as_slice()), r)).collect();
                    let mut m = Matrix::zeros(p, rows.len(), cols.len());
                    for (ci, b) in cols.iter().enumerate() {
                        for &(i, li, c) in &gen_diff[b.gen] {
                            let mut word = b.word.clone();
                            word.push(i);
                            let deg = lower[li].degree();
                            for (wd, d) in k.steenrod.normalize_fp(&word, Strategy::Leftmost)? {
                                if !flavor.allows(p, steenrod::excess(p, &wd), deg) {
                                    continue;
                                }
                                let r = row_index.get(&(li, wd.as_slice())).copied().ok_or_else(|| {
                                    Error::Invariant(format!("missing basis element {wd:?} on generator {li}"))
                                })?;
                                m.add_to(r, ci, c * d % p);
                            }
                        }
                    }
                    Ok(m)
                })
                .collect();
            diffs.push(per_t.into_iter().collect::<Result<Vec<_>>>()?);
        }
        Ok(KoszulComplex { p, flavor, w: w.clone(), s_max, t_max, generators, bases, diffs, filtered_terms })
    }

    pub fn dim(&self, s: usize, t: u32) -> usize {
        self.bases[s][t as usize].len()
    }

    /// Overwrite one differential entry (used by tests as a negative control).
    pub fn corrupt(&mut self, s: usize, t: u32, row: usize, col: usize) {
        let m = &mut self.diffs[s][t as usize];
        let v = m.get(row, col);
        m.set(row, col, v + 1);
    }

    /// Check `d² = 0` and acyclicity for `s <= s_max`, `t <= t_max`.
    pub fn verify(&self) -> VerifyReport {
        let s_built = self.s_max + 1;
        let checks: Vec<(u32, Vec<Witness>)> = (0..=self.t_max)
            .into_par_iter()
            .map(|t| {
                let mut wit = Vec::new();
                let ti = t as usize;
                for s in 2..=s_built {
                    let prod = self.diffs[s - 1][ti].mul(&self.diffs[s][ti]);
                    if !prod.is_zero() {
                        wit.push(Witness { s, t, kind: WitnessKind::DSquared, detail: "d∘d ≠ 0".into() });
                    }
                }
                let ranks: Vec<usize> =
                    (0..=s_built).map(|s| if s == 0 { 0 } else { self.diffs[s][ti].rank() }).collect();
                for s in 0..=self.s_max {
                    let h = self.dim(s, t) - ranks[s] - ranks[s + 1];
                    let expect = if s == 0 { self.w.get(&t).copied().unwrap_or(0) } else { 0 };
                    if h != expect {
                        wit.push(Witness {
                            s,
                            t,
                            kind: WitnessKind::Homology,
                            detail: format!("homology dimension {h}, expected {expect}"),
                        });
                    }
                }
                (t, wit)
            })
            .collect();
        VerifyReport {
            s_max: self.s_max,
            t_max: self.t_max,
            witnesses: checks.into_iter().flat_map(|(_, w)| w).collect(),
        }
    }

    /// Ext dimensions from the complex: cohomology of `Hom(K_•, Σ^t k)`.
    pub fn resolution_ext(&self, s: usize, t: u32) -> Result<usize> {
        if s > self.s_max || t > self.t_max {
            return invalid(format!("({s}, {t}) outside the verified range"));
        }
        let bare = |s: usize| -> Vec<usize> {
            self.bases[s][t as usize]
                .iter()
                .enumerate()
                .filter(|(_, b)| b.word.is_empty())
                .map(|(i, _)| i)
                .collect()
        };
        // δ restricted to the generator duals
        let block = |s: usize| -> usize {
            if s == 0 {
                return 0;
            }
            let rows = bare(s - 1);
            let cols = bare(s);
            let d = &self.diffs[s][t as usize];
            let mut m = Matrix::zeros(self.p, rows.len(), cols.len());
            for (r, &ri) in rows.iter().enumerate() {
                for (c, &ci) in cols.iter().enumerate() {
                    m.set(r, c, d.get(ri, ci));
                }
            }
            m.rank()
        };
        let gens = bare(s).len();
        Ok(gens - block(s) - block(s + 1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    DSquared,
    Homology,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub s: usize,
    pub t: u32,
    pub kind: WitnessKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub s_max: usize,
    pub t_max: u32,
    pub witnesses: Vec<Witness>,
}

impl VerifyReport {
    pub fn d_squared_ok(&self) -> bool {
        !self.witnesses.iter().any(|w| w.kind == WitnessKind::DSquared)
    }
    pub fn acyclic_ok(&self) -> bool {
        !self.witnesses.iter().any(|w| w.kind == WitnessKind::Homology)
    }
    pub fn passes(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtMethod {
    Closed,
    Resolution,
    Both,
}

impl std::str::FromStr for ExtMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(ExtMethod::Closed),
            "resolution" => Ok(ExtMethod::Resolution),
            "both" => Ok(ExtMethod::Both),
            _ => invalid(format!("unknown method {s}")),
        }
    }
}

/// Label of `w ⊗ y` on the lambda side.
fn label(p: u32, w: &BTreeMap<u32, usize>, w_degree: u32, w_index: usize, y: &LambdaMonomial) -> String {
    let base = if w[&w_degree] > 1 { format!("ι{w_degree}.{w_index}") } else { format!("ι{w_degree}") };
    if y.codes.is_empty() {
        base
    } else {
        format!("{base} {}", y.label(p))
    }
}

/// Closed-form Ext count with lambda-side labels; the Koszul-side generator
/// count is computed independently and must agree.
pub fn ext_closed(k: &Koszul, w: &BTreeMap<u32, usize>, flavor: Flavor, s: usize, t: u32) -> Result<(usize, Vec<String>)> {
    let p = k.p;
    if (t as usize) < s {
        return Ok((0, Vec::new()));
    }
    let koszul_side = generators_within(k, w, flavor, s, t, COMPLEX_BUDGET)?.into_iter().filter(|g| g.degree() == t).count();
    closed_with_count(p, w, flavor, s, t, koszul_side)
}

fn closed_with_count(
    p: u32,
    w: &BTreeMap<u32, usize>,
    flavor: Flavor,
    s: usize,
    t: u32,
    koszul_side: usize,
) -> Result<(usize, Vec<String>)> {
    let lambda_side = w_tensor_lambda(p, w, flavor, t - s as u32, s);
    if lambda_side.len() != koszul_side {
        return Err(Error::Invariant(format!(
            "lambda-side count {} differs from Koszul-side count {koszul_side} at ({s}, {t})",
            lambda_side.len()
        )));
    }
    let labels = lambda_side.iter().map(|b| label(p, w, b.w_degree, b.w_index, &b.y)).collect();
    Ok((koszul_side, labels))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtEntry {
    pub s: usize,
    pub t: u32,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtChart {
    pub p: u32,
    /// Dimensions of W by degree.
    #[serde(rename = "W")]
    pub w: BTreeMap<u32, usize>,
    pub flavor: Flavor,
    pub entries: Vec<ExtEntry>,
}

/// Ext chart for `s <= s_max`, `t <= t_max`, nonzero entries only, sorted by `(s, t)`.
pub fn ext_chart(
    k: &Koszul,
    w: &BTreeMap<u32, usize>,
    flavor: Flavor,
    s_max: usize,
    t_max: u32,
    method: ExtMethod,
) -> Result<ExtChart> {
    let complex = match method {
        ExtMethod::Closed => None,
        _ => {
            let c = KoszulComplex::build(k, w, flavor, s_max, t_max)?;
            let report = c.verify();
            if !report.passes() {
                let wit = &report.witnesses[0];
                return Err(Error::Invariant(format!("complex check failed at ({}, {}): {}", wit.s, wit.t, wit.detail)));
            }
            Some(c)
        }
    };
    let mut entries = Vec::new();
    let mut left = COMPLEX_BUDGET;
    for s in 0..=s_max {
        let gens = generators_within(k, w, flavor, s, t_max, left)?;
        left -= gens.len();
        let mut by_degree: BTreeMap<u32, usize> = BTreeMap::new();
        for g in &gens {
            *by_degree.entry(g.degree()).or_insert(0) += 1;
        }
        for t in s as u32..=t_max {
            let count = by_degree.get(&t).copied().unwrap_or(0);
            let (dim, basis) = closed_with_count(k.p, w, flavor, s, t, count)?;
            if let Some(c) = &complex {
                let r = c.resolution_ext(s, t)?;
                if r != dim {
                    return Err(Error::Invariant(format!("closed {dim} vs resolution {r} at ({s}, {t})")));
                }
            }
            if dim > 0 {
                entries.push(ExtEntry { s, t, dim, basis });
            }
        }
    }
    Ok(ExtChart { p: k.p, w: w.clone(), flavor, entries })
}

/// `W = Σ^l k`.
pub fn sphere(l: u32) -> BTreeMap<u32, usize> {
    [(l, 1)].into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        assert_eq!(phi(2, &[2, 3]).unwrap().label(2), "λ2λ1");
        assert!(phi(2, &[]).unwrap().codes.is_empty());
        assert_eq!(phi(3, &[4]).unwrap().label(3), "λ1");
        assert_eq!(phi(3, &[5]).unwrap().label(3), "μ1");
        assert!(phi(3, &[2]).is_err());
    }

    #[test]
    fn k_normalize_examples() {
        let k = Koszul::new(2).unwrap();
        let c = k.k_normalize(&[2, 3]).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(vec![2, 3], 1)]);
        for (j, _) in k.k_normalize(&[3, 1]).unwrap() {
            assert!(is_orth_admissible(2, &j));
            assert_eq!(j.iter().sum::<u32>(), 4);
        }
        let k3 = Koszul::new(3).unwrap();
        assert!(k3.k_normalize(&[4, 3]).is_err());
    }

    #[test]
    fn dual_action_examples() {
        let k = Koszul::new(2).unwrap();
        assert_eq!(k.dual_right_action(&[3], 3).unwrap(), vec![(vec![], 1)]);
        assert!(k.dual_right_action(&[3], 2).unwrap().is_empty());
    }

    #[test]
    fn quadratic_duality_small() {
        for (p, bound) in [(2, 6), (3, 10)] {
            let k = Koszul::new(p).unwrap();
            let r = k.quadratic_duality_check(bound).unwrap();
            assert!(r.passes(), "p={p}: {:?}", r.degrees.iter().find(|d| !d.passes()));
        }
    }

    #[test]
    fn ext_examples() {
        let k = Koszul::new(2).unwrap();
        let w = sphere(2);
        assert_eq!(ext_closed(&k, &w, Flavor::Hat, 1, 3).unwrap().0, 1);
        assert_eq!(ext_closed(&k, &w, Flavor::Hat, 1, 4).unwrap().0, 1);
        assert_eq!(ext_closed(&k, &w, Flavor::Hat, 1, 5).unwrap().0, 0);
        assert_eq!(ext_closed(&k, &w, Flavor::Hat, 0, 2).unwrap().0, 1);
        let w1 = sphere(1);
        for s in 1..4 {
            for t in 0..10 {
                assert_eq!(ext_closed(&k, &w1, Flavor::Tilde, s, t).unwrap().0, 0);
            }
        }
    }

    #[test]
    fn small_complex_is_a_resolution() {
        let k = Koszul::new(2).unwrap();
        let c = KoszulComplex::build(&k, &sphere(2), Flavor::Hat, 2, 8).unwrap();
        let r = c.verify();
        assert!(r.passes(), "{:?}", r.witnesses);
        let zero = KoszulComplex::build(&k, &BTreeMap::new(), Flavor::Hat, 2, 8).unwrap();
        assert!(zero.verify().passes());
    }
}
