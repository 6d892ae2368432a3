//! The twisted polynomial ring `k{ξ}` with `ξa = φ(a)ξ`, finitely presented
//! left modules over it, and derived ξ-adic completion through truncation
//! towers.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::field::{FieldElement, FrobeniusField};
use crate::linalg::{rank_over, Matrix};

/// `Σ a_i ξ^i` with coefficients on the left. Trailing zeros are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistedPoly {
    coeffs: Vec<FieldElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `f = q g + r`
    Left,
    /// `f = g q + r`
    Right,
}

impl TwistedPoly {
    pub fn zero() -> Self {
        TwistedPoly { coeffs: Vec::new() }
    }

    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TwistedPoly { coeffs }
    }

    pub fn constant(a: FieldElement) -> Self {
        Self::new(vec![a])
    }

    /// `a ξ^i`
    pub fn monomial(a: FieldElement, i: usize) -> Self {
        let mut c = vec![FieldElement::ZERO; i + 1];
        c[i] = a;
        Self::new(c)
    }

    pub fn xi_power(k: &FrobeniusField, i: usize) -> Self {
        Self::monomial(k.one(), i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest `v` with `ξ^v` dividing on the right (lowest nonzero index).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn lead(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    /// Drop all terms of degree `>= n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).copied().collect())
    }

    pub fn to_json_coeffs(&self, k: &FrobeniusField) -> Vec<Vec<u32>> {
        self.coeffs.iter().map(|&c| k.to_coeffs(c)).collect()
    }

    pub fn from_json_coeffs(k: &FrobeniusField, cs: &[Vec<u32>]) -> Result<Self> {
        Ok(Self::new(cs.iter().map(|c| k.from_coeffs(c)).collect::<Result<_>>()?))
    }

    pub fn format(&self, k: &FrobeniusField) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                let a = k.format(c);
                let a = if a.contains('+') { format!("({a})") } else { a };
                match i {
                    0 => a,
                    1 => format!("{a}ξ"),
                    _ => format!("{a}ξ^{i}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

pub fn tp_add(k: &FrobeniusField, f: &TwistedPoly, g: &TwistedPoly) -> TwistedPoly {
    let n = f.coeffs.len().max(g.coeffs.len());
    TwistedPoly::new((0..n).map(|i| k.add(f.coeff(i), g.coeff(i))).collect())
}

pub fn tp_sub(k: &FrobeniusField, f: &TwistedPoly, g: &TwistedPoly) -> TwistedPoly {
    let n = f.coeffs.len().max(g.coeffs.len());
    TwistedPoly::new((0..n).map(|i| k.sub(f.coeff(i), g.coeff(i))).collect())
}

/// Product using `ξ^i b = φ^i(b) ξ^i`.
pub fn tp_mul(k: &FrobeniusField, f: &TwistedPoly, g: &TwistedPoly) -> TwistedPoly {
    if f.is_zero() || g.is_zero() {
        return TwistedPoly::zero();
    }
    let mut out = vec![FieldElement::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
    for (i, &a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in g.coeffs.iter().enumerate() {
            let t = k.mul(a, k.frobenius(b, i as i64));
            out[i + j] = k.add(out[i + j], t);
        }
    }
    TwistedPoly::new(out)
}

/// Euclidean division on the requested side.
pub fn tp_divmod(
    k: &FrobeniusField,
    f: &TwistedPoly,
    g: &TwistedPoly,
    side: Side,
) -> Result<(TwistedPoly, TwistedPoly)> {
    let Some(dg) = g.degree() else { return invalid("division by the zero polynomial") };
    let gl = g.lead().unwrap();
    let mut q = vec![FieldElement::ZERO; f.coeffs.len().saturating_sub(dg)];
    let mut r = f.clone();
    while let Some(dr) = r.degree() {
        if dr < dg {
            break;
        }
        let s = dr - dg;
        let rl = r.lead().unwrap();
        let c = match side {
            // c ξ^s · g_d ξ^d = c φ^s(g_d) ξ^{d+s}
            Side::Left => k.div(rl, k.frobenius(gl, s as i64)).unwrap(),
            // g_d ξ^d · c ξ^s = g_d φ^d(c) ξ^{d+s}
            Side::Right => k.frobenius(k.div(rl, gl).unwrap(), -(dg as i64)),
        };
        q[s] = k.add(q[s], c);
        let term = TwistedPoly::monomial(c, s);
        let sub = match side {
            Side::Left => tp_mul(k, &term, g),
            Side::Right => tp_mul(k, g, &term),
        };
        r = tp_sub(k, &r, &sub);
        debug_assert!(r.degree().map_or(true, |d| d < dr));
    }
    Ok((TwistedPoly::new(q), r))
}

/// Diagonal normal form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    /// Number of free summands `k{ξ}`.
    pub free_rank: usize,
    /// Nonzero diagonal entries `d` (monic); each contributes `k{ξ}/k{ξ}d`.
    pub diagonal: Vec<TwistedPoly>,
}

impl NormalForm {
    /// ξ-adic valuations of the diagonal entries with positive valuation.
    pub fn torsion_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> =
            self.diagonal.iter().map(|d| d.valuation().unwrap()).filter(|&v| v > 0).collect();
        v.sort_unstable();
        v
    }

    /// `dim_k M/ξ^N M` predicted by the normal form.
    pub fn quotient_dim(&self, n: usize) -> usize {
        self.free_rank * n + self.torsion_orders().iter().map(|&v| v.min(n)).sum::<usize>()
    }
}

/// Finitely presented left `k{ξ}`-module: rows are relations, columns generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FPModule {
    field: FrobeniusField,
    generators: usize,
    relations: Vec<Vec<TwistedPoly>>,
    #[serde(skip)]
    normal_form: OnceLock<NormalForm>,
}

impl PartialEq for FPModule {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.generators == o.generators && self.relations == o.relations
    }
}

impl FPModule {
    pub fn new(field: FrobeniusField, generators: usize, relations: Vec<Vec<TwistedPoly>>) -> Result<Self> {
        if relations.iter().any(|r| r.len() != generators) {
            return invalid("every relation needs one entry per generator");
        }
        Ok(FPModule { field, generators, relations, normal_form: OnceLock::new() })
    }

    pub fn free(field: FrobeniusField, rank: usize) -> Self {
        FPModule { field, generators: rank, relations: Vec::new(), normal_form: OnceLock::new() }
    }

    /// `k{ξ}^free ⊕ ⊕_i k{ξ}/ξ^{orders_i}`.
    pub fn from_diagonal(field: FrobeniusField, free: usize, orders: &[usize]) -> Self {
        let g = free + orders.len();
        let relations = orders
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let mut row = vec![TwistedPoly::zero(); g];
                row[free + i] = TwistedPoly::xi_power(&field, r);
                row
            })
            .collect();
        FPModule { field, generators: g, relations, normal_form: OnceLock::new() }
    }

    pub fn field(&self) -> &FrobeniusField {
        &self.field
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Vec<TwistedPoly>] {
        &self.relations
    }

    pub fn max_entry_degree(&self) -> usize {
        self.relations.iter().flatten().filter_map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn normal_form(&self) -> &NormalForm {
        self.normal_form.get_or_init(|| diagonalize(&self.field, self.generators, &self.relations))
    }

    /// `dim_k M/ξ^N M` by linear algebra on the truncated raw presentation.
    pub fn quotient_dim_raw(&self, n: usize) -> usize {
        let k = &self.field;
        let cols = self.generators * n;
        if cols == 0 {
            return 0;
        }
        let mut rows = Vec::new();
        for rel in &self.relations {
            for i in 0..n {
                let shift = TwistedPoly::xi_power(k, i);
                let mut v = vec![FieldElement::ZERO; cols];
                for (j, e) in rel.iter().enumerate() {
                    let prod = tp_mul(k, &shift, e);
                    for (t, &c) in prod.coeffs().iter().enumerate().take(n) {
                        v[j * n + t] = c;
                    }
                }
                if v.iter().any(|c| !c.is_zero()) {
                    rows.push(v);
                }
            }
        }
        cols - rank_over(k, rows)
    }

    /// `(dim_k ker ξ^r, dim_k M/ξ^r M)`.
    pub fn torsion_and_quotient(&self, r: usize) -> Result<(usize, usize)> {
        if r == 0 {
            return invalid("r must be positive");
        }
        let nf = self.normal_form();
        let ker: usize = nf.diagonal.iter().map(|d| cyclic_kernel_dim(&self.field, d, r)).sum();
        Ok((ker, nf.quotient_dim(r)))
    }

    /// M is derived complete when it has no free part and every cyclic
    /// summand is already ξ-power torsion.
    pub fn is_derived_complete(&self) -> bool {
        let nf = self.normal_form();
        nf.free_rank == 0 && nf.diagonal.iter().all(|d| d.degree() == d.valuation())
    }

    /// Derived completion through truncation towers up to level `n`.
    pub fn derived_completion(&self, n: usize) -> Result<CompletionResult> {
        let need = self.max_entry_degree() + 2;
        if n < need {
            return invalid(format!("truncation {n} below degree bound + 2 = {need}"));
        }
        let nf = self.normal_form().clone();
        let l0_tower: Vec<usize> = (1..=n).map(|j| self.quotient_dim_raw(j)).collect();
        for (j, &dim) in l0_tower.iter().enumerate() {
            if dim != nf.quotient_dim(j + 1) {
                return Err(Error::Invariant(format!(
                    "raw quotient dim {dim} differs from normal form at level {}",
                    j + 1
                )));
            }
        }
        let orders = nf.torsion_orders();
        let stabilization = orders.last().map_or(1, |&v| v + 1);
        if stabilization > n {
            return Err(Error::NotStabilized(n));
        }
        // L1 = lim of kernels of the truncated (injective) resolution, read off
        // as stable images; two different top levels must agree.
        let l1_top = l1_stable_images(&self.field, &nf.diagonal, n, n);
        let l1_below = l1_stable_images(&self.field, &nf.diagonal, n - 1, n);
        if l1_top[..l1_top.len().min(l1_below.len())] != l1_below[..l1_top.len().min(l1_below.len())] {
            return Err(Error::NotStabilized(n));
        }
        Ok(CompletionResult {
            free_rank: nf.free_rank,
            torsion: orders,
            l0_tower,
            l1_tower: l1_top,
            stabilization,
            truncation: n,
        })
    }
}

/// Outcome of derived completion at a finite truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionResult {
    /// Rank over the completed ring `k{{ξ}}`.
    pub free_rank: usize,
    /// Orders `r` of the summands `k{ξ}/ξ^r` of L0.
    pub torsion: Vec<usize>,
    /// `dim_k L0/ξ^j L0` for `j = 1..=N`.
    pub l0_tower: Vec<usize>,
    /// Stable dimensions of `L1` truncations, `j = 1..=N/2`.
    pub l1_tower: Vec<usize>,
    pub stabilization: usize,
    pub truncation: usize,
}

impl CompletionResult {
    pub fn l1_is_zero(&self) -> bool {
        self.l1_tower.iter().all(|&d| d == 0)
    }

    /// A finitely presented module with the same completion as L0.
    pub fn l0_module(&self, field: &FrobeniusField) -> FPModule {
        FPModule::from_diagonal(field.clone(), self.free_rank, &self.torsion)
    }
}

/// Diagonalize by two-sided elementary operations: left multiples on rows,
/// right multiples on columns.
fn diagonalize(k: &FrobeniusField, gens: usize, rels: &[Vec<TwistedPoly>]) -> NormalForm {
    let mut a: Vec<Vec<TwistedPoly>> = rels.to_vec();
    let m = a.len();
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < m.min(gens) {
        let Some((pi, pj)) = min_entry(&a, t, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let piv = a[t][t].clone();
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, _) = tp_divmod(k, &a[i][t], &piv, Side::Left).unwrap();
                for j in t..gens {
                    let s = tp_mul(k, &q, &a[t][j]);
                    a[i][j] = tp_sub(k, &a[i][j], &s);
                }
            }
            for j in t + 1..gens {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, _) = tp_divmod(k, &a[t][j], &piv, Side::Right).unwrap();
                for row in a.iter_mut().skip(t) {
                    let s = tp_mul(k, &row[t], &q);
                    row[j] = tp_sub(k, &row[j], &s);
                }
            }
            // any leftover remainder in row t or column t becomes the new pivot
            let mut best: Option<(usize, usize)> = None;
            let mut best_deg = usize::MAX;
            for i in t + 1..m {
                if let Some(d) = a[i][t].degree() {
                    if d < best_deg {
                        best_deg = d;
                        best = Some((i, t));
                    }
                }
            }
            for j in t + 1..gens {
                if let Some(d) = a[t][j].degree() {
                    if d < best_deg {
                        best_deg = d;
                        best = Some((t, j));
                    }
                }
            }
            match best {
                None => break,
                Some((i, j)) => {
                    a.swap(t, i);
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
            }
        }
        let d = a[t][t].clone();
        let inv = k.inv(d.lead().unwrap()).unwrap();
        diagonal.push(tp_mul(k, &TwistedPoly::constant(inv), &d));
        t += 1;
    }
    NormalForm { free_rank: gens - diagonal.len(), diagonal }
}

fn min_entry(a: &[Vec<TwistedPoly>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best = None;
    let mut best_deg = usize::MAX;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, e) in row.iter().enumerate().skip(c0) {
            if let Some(d) = e.degree() {
                if d < best_deg {
                    best_deg = d;
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

/// F_p-coordinates of a truncated polynomial `Σ_{i<len} a_i ξ^i`.
fn fp_coords(k: &FrobeniusField, f: &TwistedPoly, len: usize) -> Vec<u32> {
    let n = k.degree();
    let mut v = vec![0u32; len * n];
    for i in 0..len {
        let c = f.coeff(i);
        v[i * n..(i + 1) * n].copy_from_slice(&k.to_coeffs(c));
    }
    v
}

/// `dim_k ker(ξ^r)` on `k{ξ}/k{ξ}d`, computed over F_p since ξ is semilinear.
fn cyclic_kernel_dim(k: &FrobeniusField, d: &TwistedPoly, r: usize) -> usize {
    let deg = d.degree().unwrap();
    if deg == 0 {
        return 0;
    }
    let n = k.degree();
    let basis_scalars: Vec<FieldElement> =
        (0..n).map(|e| k.pow(k.generator(), e as u64)).collect();
    let mut cols = Vec::new();
    for i in 0..deg {
        for &b in &basis_scalars {
            let img = TwistedPoly::monomial(k.frobenius(b, r as i64), i + r);
            let (_, rem) = tp_divmod(k, &img, d, Side::Left).unwrap();
            cols.push(fp_coords(k, &rem, deg));
        }
    }
    let mat = Matrix::from_rows(k.p(), cols.len(), &transpose(&cols));
    (deg * n - mat.rank()) / n
}

fn transpose(cols: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let rows = cols.first().map_or(0, |c| c.len());
    (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// For the diagonal resolution `x ↦ x d_i`, dims of the image of
/// `ker_top → ker_j` for `j = 1..=n/2`.
fn l1_stable_images(k: &FrobeniusField, diag: &[TwistedPoly], top: usize, n: usize) -> Vec<usize> {
    let deg = k.degree();
    let levels = n / 2;
    let mut out = vec![0usize; levels];
    for d in diag {
        // F_p matrix of x ↦ x·d on k{ξ}/ξ^top
        let scalars: Vec<FieldElement> = (0..deg).map(|e| k.pow(k.generator(), e as u64)).collect();
        let mut cols = Vec::new();
        for i in 0..top {
            for &b in &scalars {
                let x = TwistedPoly::monomial(b, i);
                cols.push(fp_coords(k, &tp_mul(k, &x, d), top));
            }
        }
        let map = Matrix::from_rows(k.p(), cols.len(), &transpose(&cols));
        let ker = map.kernel();
        for (j, slot) in out.iter_mut().enumerate() {
            let level = j + 1;
            // truncation to level keeps the first level*deg coordinates
            let rows: Vec<Vec<u32>> =
                ker.iter().map(|v| v[..level * deg].iter().map(|&x| x as u32).collect()).collect();
            if rows.is_empty() {
                continue;
            }
            *slot += Matrix::from_rows(k.p(), level * deg, &rows).rank() / deg;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FrobeniusField {
        FrobeniusField::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn commutation_rule() {
        let k = f4();
        let g = k.generator();
        let xi = TwistedPoly::xi_power(&k, 1);
        let prod = tp_mul(&k, &xi, &TwistedPoly::constant(g));
        assert_eq!(prod, TwistedPoly::monomial(k.add(g, k.one()), 1));
        let gx = TwistedPoly::monomial(g, 1);
        assert_eq!(tp_mul(&k, &gx, &gx), TwistedPoly::xi_power(&k, 2));
    }

    #[test]
    fn division_examples() {
        let k = f4();
        let x2 = TwistedPoly::xi_power(&k, 2);
        let x1 = TwistedPoly::xi_power(&k, 1);
        for side in [Side::Left, Side::Right] {
            assert_eq!(tp_divmod(&k, &x2, &x1, side).unwrap(), (x1.clone(), TwistedPoly::zero()));
            assert_eq!(
                tp_divmod(&k, &x1, &x1, side).unwrap(),
                (TwistedPoly::constant(k.one()), TwistedPoly::zero())
            );
        }
        assert!(tp_divmod(&k, &x1, &TwistedPoly::zero(), Side::Left).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let k = FrobeniusField::prime(3).unwrap();
        let m = FPModule::from_diagonal(k.clone(), 0, &[3]);
        assert_eq!(m.normal_form().torsion_orders(), vec![3]);
        let m = FPModule::new(k.clone(), 2, vec![vec![TwistedPoly::xi_power(&k, 1), TwistedPoly::xi_power(&k, 2)]])
            .unwrap();
        assert_eq!(m.normal_form().free_rank, 1);
        assert_eq!(m.normal_form().torsion_orders(), vec![1]);
        for n in 1..8 {
            assert_eq!(m.quotient_dim_raw(n), n + 1);
        }
        let z = FPModule::new(k.clone(), 2, vec![vec![TwistedPoly::zero(), TwistedPoly::zero()]]).unwrap();
        assert_eq!(z.normal_form().free_rank, 2);
    }

    #[test]
    fn torsion_and_quotient_examples() {
        let k = FrobeniusField::prime(2).unwrap();
        let c3 = FPModule::from_diagonal(k.clone(), 0, &[3]);
        assert_eq!(c3.torsion_and_quotient(1).unwrap(), (1, 1));
        assert_eq!(c3.torsion_and_quotient(5).unwrap(), (3, 3));
        let free = FPModule::free(k, 1);
        for r in 1..5 {
            assert_eq!(free.torsion_and_quotient(r).unwrap(), (0, r));
        }
    }

    #[test]
    fn completion_examples() {
        let k = FrobeniusField::prime(5).unwrap();
        let free = FPModule::free(k.clone(), 1);
        let c = free.derived_completion(6).unwrap();
        assert!(c.l1_is_zero());
        assert_eq!(c.free_rank, 1);
        assert!(!free.is_derived_complete());
        let tors = FPModule::from_diagonal(k.clone(), 0, &[2]);
        let c = tors.derived_completion(6).unwrap();
        assert_eq!((c.free_rank, c.torsion.clone()), (0, vec![2]));
        assert!(tors.is_derived_complete());
        let xi_minus_one = FPModule::new(
            k.clone(),
            1,
            vec![vec![TwistedPoly::new(vec![k.from_int(-1), k.one()])]],
        )
        .unwrap();
        let c = xi_minus_one.derived_completion(6).unwrap();
        assert_eq!(c.l0_tower, vec![0; 6]);
        assert!(!xi_minus_one.is_derived_complete());
        assert!(FPModule::free(k, 0).is_derived_complete());
    }
}
