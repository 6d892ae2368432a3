//! Lie powers of simplicial vector spaces and their homotopy.
//!
//! Two independent oracles compute `π_*(L^r_n(V))`:
//! * a generic one working with the Lie operad and explicit `Σ_n` matrices
//!   (`restricted_lie_power` followed by `SimplicialVectorSpace::homotopy`);
//! * a Lyndon model for simplicial vector spaces whose structure maps send
//!   basis vectors to basis vectors or zero. It realizes the free restricted
//!   Lie algebra inside the tensor algebra, where the standard bracketing
//!   `P_w` of a Lyndon word `w` has `w` as its smallest word. The powers
//!   `P_w^{p^k}` then form a basis that is unitriangular against the words
//!   `w^{p^k}`, so ranks can be read off those coordinates alone.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::koszul::{ext_closed, sphere, Flavor, Koszul};
use crate::linalg::{Echelon, Matrix, SparseEchelon, SparseVec};

/// Hard cap on `Σ_q (dim V_q)^n (n-1)!` for the generic oracle.
pub const GENERIC_BUDGET: u64 = 20_000_000;
/// Cap on the basis size per simplicial degree for the Lyndon model.
pub const LYNDON_BUDGET: usize = 2_000_000;

// ---------------------------------------------------------------- Lie operad

/// `Lie_n` with the left-normed basis `[..[x_0, x_{σ1}], .., x_{σ(n-1)}]`.
#[derive(Clone, Debug)]
pub struct LieOperad {
    p: u32,
    n: usize,
    basis: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    expansions: Vec<Vec<(Vec<u8>, i64)>>,
}

fn permutations(items: &[u8]) -> Vec<Vec<u8>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

fn left_normed_expansion(letters: &[u8]) -> Vec<(Vec<u8>, i64)> {
    let mut poly: Vec<(Vec<u8>, i64)> = vec![(vec![letters[0]], 1)];
    for &c in &letters[1..] {
        let mut next = Vec::with_capacity(poly.len() * 2);
        for (w, k) in &poly {
            let mut right = w.clone();
            right.push(c);
            next.push((right, *k));
            let mut left = vec![c];
            left.extend_from_slice(w);
            next.push((left, -k));
        }
        poly = next;
    }
    poly
}

impl LieOperad {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if !(1..=7).contains(&n) {
            return invalid(format!("Lie operad arity {n} outside 1..=7"));
        }
        let rest: Vec<u8> = (1..n as u8).collect();
        let basis: Vec<Vec<u8>> = permutations(&rest)
            .into_iter()
            .map(|t| {
                let mut w = vec![0u8];
                w.extend(t);
                w
            })
            .collect();
        let index = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let expansions = basis.iter().map(|w| left_normed_expansion(w)).collect();
        Ok(LieOperad { p, n, basis, index, expansions })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> String {
        let w = &self.basis[i];
        let mut s = format!("x{}", w[0] + 1);
        for &c in &w[1..] {
            s = format!("[{s},x{}]", c + 1);
        }
        s
    }

    /// Relabel `x_i ↦ x_{g(i)}` and renormalize: the coordinate on a basis
    /// element is the coefficient of its only word starting with `x_0`.
    pub fn act(&self, g: &[usize], v: &[u8]) -> Vec<u8> {
        let p = self.p as i64;
        let mut out = vec![0i64; self.dim()];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (w, k) in &self.expansions[j] {
                if g[w[0] as usize] != 0 {
                    continue;
                }
                let relabeled: Vec<u8> = w.iter().map(|&x| g[x as usize] as u8).collect();
                out[self.index[&relabeled]] += k * c as i64;
            }
        }
        out.into_iter().map(|x| x.rem_euclid(p) as u8).collect()
    }

    /// Matrix of `g`, columns are images of basis elements.
    pub fn action_matrix(&self, g: &[usize]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.p, d, d);
        for j in 0..d {
            let mut e = vec![0u8; d];
            e[j] = 1;
            for (i, c) in self.act(g, &e).into_iter().enumerate() {
                m.set(i, j, c as u32);
            }
        }
        m
    }

    fn minus_identity(&self, g: &[usize]) -> Matrix {
        let mut m = self.action_matrix(g);
        for i in 0..self.dim() {
            let v = m.get(i, i);
            m.set(i, i, (v + self.p - 1) % self.p);
        }
        m
    }

    /// Invariants under the subgroup generated by `gens`, as an echelon basis.
    pub fn fixed_space(&self, gens: &[Vec<usize>]) -> Echelon {
        let d = self.dim();
        let mut e = Echelon::new(self.p, d);
        if gens.is_empty() {
            for j in 0..d {
                let mut v = vec![0u8; d];
                v[j] = 1;
                e.insert(v);
            }
            return e;
        }
        let mut stacked = Matrix::zeros(self.p, 0, d);
        for g in gens {
            stacked = stacked.stack(&self.minus_identity(g));
        }
        for v in stacked.kernel() {
            e.insert(v);
        }
        e
    }

    /// Rank of `Σ_{h ∈ H} h` for a Young subgroup `H` given by block sizes.
    pub fn norm_rank(&self, blocks: &[usize]) -> usize {
        let d = self.dim();
        let mut elements: Vec<Vec<usize>> = vec![Vec::new()];
        let mut start = 0;
        for &b in blocks {
            let block: Vec<u8> = (start as u8..(start + b) as u8).collect();
            let perms = permutations(&block);
            elements = elements
                .into_iter()
                .flat_map(|prefix| {
                    perms.iter().map(move |perm| {
                        let mut g = prefix.clone();
                        g.extend(perm.iter().map(|&x| x as usize));
                        g
                    })
                })
                .collect();
            start += b;
        }
        let mut image = Echelon::new(self.p, d);
        for j in 0..d {
            let mut e = vec![0u8; d];
            e[j] = 1;
            let mut sum = vec![0u32; d];
            for g in &elements {
                for (i, x) in self.act(g, &e).into_iter().enumerate() {
                    sum[i] += x as u32;
                }
            }
            image.insert(sum.into_iter().map(|x| (x % self.p) as u8).collect());
        }
        image.dim()
    }

    /// Dimension of the coinvariants under the subgroup generated by `gens`.
    pub fn coinvariant_dim(&self, gens: &[Vec<usize>]) -> usize {
        let d = self.dim();
        let mut image = Echelon::new(self.p, d);
        for g in gens {
            let m = self.minus_identity(g);
            for j in 0..d {
                image.insert(m.column(j));
            }
        }
        d - image.dim()
    }
}

fn transposition(n: usize, j: usize) -> Vec<usize> {
    let mut g: Vec<usize> = (0..n).collect();
    g.swap(j, j + 1);
    g
}

/// Generators of the stabilizer of a sorted tuple.
fn young_generators(rep: &[u32]) -> Vec<Vec<usize>> {
    (0..rep.len().saturating_sub(1)).filter(|&j| rep[j] == rep[j + 1]).map(|j| transposition(rep.len(), j)).collect()
}

/// Block sizes of a sorted tuple; determines the stabilizer.
fn pattern(rep: &[u32]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (j, x) in rep.iter().enumerate() {
        if j > 0 && rep[j - 1] == *x {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
    }
    out
}

fn pattern_rep(pat: &[usize]) -> Vec<u32> {
    pat.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i as u32).take(k)).collect()
}

/// Nondecreasing tuples of length `n` over `d` letters.
fn multisets(d: usize, n: usize) -> Vec<Vec<u32>> {
    fn rec(d: u32, n: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in start..d {
            cur.push(x);
            rec(d, n, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d as u32, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Distinct rearrangements `t` of a sorted tuple with a permutation `g`, `g·rep = t`.
/// Positions move as `(g·v)_j = v_{g^{-1}(j)}`.
fn orbit_with_elements(rep: &[u32]) -> Vec<(Vec<u32>, Vec<usize>)> {
    let n = rep.len();
    let mut out = Vec::new();
    let mut t = rep.to_vec();
    loop {
        let mut seen: HashMap<u32, usize> = HashMap::new();
        let mut positions: HashMap<u32, Vec<usize>> = HashMap::new();
        for (j, &x) in t.iter().enumerate() {
            positions.entry(x).or_default().push(j);
        }
        let g: Vec<usize> = rep
            .iter()
            .map(|&x| {
                let k = seen.entry(x).or_insert(0);
                let pos = positions[&x][*k];
                *k += 1;
                pos
            })
            .collect();
        out.push((t.clone(), g));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| t[i] < t[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| t[j] > t[i]).unwrap();
        t.swap(i, j);
        t[i + 1..].reverse();
    }
    out
}

// ------------------------------------------------------ simplicial vector spaces

/// Finite-type simplicial vector space truncated at simplicial degree `top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialVectorSpace {
    pub p: u32,
    pub dims: Vec<usize>,
    /// `faces[q][i]: V_q → V_{q-1}`, empty for `q = 0`.
    pub faces: Vec<Vec<Matrix>>,
    /// `degeneracies[q][i]: V_q → V_{q+1}` for `q < top`.
    pub degeneracies: Vec<Vec<Matrix>>,
}

/// Basis-level description of structure maps that send basis vectors to
/// basis vectors or zero.
#[derive(Clone, Debug)]
pub struct SetLike {
    pub faces: Vec<Vec<Vec<Option<u32>>>>,
    pub degeneracies: Vec<Vec<Vec<u32>>>,
}

impl SimplicialVectorSpace {
    pub fn new(p: u32, dims: Vec<usize>, faces: Vec<Vec<Matrix>>, degeneracies: Vec<Vec<Matrix>>) -> Result<Self> {
        let v = SimplicialVectorSpace { p, dims, faces, degeneracies };
        v.check_identities()?;
        Ok(v)
    }

    pub fn zero(p: u32, top: usize) -> Self {
        let dims = vec![0; top + 1];
        let faces = (0..=top).map(|q| (0..if q == 0 { 0 } else { q + 1 }).map(|_| Matrix::zeros(p, 0, 0)).collect()).collect();
        let degeneracies = (0..top).map(|q| (0..=q).map(|_| Matrix::zeros(p, 0, 0)).collect()).collect();
        SimplicialVectorSpace { p, dims, faces, degeneracies }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    fn d(&self, q: usize, i: usize) -> &Matrix {
        &self.faces[q][i]
    }

    fn s(&self, q: usize, i: usize) -> &Matrix {
        &self.degeneracies[q][i]
    }

    /// All five families of simplicial identities, as matrix equations.
    pub fn check_identities(&self) -> Result<()> {
        let top = self.top();
        let fail = |what: &str, q: usize, i: usize, j: usize| -> Result<()> {
            Err(Error::Invariant(format!("simplicial identity {what} fails at q={q}, i={i}, j={j}")))
        };
        for q in 0..=top {
            if q > 0 && self.faces[q].len() != q + 1 {
                return invalid(format!("expected {} faces in degree {q}", q + 1));
            }
            if q < top && self.degeneracies[q].len() != q + 1 {
                return invalid(format!("expected {} degeneracies in degree {q}", q + 1));
            }
        }
        for q in 2..=top {
            for j in 0..=q {
                for i in 0..j {
                    if self.d(q - 1, i).mul(self.d(q, j)) != self.d(q - 1, j - 1).mul(self.d(q, i)) {
                        return fail("d_i d_j = d_{j-1} d_i", q, i, j);
                    }
                }
            }
        }
        for q in 0..top {
            for j in 0..=q {
                let s = self.s(q, j);
                for i in 0..=q + 1 {
                    let lhs = self.d(q + 1, i).mul(s);
                    let ok = if i < j {
                        lhs == self.s(q - 1, j - 1).mul(self.d(q, i))
                    } else if i == j || i == j + 1 {
                        lhs == Matrix::identity(self.p, self.dims[q])
                    } else {
                        lhs == self.s(q - 1, j).mul(self.d(q, i - 1))
                    };
                    if !ok {
                        return fail("d_i s_j", q, i, j);
                    }
                }
            }
        }
        for q in 0..top.saturating_sub(1) {
            for j in 0..=q {
                for i in 0..=j {
                    if self.s(q + 1, i).mul(self.s(q, j)) != self.s(q + 1, j + 1).mul(self.s(q, i)) {
                        return fail("s_i s_j = s_{j+1} s_i", q, i, j);
                    }
                }
            }
        }
        Ok(())
    }

    /// Alternating face sum `V_q → V_{q-1}`.
    pub fn boundary(&self, q: usize) -> Matrix {
        let mut m = Matrix::zeros(self.p, self.dims[q - 1], self.dims[q]);
        for (i, f) in self.faces[q].iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { self.p - 1 };
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let v = f.get(r, c);
                    if v != 0 {
                        m.add_to(r, c, v * sign % self.p);
                    }
                }
            }
        }
        m
    }

    /// `π_q` for `q < top`.
    pub fn homotopy(&self) -> Vec<usize> {
        let top = self.top();
        let ranks: Vec<usize> = (0..=top).into_par_iter().map(|q| if q == 0 { 0 } else { self.boundary(q).rank() }).collect();
        (0..top).map(|q| self.dims[q] - ranks[q] - ranks[q + 1]).collect()
    }

    pub fn set_like(&self) -> Option<SetLike> {
        let column_target = |m: &Matrix, j: usize| -> Option<Option<u32>> {
            let nz: Vec<usize> = (0..m.rows()).filter(|&i| m.get(i, j) != 0).collect();
            match nz.as_slice() {
                [] => Some(None),
                [i] if m.get(*i, j) == 1 => Some(Some(*i as u32)),
                _ => None,
            }
        };
        let mut faces = Vec::new();
        for q in 0..=self.top() {
            let mut fq = Vec::new();
            for f in &self.faces[q] {
                fq.push((0..self.dims[q]).map(|j| column_target(f, j)).collect::<Option<Vec<_>>>()?);
            }
            faces.push(fq);
        }
        let mut degeneracies = Vec::new();
        for q in 0..self.top() {
            let mut sq = Vec::new();
            for s in &self.degeneracies[q] {
                let col: Vec<u32> = (0..self.dims[q]).map(|j| column_target(s, j)).collect::<Option<Option<Vec<_>>>>()??;
                sq.push(col);
            }
            degeneracies.push(sq);
        }
        Some(SetLike { faces, degeneracies })
    }
}

/// Monotone maps `[q] → [m]` as value lists.
fn surjections(q: usize, m: usize) -> Vec<Vec<usize>> {
    // choose the m jump positions among 1..=q
    fn rec(pos: usize, q: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            let mut vals = Vec::with_capacity(q + 1);
            let mut v = 0;
            for x in 0..=q {
                if cur.contains(&x) {
                    v += 1;
                }
                vals.push(v);
            }
            out.push(vals);
            return;
        }
        for x in pos..=q {
            cur.push(x);
            rec(x + 1, q, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m <= q {
        rec(1, q, m, &mut Vec::new(), &mut out);
    }
    out
}

/// `Γ(C)` for a chain complex `C` with zero differential, up to degree `top`.
pub fn dold_kan(p: u32, chain: &BTreeMap<u32, usize>, top: usize) -> SimplicialVectorSpace {
    // basis of V_q: (surjection, chain degree m, index)
    let basis: Vec<Vec<(Vec<usize>, usize)>> = (0..=top)
        .map(|q| {
            let mut b = Vec::new();
            for (&m, &dim) in chain {
                for s in surjections(q, m as usize) {
                    for idx in 0..dim {
                        b.push((s.clone(), idx));
                    }
                }
            }
            b
        })
        .collect();
    let index: Vec<HashMap<(Vec<usize>, usize), usize>> =
        basis.iter().map(|b| b.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()).collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let onto = |v: &[usize], m: usize| -> bool { (0..=m).all(|x| v.contains(&x)) };
    let mut faces = vec![Vec::new()];
    for q in 1..=top {
        let mut fq = Vec::new();
        for i in 0..=q {
            let mut m = Matrix::zeros(p, dims[q - 1], dims[q]);
            for (j, (s, idx)) in basis[q].iter().enumerate() {
                let composite: Vec<usize> = (0..q).map(|x| s[if x < i { x } else { x + 1 }]).collect();
                if onto(&composite, s[q]) {
                    m.set(index[q - 1][&(composite, *idx)], j, 1);
                }
            }
            fq.push(m);
        }
        faces.push(fq);
    }
    let mut degeneracies = Vec::new();
    for q in 0..top {
        let mut sq = Vec::new();
        for i in 0..=q {
            let mut m = Matrix::zeros(p, dims[q + 1], dims[q]);
            for (j, (s, idx)) in basis[q].iter().enumerate() {
                let composite: Vec<usize> = (0..=q + 1).map(|x| s[if x <= i { x } else { x - 1 }]).collect();
                m.set(index[q + 1][&(composite, *idx)], j, 1);
            }
            sq.push(m);
        }
        degeneracies.push(sq);
    }
    SimplicialVectorSpace { p, dims, faces, degeneracies }
}

/// `Γ(Σ^l k)`.
pub fn sphere_model(p: u32, l: u32, top: usize) -> SimplicialVectorSpace {
    dold_kan(p, &[(l, 1)].into(), top)
}

// ------------------------------------------------------------- generic oracle

/// Which Lie power: invariants (restricted), raw coinvariants, or the image
/// of the norm map from coinvariants to invariants (the ordinary free Lie
/// power, where `[x, x] = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PowerKind {
    Invariants,
    Coinvariants,
    NormImage,
}

struct OrbitBasis {
    reps: Vec<Vec<u32>>,
    rep_index: HashMap<Vec<u32>, usize>,
    /// (orbit, coordinate in that orbit's fixed space)
    basis: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

fn check_budget(dims: &[usize], n: usize) -> Result<()> {
    let fact: u64 = (1..n as u64).product();
    let total: u64 = dims.iter().map(|&d| (d as u64).saturating_pow(n as u32).saturating_mul(fact)).sum();
    if total > GENERIC_BUDGET {
        return Err(Error::Budget(format!("{total} entries exceed the generic budget {GENERIC_BUDGET}")));
    }
    Ok(())
}

struct FixedCache<'a> {
    lie: &'a LieOperad,
    cache: HashMap<Vec<usize>, Echelon>,
}

impl FixedCache<'_> {
    fn get(&mut self, rep: &[u32]) -> &Echelon {
        let pat = pattern(rep);
        if !self.cache.contains_key(&pat) {
            let e = self.lie.fixed_space(&young_generators(&pattern_rep(&pat)));
            self.cache.insert(pat.clone(), e);
        }
        &self.cache[&pat]
    }
}

fn orbit_basis(cache: &mut FixedCache, d: usize, n: usize) -> OrbitBasis {
    let reps = multisets(d, n);
    let mut basis = Vec::new();
    let mut offsets = Vec::new();
    for (o, rep) in reps.iter().enumerate() {
        offsets.push(basis.len());
        for k in 0..cache.get(rep).dim() {
            basis.push((o, k));
        }
    }
    let rep_index = reps.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    OrbitBasis { reps, rep_index, basis, offsets }
}

/// Matrix of `L^r_n(f)` for a linear map `f: V → V'`, in orbit bases.
fn induced_map(cache: &mut FixedCache, f: &Matrix, src: &OrbitBasis, dst: &OrbitBasis) -> Matrix {
    let lie = cache.lie;
    let p = lie.p;
    let mut m = Matrix::zeros(p, dst.basis.len(), src.basis.len());
    let columns: Vec<Vec<(u32, u32)>> = (0..f.cols())
        .map(|j| (0..f.rows()).filter_map(|i| (f.get(i, j) != 0).then(|| (i as u32, f.get(i, j)))).collect())
        .collect();
    for (o, rep) in src.reps.iter().enumerate() {
        let src_basis: Vec<Vec<u8>> = cache.get(rep).basis().to_vec();
        if src_basis.is_empty() {
            continue;
        }
        // contributions per target representative: Σ coefficient · R_g a
        let mut acc: HashMap<usize, Vec<Vec<i64>>> = HashMap::new();
        for (t, g) in orbit_with_elements(rep) {
            // expand f^{⊗n}(t), keep sorted results
            let mut partial: Vec<(Vec<u32>, u32)> = vec![(Vec::new(), 1)];
            for &x in &t {
                let mut next = Vec::new();
                for (w, c) in &partial {
                    for &(y, e) in &columns[x as usize] {
                        if w.last().is_some_and(|&z| z > y) {
                            continue;
                        }
                        let mut w2 = w.clone();
                        w2.push(y);
                        next.push((w2, c * e % p));
                    }
                }
                partial = next;
            }
            for (target, c) in partial {
                let ti = dst.rep_index[&target];
                let entry = acc.entry(ti).or_insert_with(|| vec![vec![0; lie.dim()]; src_basis.len()]);
                for (k, a) in src_basis.iter().enumerate() {
                    for (i, x) in lie.act(&g, a).into_iter().enumerate() {
                        entry[k][i] += (x as u32 * c) as i64;
                    }
                }
            }
        }
        for (ti, vecs) in acc {
            let target = cache.get(&dst.reps[ti]).clone();
            for (k, v) in vecs.into_iter().enumerate() {
                let v: Vec<u8> = v.into_iter().map(|x| (x % p as i64) as u8).collect();
                let coords = target.coordinates(&v).expect("image of an invariant is invariant");
                for (r, c) in coords.into_iter().enumerate() {
                    if c != 0 {
                        m.set(dst.offsets[ti] + r, src.offsets[o] + k, c as u32);
                    }
                }
            }
        }
    }
    m
}

/// `L^r_n(V) = (Lie_n ⊗ V^{⊗n})^{Σ_n}` with restricted structure maps.
pub fn restricted_lie_power(v: &SimplicialVectorSpace, n: usize) -> Result<SimplicialVectorSpace> {
    let lie = LieOperad::new(v.p, n)?;
    check_budget(&v.dims, n)?;
    let mut cache = FixedCache { lie: &lie, cache: HashMap::new() };
    let bases: Vec<OrbitBasis> = v.dims.iter().map(|&d| orbit_basis(&mut cache, d, n)).collect();
    let dims = bases.iter().map(|b| b.basis.len()).collect();
    let mut faces = vec![Vec::new()];
    for q in 1..=v.top() {
        faces.push(v.faces[q].iter().map(|f| induced_map(&mut cache, f, &bases[q], &bases[q - 1])).collect());
    }
    let degeneracies = (0..v.top())
        .map(|q| v.degeneracies[q].iter().map(|s| induced_map(&mut cache, s, &bases[q], &bases[q + 1])).collect())
        .collect();
    Ok(SimplicialVectorSpace { p: v.p, dims, faces, degeneracies })
}

/// Dimension of `(Lie_n ⊗ U^{⊗n})^{Σ_n}` or `(..)_{Σ_n}` for graded `U`, by total degree.
pub fn lie_power_graded_dims(p: u32, u: &BTreeMap<u32, usize>, n: usize, kind: PowerKind) -> Result<BTreeMap<u32, usize>> {
    let lie = LieOperad::new(p, n)?;
    let degrees: Vec<u32> = u.iter().flat_map(|(&deg, &dim)| std::iter::repeat(deg).take(dim)).collect();
    check_budget(&[degrees.len()], n)?;
    let mut per_pattern: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut out = BTreeMap::new();
    for rep in multisets(degrees.len(), n) {
        let pat = pattern(&rep);
        let dim = *per_pattern.entry(pat.clone()).or_insert_with(|| {
            let gens = young_generators(&pattern_rep(&pat));
            match kind {
                PowerKind::Invariants => lie.fixed_space(&gens).dim(),
                PowerKind::Coinvariants => lie.coinvariant_dim(&gens),
                PowerKind::NormImage => lie.norm_rank(&pat),
            }
        });
        if dim > 0 {
            let deg: u32 = rep.iter().map(|&x| degrees[x as usize]).sum();
            *out.entry(deg).or_insert(0) += dim;
        }
    }
    Ok(out)
}

/// Ungraded dimension of a Lie power of a `d`-dimensional space.
pub fn lie_power_dim(p: u32, d: usize, n: usize, kind: PowerKind) -> Result<usize> {
    Ok(lie_power_graded_dims(p, &[(0, d)].into(), n, kind)?.values().sum())
}

// -------------------------------------------------------------- Lyndon model

type Word = u128;
type Poly = Vec<(Word, u32)>;

fn pack(letters: &[u8]) -> Word {
    letters.iter().fold(0, |acc, &x| (acc << 8) | x as Word)
}

fn unpack(w: Word, len: usize) -> Vec<u8> {
    (0..len).rev().map(|i| (w >> (8 * i)) as u8).collect()
}

/// Lyndon words of length exactly `m` over `d` letters (Duval's algorithm).
pub fn lyndon_words(d: usize, m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if d == 0 || m == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == m {
            out.push(w.clone());
        }
        // extend periodically to length m, then increment
        let k = w.len();
        while w.len() < m {
            w.push(w[w.len() - k]);
        }
        while w.last().is_some_and(|&x| x as usize == d - 1) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => break,
        }
    }
    out
}

fn is_lyndon(w: &[u8]) -> bool {
    (1..w.len()).all(|i| w[i..] > *w)
}

/// Expansion of the standard bracketing `P_w` in the tensor algebra, mod p.
struct Bracketing {
    p: u32,
    memo: HashMap<(Word, usize), Poly>,
}

impl Bracketing {
    fn concat(&self, a: &Poly, b: &Poly, lb: usize, sign: u32, acc: &mut HashMap<Word, u32>) {
        let p = self.p;
        for &(x, c) in a {
            for &(y, e) in b {
                let w = (x << (8 * lb)) | y;
                let v = acc.entry(w).or_insert(0);
                *v = (*v + c * e % p * sign) % p;
            }
        }
    }

    fn expand(&mut self, w: &[u8]) -> Poly {
        let key = (pack(w), w.len());
        if let Some(poly) = self.memo.get(&key) {
            return poly.clone();
        }
        let poly = if w.len() == 1 {
            vec![(w[0] as Word, 1)]
        } else {
            let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).unwrap();
            let (u, v) = w.split_at(split);
            let pu = self.expand(u);
            let pv = self.expand(v);
            let mut acc = HashMap::new();
            self.concat(&pu, &pv, v.len(), 1, &mut acc);
            self.concat(&pv, &pu, u.len(), self.p - 1, &mut acc);
            let mut out: Poly = acc.into_iter().filter(|e| e.1 != 0).collect();
            out.sort_unstable();
            out
        };
        self.memo.insert(key, poly.clone());
        poly
    }

    fn power(&mut self, w: &[u8], e: usize) -> Poly {
        let base = self.expand(w);
        let mut out = base.clone();
        for _ in 1..e {
            let mut acc = HashMap::new();
            self.concat(&out, &base, w.len(), 1, &mut acc);
            out = acc.into_iter().filter(|e| e.1 != 0).collect();
        }
        out.sort_unstable();
        out
    }
}

/// One basis element `P_w^{p^k}` of the free restricted Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct LyndonBasis {
    word: Vec<u8>,
    power: usize,
}

impl LyndonBasis {
    fn leading(&self) -> Word {
        let mut letters = Vec::with_capacity(self.word.len() * self.power);
        for _ in 0..self.power {
            letters.extend_from_slice(&self.word);
        }
        pack(&letters)
    }
}

fn support_mask(w: &[u8]) -> u128 {
    w.iter().fold(0, |m, &x| m | (1u128 << x))
}

/// Nondegenerate Lyndon basis of weight `n` over the letters of `V_q`.
fn lyndon_basis(p: u32, n: usize, d: usize, degenerate_masks: &[u128], kind: PowerKind) -> Result<Vec<LyndonBasis>> {
    if d > 128 {
        return Err(Error::Budget(format!("{d} letters exceed the Lyndon model limit")));
    }
    let mut out = Vec::new();
    let mut e = 1usize;
    while n % e == 0 {
        for w in lyndon_words(d, n / e) {
            let mask = support_mask(&w);
            if degenerate_masks.iter().all(|&m| mask & !m != 0) {
                out.push(LyndonBasis { word: w, power: e });
                if out.len() > LYNDON_BUDGET {
                    return Err(Error::Budget(format!("more than {LYNDON_BUDGET} basis elements")));
                }
            }
        }
        if kind != PowerKind::Invariants {
            break;
        }
        e *= p as usize;
    }
    Ok(out)
}

/// `π_q(L^r_n(V))` (or of the free Lie power) for `q <= max_stem`, using the Lyndon model.
pub fn homotopy_lyndon(v: &SimplicialVectorSpace, n: usize, max_stem: usize, kind: PowerKind) -> Result<Vec<usize>> {
    if n == 0 || n > 16 {
        return invalid(format!("Lie power {n} outside 1..=16"));
    }
    if v.top() < max_stem + 1 {
        return invalid(format!("need simplicial degree {}, have {}", max_stem + 1, v.top()));
    }
    if kind == PowerKind::Coinvariants {
        return invalid("the Lyndon model covers invariants and the norm image only");
    }
    let set = v.set_like().ok_or_else(|| Error::Invalid("structure maps do not permute a basis".into()))?;
    let p = v.p;
    let top = max_stem + 1;
    let masks: Vec<Vec<u128>> = (0..=top)
        .map(|q| {
            if q == 0 {
                return Vec::new();
            }
            set.degeneracies[q - 1].iter().map(|s| s.iter().fold(0u128, |m, &x| m | (1u128 << x))).collect()
        })
        .collect();
    let bases: Vec<Vec<LyndonBasis>> =
        (0..=top).map(|q| lyndon_basis(p, n, v.dims[q], &masks[q], kind)).collect::<Result<_>>()?;
    let mut ranks = vec![0usize; top + 1];
    for q in 1..=top {
        let lead: HashMap<Word, u32> = bases[q - 1].iter().enumerate().map(|(i, b)| (b.leading(), i as u32)).collect();
        let faces = &set.faces[q];
        let vectors: Vec<SparseVec> = bases[q]
            .par_chunks(256)
            .flat_map_iter(|chunk| {
                let mut br = Bracketing { p, memo: HashMap::new() };
                chunk
                    .iter()
                    .map(|b| {
                        let poly = br.power(&b.word, b.power);
                        let mut acc: HashMap<u32, u32> = HashMap::new();
                        for (i, f) in faces.iter().enumerate() {
                            let sign = if i % 2 == 0 { 1 } else { p - 1 };
                            'words: for &(w, c) in &poly {
                                let mut image: Word = 0;
                                for x in unpack(w, n) {
                                    match f[x as usize] {
                                        Some(y) => image = (image << 8) | y as Word,
                                        None => continue 'words,
                                    }
                                }
                                if let Some(&col) = lead.get(&image) {
                                    let e = acc.entry(col).or_insert(0);
                                    *e = (*e + c * sign) % p;
                                }
                            }
                        }
                        let mut sv: SparseVec = acc.into_iter().filter(|e| e.1 != 0).map(|(k, c)| (k, c as u8)).collect();
                        sv.sort_unstable();
                        sv
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut vectors = vectors;
        vectors.sort_by_key(|v| v.len());
        let mut ech = SparseEchelon::new(p);
        let target = bases[q - 1].len();
        for vec in vectors {
            if ech.rank() == target {
                break;
            }
            ech.insert(vec);
        }
        ranks[q] = ech.rank();
    }
    Ok((0..=max_stem).map(|q| bases[q].len() - ranks[q] - ranks[q + 1]).collect())
}

/// Homotopy of `L^r_n(V)` for `q <= max_stem`: Lyndon model when the structure
/// maps permute a basis, generic invariants otherwise.
pub fn homotopy_oracle(v: &SimplicialVectorSpace, n: usize, max_stem: usize) -> Result<Vec<usize>> {
    if v.set_like().is_some() {
        homotopy_lyndon(v, n, max_stem, PowerKind::Invariants)
    } else {
        homotopy_generic(v, n, max_stem)
    }
}

/// Homotopy through the explicit invariant construction.
pub fn homotopy_generic(v: &SimplicialVectorSpace, n: usize, max_stem: usize) -> Result<Vec<usize>> {
    if v.top() < max_stem + 1 {
        return invalid(format!("need simplicial degree {}, have {}", max_stem + 1, v.top()));
    }
    let truncated = truncate(v, max_stem + 1);
    let l = restricted_lie_power(&truncated, n)?;
    Ok(l.homotopy())
}

fn truncate(v: &SimplicialVectorSpace, top: usize) -> SimplicialVectorSpace {
    SimplicialVectorSpace {
        p: v.p,
        dims: v.dims[..=top].to_vec(),
        faces: v.faces[..=top].to_vec(),
        degeneracies: v.degeneracies[..top].to_vec(),
    }
}

// --------------------------------------------------------------- closed form

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartEntry {
    pub stem: u32,
    pub n: u64,
    pub dim: usize,
}

/// `(stem, n) → dim` with zero entries omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyChart {
    pub p: u32,
    pub l: u32,
    pub entries: Vec<ChartEntry>,
}

impl HomotopyChart {
    pub fn get(&self, stem: u32, n: u64) -> usize {
        self.entries.iter().find(|e| e.stem == stem && e.n == n).map_or(0, |e| e.dim)
    }
}

/// Homotopy of the free simplicial restricted Lie algebra on `Γ(Σ^l k)` from
/// the degenerate Ext spectral sequence, for homological degree `<= s_max`.
pub fn homotopy_closed_form(p: u32, l: u32, s_max: usize, max_stem: u32) -> Result<HomotopyChart> {
    if l == 0 {
        return invalid("l must be positive");
    }
    let k = Koszul::new(p)?;
    let mut acc: BTreeMap<(u32, u64), usize> = BTreeMap::new();
    let split = p != 2 && l % 2 == 1;
    for s in 0..=s_max {
        let ps = (p as u64).pow(s as u32);
        for stem in 0..=max_stem {
            let t = stem + s as u32;
            let flavor = if split { Flavor::Tilde } else { Flavor::Hat };
            let (dim, _) = ext_closed(&k, &sphere(l + 1), flavor, s, t + 1)?;
            if dim > 0 {
                *acc.entry((stem, ps)).or_insert(0) += dim;
            }
            if split && s >= 1 {
                let (dim, _) = ext_closed(&k, &sphere(2 * l + 2), Flavor::Tilde, s - 1, t + 1)?;
                if dim > 0 {
                    *acc.entry((stem, 2 * ps / p as u64)).or_insert(0) += dim;
                }
            }
        }
    }
    let entries = acc.into_iter().map(|((stem, n), dim)| ChartEntry { stem, n, dim }).collect();
    Ok(HomotopyChart { p, l, entries })
}

/// Is `n` of the form allowed by the degeneration (`p^h`, or also `2p^h` for odd `p`, `l`)?
pub fn allowed_power(p: u32, l: u32, n: u64) -> bool {
    let is_power = |mut m: u64| {
        while m % p as u64 == 0 {
            m /= p as u64;
        }
        m == 1
    };
    is_power(n) || (p != 2 && l % 2 == 1 && n % 2 == 0 && is_power(n / 2))
}

// ------------------------------------------------------------------- Curtis

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurtisDegree {
    pub q: usize,
    pub restricted_pn: usize,
    pub restricted_n: usize,
    pub norm_image_pn: usize,
    /// Raw coinvariants, for reference; they exceed the norm image in characteristic p.
    pub coinvariant_pn: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurtisReport {
    pub n: usize,
    pub degrees: Vec<CurtisDegree>,
    /// `V` is `connectivity`-connected.
    pub connectivity: i64,
    /// `π_*(L_{pn}(V))` for stems up to the bound.
    pub lie_homotopy: Vec<usize>,
    pub connectivity_bound: i64,
}

impl CurtisReport {
    pub fn splitting_ok(&self) -> bool {
        self.degrees.iter().all(|d| d.restricted_pn == d.restricted_n + d.norm_image_pn)
    }
    pub fn connectivity_ok(&self) -> bool {
        self.lie_homotopy
            .iter()
            .enumerate()
            .all(|(q, &d)| (q as i64) > self.connectivity_bound || d == 0)
    }
    pub fn passes(&self) -> bool {
        self.splitting_ok() && self.connectivity_ok()
    }
}

fn ceil_log2(n: usize) -> i64 {
    (usize::BITS - (n.max(1) - 1).leading_zeros()) as i64
}

/// Dimension identity `L^r_{pn} = L^r_n ⊕ L_{pn}` degreewise and the Curtis
/// connectivity of `L_{pn}(V)`.
pub fn curtis_split_check(v: &SimplicialVectorSpace, n: usize, max_stem: usize) -> Result<CurtisReport> {
    let p = v.p as usize;
    let pn = p * n;
    let mut degrees = Vec::new();
    for q in 0..=max_stem.min(v.top()) {
        let d = v.dims[q];
        degrees.push(CurtisDegree {
            q,
            restricted_pn: lie_power_dim(v.p, d, pn, PowerKind::Invariants)?,
            restricted_n: lie_power_dim(v.p, d, n, PowerKind::Invariants)?,
            norm_image_pn: lie_power_dim(v.p, d, pn, PowerKind::NormImage)?,
            coinvariant_pn: lie_power_dim(v.p, d, pn, PowerKind::Coinvariants)?,
        });
    }
    let pi_v = homotopy_lyndon(v, 1, max_stem, PowerKind::Invariants)?;
    let connectivity = pi_v.iter().position(|&x| x != 0).map_or(max_stem as i64, |i| i as i64 - 1);
    let lie_homotopy = homotopy_lyndon(v, pn, max_stem, PowerKind::NormImage)?;
    Ok(CurtisReport {
        n,
        degrees,
        connectivity,
        lie_homotopy,
        connectivity_bound: connectivity + ceil_log2(pn),
    })
}

// ------------------------------------------------------------ Hilton–Milnor

/// Hall basis on two letters up to the given weight (Lyndon words on `{1, 2}`).
pub fn hall_words(weight: usize) -> Vec<Vec<u8>> {
    (1..=weight).flat_map(|m| lyndon_words(2, m)).collect()
}

/// Bracket notation for a two-letter Hall word.
pub fn hall_label(w: &[u8]) -> String {
    if w.len() == 1 {
        return format!("i{}", w[0] + 1);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).unwrap();
    format!("[{},{}]", hall_label(&w[..split]), hall_label(&w[split..]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HiltonMilnorRow {
    pub degree: u32,
    pub free_sum: usize,
    pub hall_sum: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HiltonMilnorReport {
    pub p: u32,
    /// Number of Hall words per weight, starting at weight 1.
    pub hall_counts: Vec<usize>,
    pub rows: Vec<HiltonMilnorRow>,
}

impl HiltonMilnorReport {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(|r| r.free_sum == r.hall_sum)
    }
}

fn tensor_dims(a: &BTreeMap<u32, usize>, b: &BTreeMap<u32, usize>) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for (&da, &na) in a {
        for (&db, &nb) in b {
            *out.entry(da + db).or_insert(0) += na * nb;
        }
    }
    out
}

/// Graded dimensions of the free restricted Lie algebra on `u` up to `max_degree`.
fn free_dims(p: u32, u: &BTreeMap<u32, usize>, max_degree: u32) -> Result<BTreeMap<u32, usize>> {
    let u: BTreeMap<u32, usize> = u.iter().filter(|(&d, &n)| d <= max_degree && n > 0).map(|(&d, &n)| (d, n)).collect();
    let mut out = BTreeMap::new();
    let Some(&min_deg) = u.keys().next() else { return Ok(out) };
    if min_deg == 0 {
        return invalid("graded inputs must sit in positive degrees");
    }
    for n in 1..=(max_degree / min_deg) as usize {
        for (deg, dim) in lie_power_graded_dims(p, &u, n, PowerKind::Invariants)? {
            if deg <= max_degree {
                *out.entry(deg).or_insert(0) += dim;
            }
        }
    }
    Ok(out)
}

/// Compare `free(V1 ⊕ V2)` with `⊕_w free(w(V1, V2))` degreewise up to `max_degree`.
pub fn hilton_milnor_dims(
    p: u32,
    v1: &BTreeMap<u32, usize>,
    v2: &BTreeMap<u32, usize>,
    max_degree: u32,
) -> Result<HiltonMilnorReport> {
    let mut sum = v1.clone();
    for (&d, &n) in v2 {
        *sum.entry(d).or_insert(0) += n;
    }
    let lhs = free_dims(p, &sum, max_degree)?;
    let min_deg = sum.iter().filter(|e| *e.1 > 0).map(|e| *e.0).min().unwrap_or(1).max(1);
    let weight = (max_degree / min_deg) as usize;
    let words = hall_words(weight);
    let mut rhs: BTreeMap<u32, usize> = BTreeMap::new();
    for w in &words {
        let mut dims: BTreeMap<u32, usize> = [(0, 1)].into();
        for &x in w {
            dims = tensor_dims(&dims, if x == 0 { v1 } else { v2 });
        }
        for (d, n) in free_dims(p, &dims, max_degree)? {
            *rhs.entry(d).or_insert(0) += n;
        }
    }
    let hall_counts = (1..=weight).map(|m| words.iter().filter(|w| w.len() == m).count()).collect();
    let rows = (1..=max_degree)
        .map(|d| HiltonMilnorRow {
            degree: d,
            free_sum: lhs.get(&d).copied().unwrap_or(0),
            hall_sum: rhs.get(&d).copied().unwrap_or(0),
        })
        .collect();
    Ok(HiltonMilnorReport { p, hall_counts, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_pow(g: &[usize], k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..g.len()).collect();
        for _ in 0..k {
            out = out.iter().map(|&i| g[i]).collect();
        }
        out
    }

    #[test]
    fn lie_operad_small() {
        let l1 = LieOperad::new(2, 1).unwrap();
        assert_eq!(l1.dim(), 1);
        let l2 = LieOperad::new(3, 2).unwrap();
        assert_eq!(l2.action_matrix(&[1, 0]).get(0, 0), 2);
        let l2 = LieOperad::new(2, 2).unwrap();
        assert_eq!(l2.action_matrix(&[1, 0]).get(0, 0), 1);
        let l3 = LieOperad::new(5, 3).unwrap();
        assert_eq!(l3.dim(), 2);
        let c = [1, 2, 0];
        let m = l3.action_matrix(&c);
        assert_ne!(m, Matrix::identity(5, 2));
        assert_eq!(m.mul(&m).mul(&m), Matrix::identity(5, 2));
        assert_eq!(l3.label(1), "[[x1,x3],x2]");
        assert!(LieOperad::new(2, 8).is_err());
    }

    #[test]
    fn lie_operad_is_a_representation() {
        for n in 2..=5 {
            let lie = LieOperad::new(3, n).unwrap();
            assert_eq!(lie.dim(), (1..n).product::<usize>());
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let swap = transposition(n, 0);
            let composite: Vec<usize> = (0..n).map(|i| cycle[swap[i]]).collect();
            assert_eq!(lie.action_matrix(&composite), lie.action_matrix(&cycle).mul(&lie.action_matrix(&swap)));
            assert_eq!(lie.action_matrix(&perm_pow(&cycle, n)), Matrix::identity(3, lie.dim()));
        }
    }

    #[test]
    fn dold_kan_examples() {
        let v = sphere_model(2, 1, 5);
        assert_eq!(v.dims, vec![0, 1, 2, 3, 4, 5]);
        v.check_identities().unwrap();
        assert_eq!(v.homotopy(), vec![0, 1, 0, 0, 0]);
        let c = dold_kan(3, &[(0, 1)].into(), 3);
        assert_eq!(c.dims, vec![1, 1, 1, 1]);
        assert_eq!(c.homotopy(), vec![1, 0, 0]);
        let two = dold_kan(2, &[(1, 1), (2, 1)].into(), 5);
        let a = sphere_model(2, 2, 5);
        assert_eq!(two.dims.iter().zip(&v.dims).map(|(x, y)| x - y).collect::<Vec<_>>(), a.dims);
        assert_eq!(two.homotopy(), vec![0, 1, 1, 0, 0]);
        let mut broken = sphere_model(2, 1, 3);
        broken.faces[2][0] = Matrix::zeros(2, 1, 2);
        assert!(broken.check_identities().is_err());
    }

    #[test]
    fn restricted_power_examples() {
        let v = sphere_model(2, 1, 4);
        let l2 = restricted_lie_power(&v, 2).unwrap();
        assert_eq!(l2.dims, vec![0, 1, 3, 6, 10]);
        l2.check_identities().unwrap();
        assert_eq!(restricted_lie_power(&v, 1).unwrap(), v);
        let zero = restricted_lie_power(&SimplicialVectorSpace::zero(2, 3), 3).unwrap();
        assert!(zero.dims.iter().all(|&d| d == 0));
        let big = sphere_model(3, 1, 8);
        assert!(matches!(restricted_lie_power(&big, 7), Err(Error::Budget(_))));
    }

    #[test]
    fn bracketing_is_unitriangular() {
        let mut br = Bracketing { p: 3, memo: HashMap::new() };
        for w in lyndon_words(3, 5) {
            let poly = br.expand(&w);
            let lead = pack(&w);
            assert!(poly.iter().all(|&(u, _)| u >= lead));
            assert_eq!(poly.iter().find(|e| e.0 == lead).unwrap().1, 1);
        }
        assert_eq!(lyndon_words(2, 6).len(), 9);
        assert_eq!(hall_words(6).len(), 2 + 1 + 2 + 3 + 6 + 9);
        assert_eq!(hall_label(&[0, 0, 1]), "[i1,[i1,i2]]");
    }

    #[test]
    fn lyndon_counts_match_invariants() {
        for (p, d, n) in [(2, 3, 2), (2, 2, 4), (3, 2, 3), (3, 3, 3), (2, 4, 3)] {
            let inv = lie_power_dim(p, d, n, PowerKind::Invariants).unwrap();
            let co = lie_power_dim(p, d, n, PowerKind::NormImage).unwrap();
            let lyn = lyndon_basis(p, n, d, &[], PowerKind::Invariants).unwrap().len();
            let lyn_co = lyndon_basis(p, n, d, &[], PowerKind::NormImage).unwrap().len();
            assert_eq!((inv, co), (lyn, lyn_co), "p={p} d={d} n={n}");
        }
    }

    #[test]
    fn raw_coinvariants_keep_squares() {
        // (Lie_2 ⊗ V^{⊗2})_{Σ_2} is Sym^2 V in characteristic 2
        assert_eq!(lie_power_dim(2, 2, 2, PowerKind::Coinvariants).unwrap(), 3);
        assert_eq!(lie_power_dim(3, 2, 2, PowerKind::Coinvariants).unwrap(), 1);
    }

    #[test]
    fn oracle_examples() {
        for l in 1..=3 {
            let v = sphere_model(2, l, 5);
            let mut expect = vec![0; 5];
            expect[l as usize] = 1;
            assert_eq!(homotopy_oracle(&v, 1, 4).unwrap(), expect);
        }
        let v = sphere_model(2, 1, 5);
        assert_eq!(homotopy_oracle(&v, 2, 4).unwrap(), vec![0, 1, 1, 0, 0]);
        assert_eq!(homotopy_generic(&v, 2, 4).unwrap(), vec![0, 1, 1, 0, 0]);
        assert_eq!(homotopy_oracle(&v, 3, 4).unwrap(), vec![0; 5]);
    }

    #[test]
    fn closed_form_examples() {
        let c = homotopy_closed_form(2, 1, 3, 4).unwrap();
        for s in 0..=3 {
            assert_eq!(c.get(1, 1 << s), 1);
        }
        assert_eq!(c.get(2, 2), 1);
        assert!(c.entries.iter().all(|e| e.n.is_power_of_two()));
        let c3 = homotopy_closed_form(3, 1, 0, 4).unwrap();
        assert_eq!(c3.entries, vec![ChartEntry { stem: 1, n: 1, dim: 1 }]);
        assert!(allowed_power(3, 1, 6) && !allowed_power(3, 2, 6) && !allowed_power(2, 1, 6));
    }

    #[test]
    fn curtis_examples() {
        let v = sphere_model(2, 1, 5);
        let r = curtis_split_check(&v, 1, 4).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.connectivity, 0);
        assert_eq!(r.connectivity_bound, 1);
        assert_eq!(&r.lie_homotopy[..2], &[0, 0]);
        assert_eq!(r.degrees[2].coinvariant_pn, 3);
        let z = curtis_split_check(&SimplicialVectorSpace::zero(2, 5), 1, 4);
        assert!(z.unwrap().splitting_ok());
    }

    #[test]
    fn hilton_milnor_examples() {
        let s1: BTreeMap<u32, usize> = [(1, 1)].into();
        let r = hilton_milnor_dims(2, &s1, &s1, 6).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.hall_counts, vec![2, 1, 2, 3, 6, 9]);
        let r0 = hilton_milnor_dims(2, &s1, &BTreeMap::new(), 5).unwrap();
        assert!(r0.passes());
        let r1 = hilton_milnor_dims(3, &s1, &[(2, 1)].into(), 1).unwrap();
        assert_eq!(r1.rows, vec![HiltonMilnorRow { degree: 1, free_sum: 1, hall_sum: 1 }]);
    }
}
