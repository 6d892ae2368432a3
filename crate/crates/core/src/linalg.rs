//! Exact linear algebra over `F_p` (dense `u8` storage, so `p < 256`) plus a
//! sparse incremental echelon form for large boundary matrices, and a small
//! dense elimination over extension fields.

use std::collections::HashMap;

use crate::field::{inv_mod, FieldElement, FrobeniusField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j] as u32
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = (v % self.p) as u8;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v % self.p);
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let p = self.p;
        let mut out = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u32;
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b as u32) % p;
                }
            }
        }
        Matrix { p, rows: self.rows, cols: other.cols, data: out.into_iter().map(|x| x as u8).collect() }
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % self.p as u64) as u8
            })
            .collect()
    }

    pub fn stack(&self, below: &Matrix) -> Matrix {
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Matrix { p: self.p, rows: self.rows + below.rows, cols: self.cols, data }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        row_reduce(&mut rows, self.p).len()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u8>> {
        let mut rows = self.to_rows();
        let pivots = row_reduce(&mut rows, self.p);
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                let x = rows[r][free] as u32;
                v[c] = ((p - x) % p) as u8;
            }
            basis.push(v);
        }
        basis
    }
}

/// Reduced row echelon form in place; returns pivot columns, rows beyond the
/// rank are zero and truncated away.
pub fn row_reduce(rows: &mut Vec<Vec<u8>>, p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c] as u32, p);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = ((*x as u32 * inv) % p) as u8;
            }
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c] as u32;
            axpy(row, f, &prow, p);
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// `row += f * other` over `F_p`.
#[inline]
pub fn axpy(row: &mut [u8], f: u32, other: &[u8], p: u32) {
    if p == 2 {
        if f & 1 == 1 {
            for (a, &b) in row.iter_mut().zip(other) {
                *a ^= b;
            }
        }
        return;
    }
    for (a, &b) in row.iter_mut().zip(other) {
        if b != 0 {
            *a = ((*a as u32 + f * b as u32) % p) as u8;
        }
    }
}

/// Incrementally maintained reduced echelon basis of a subspace of `F_p^n`.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    n: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    pivot_of_col: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(p: u32, n: usize) -> Self {
        Echelon { p, n, rows: Vec::new(), pivots: Vec::new(), pivot_of_col: HashMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Reduce `v` against the basis.
    pub fn reduce(&self, v: &mut [u8]) {
        for (r, &c) in self.pivots.iter().enumerate() {
            let x = v[c];
            if x != 0 {
                axpy(v, self.p - x as u32, &self.rows[r], self.p);
            }
        }
    }

    /// Insert `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else { return false };
        let inv = inv_mod(v[c] as u32, self.p);
        for x in v.iter_mut() {
            *x = ((*x as u32 * inv) % self.p) as u8;
        }
        for row in self.rows.iter_mut() {
            let x = row[c];
            if x != 0 {
                axpy(row, self.p - x as u32, &v, self.p);
            }
        }
        self.pivot_of_col.insert(c, self.rows.len());
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis (`None` if outside the span).
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        let coords: Vec<u8> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut w = v.to_vec();
        for (r, &x) in coords.iter().enumerate() {
            if x != 0 {
                axpy(&mut w, self.p - x as u32, &self.rows[r], self.p);
            }
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

/// Sparse vector over `F_p`: sorted `(index, nonzero value)` pairs.
pub type SparseVec = Vec<(u32, u8)>;

/// Incremental echelon form over `F_p` on sparse rows; pivot = leading index.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    p: u32,
    rows: HashMap<u32, SparseVec>,
}

impl SparseEchelon {
    pub fn new(p: u32) -> Self {
        SparseEchelon { p, rows: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert; returns true when independent of the current rows.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        let p = self.p;
        loop {
            let Some(&(lead, x)) = v.first() else { return false };
            match self.rows.get(&lead) {
                Some(row) => {
                    let f = p - x as u32;
                    v = sparse_axpy(&v, f, row, p);
                }
                None => {
                    let inv = inv_mod(x as u32, p);
                    for e in v.iter_mut() {
                        e.1 = ((e.1 as u32 * inv) % p) as u8;
                    }
                    self.rows.insert(lead, v);
                    return true;
                }
            }
        }
    }
}

/// `a + f * b` for sorted sparse vectors.
pub fn sparse_axpy(a: &[(u32, u8)], f: u32, b: &[(u32, u8)], p: u32) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, ((f * b[j].1 as u32) % p) as u8));
            j += 1;
        } else {
            let v = (a[i].1 as u32 + f * b[j].1 as u32) % p;
            if v != 0 {
                out.push((a[i].0, v as u8));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Rank of a list of vectors over an extension field.
pub fn rank_over(field: &FrobeniusField, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        let prow: Vec<FieldElement> = rows[r].iter().map(|&x| field.mul(x, inv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c];
            if f.is_zero() {
                continue;
            }
            for (a, &b) in row.iter_mut().zip(&prow) {
                *a = field.sub(*a, field.mul(f, b));
            }
        }
        rows[r] = prow;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel_agree() {
        let m = Matrix::from_rows(3, 4, &[vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.apply(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn echelon_coordinates_roundtrip() {
        let mut e = Echelon::new(5, 3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(e.insert(vec![0, 1, 4]));
        assert!(!e.insert(vec![1, 3, 2]));
        let c = e.coordinates(&[2, 4, 1]).unwrap();
        let mut v = vec![0u8; 3];
        for (r, &x) in c.iter().enumerate() {
            axpy(&mut v, x as u32, &e.basis()[r], 5);
        }
        assert_eq!(v, vec![2, 4, 1]);
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let rows = vec![vec![1u32, 0, 2, 0], vec![0, 1, 1, 0], vec![1, 1, 0, 0], vec![0, 0, 0, 1]];
        let dense = Matrix::from_rows(3, 4, &rows).rank();
        let mut s = SparseEchelon::new(3);
        for r in &rows {
            let v: SparseVec = r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, x as u8)).collect();
            s.insert(v);
        }
        assert_eq!(s.rank(), dense);
    }
}
