//! Prime fields and small extensions `F_{p^n} = F_p[g]/(m(g))` with Frobenius.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Largest supported extension degree.
pub const MAX_EXT_DEGREE: usize = 4;

/// Element of `F_{p^n}`: coefficients of a polynomial in the generator, low degree first.
/// Unused slots beyond the extension degree are always zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    c: [u32; MAX_EXT_DEGREE],
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement { c: [0; MAX_EXT_DEGREE] };

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Raw coefficient array.
    pub fn coeffs(&self) -> &[u32; MAX_EXT_DEGREE] {
        &self.c
    }

    /// The constant term; this is the whole element for prime fields.
    pub fn constant(&self) -> u32 {
        self.c[0]
    }
}

/// A finite field of order `p^n` presented by an explicit irreducible modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusField {
    p: u32,
    n: usize,
    /// Monic modulus, low degree first, length `n + 1` (empty for prime fields).
    modulus: Vec<u32>,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = (a % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    a = r as u32;
    a
}

/// Remainder of `f` modulo monic `g` over `F_p`; polynomials low degree first.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * gi) % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// All monic polynomials over `F_p` of degree `d`.
fn monic_polys(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        v.push(1);
        v
    })
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    (1..=d / 2).all(|k| monic_polys(p, k).all(|g| !poly_rem(f, &g, p).is_empty()))
}

impl FrobeniusField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_{p^n}` with the given modulus (coefficients low degree first).
    pub fn new(p: u32, n: usize, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) || p > 251 {
            return invalid(format!("{p} is not a supported prime"));
        }
        if n == 0 || n > MAX_EXT_DEGREE {
            return invalid(format!("extension degree {n} outside 1..={MAX_EXT_DEGREE}"));
        }
        if n == 1 {
            return Ok(FrobeniusField { p, n, modulus: Vec::new() });
        }
        let m = match modulus {
            Some(m) => m,
            None => return invalid("extension fields need an explicit modulus"),
        };
        if m.len() != n + 1 {
            return invalid(format!("modulus must have {} coefficients", n + 1));
        }
        let mut m: Vec<u32> = m.iter().map(|&c| c % p).collect();
        let lead = m[n];
        if lead == 0 {
            return invalid("modulus has zero leading coefficient");
        }
        let li = inv_mod(lead, p);
        for c in m.iter_mut() {
            *c = *c * li % p;
        }
        if !is_irreducible(&m, p) {
            return invalid(format!("modulus {m:?} is reducible over F_{p}"));
        }
        Ok(FrobeniusField { p, n, modulus: m })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n as u32)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, a: i64) -> FieldElement {
        let mut e = FieldElement::ZERO;
        e.c[0] = a.rem_euclid(self.p as i64) as u32;
        e
    }

    /// Build from coefficients, reducing mod p; fails on too many coefficients.
    pub fn from_coeffs(&self, cs: &[u32]) -> Result<FieldElement> {
        if cs.len() > self.n {
            return invalid(format!("{} coefficients for a degree-{} field", cs.len(), self.n));
        }
        let mut e = FieldElement::ZERO;
        for (i, &c) in cs.iter().enumerate() {
            e.c[i] = c % self.p;
        }
        Ok(e)
    }

    /// Coefficients truncated to the extension degree.
    pub fn to_coeffs(&self, a: FieldElement) -> Vec<u32> {
        a.c[..self.n].to_vec()
    }

    /// The class of the polynomial generator `g`.
    pub fn generator(&self) -> FieldElement {
        if self.n == 1 {
            // any primitive-ish choice is fine for callers; use 1 for F_p
            return self.one();
        }
        let mut e = FieldElement::ZERO;
        e.c[1] = 1;
        e
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut r = FieldElement::ZERO;
        for i in 0..self.n {
            r.c[i] = (a.c[i] + b.c[i]) % self.p;
        }
        r
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let mut r = FieldElement::ZERO;
        for i in 0..self.n {
            r.c[i] = (self.p - a.c[i]) % self.p;
        }
        r
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, a: FieldElement, k: u32) -> FieldElement {
        let k = k % self.p;
        let mut r = FieldElement::ZERO;
        for i in 0..self.n {
            r.c[i] = a.c[i] * k % self.p;
        }
        r
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p;
        if self.n == 1 {
            let mut r = FieldElement::ZERO;
            r.c[0] = a.c[0] * b.c[0] % p;
            return r;
        }
        let n = self.n;
        let mut prod = [0u32; 2 * MAX_EXT_DEGREE];
        for i in 0..n {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % p;
            }
        }
        // reduce using g^n = -(m_0 + ... + m_{n-1} g^{n-1})
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                prod[k - n + i] = (prod[k - n + i] + p - c * self.modulus[i] % p) % p;
            }
        }
        let mut r = FieldElement::ZERO;
        r.c[..n].copy_from_slice(&prod[..n]);
        r
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut r = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^(p^s)`; negative `s` uses that the Frobenius has order `n`.
    pub fn frobenius(&self, a: FieldElement, s: i64) -> FieldElement {
        let s = s.rem_euclid(self.n as i64) as u32;
        let mut r = a;
        for _ in 0..s {
            r = self.pow(r, self.p as u64);
        }
        r
    }

    /// Every element, in a fixed order (zero first).
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.order())
            .map(|mut idx| {
                let mut e = FieldElement::ZERO;
                for i in 0..self.n {
                    e.c[i] = (idx % self.p as u64) as u32;
                    idx /= self.p as u64;
                }
                e
            })
            .collect()
    }

    /// Element with index `idx` in the ordering of [`elements`](Self::elements).
    pub fn element_from_index(&self, mut idx: u64) -> FieldElement {
        let mut e = FieldElement::ZERO;
        for i in 0..self.n {
            e.c[i] = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        e
    }

    pub fn format(&self, a: FieldElement) -> String {
        if self.n == 1 {
            return a.c[0].to_string();
        }
        let terms: Vec<String> = (0..self.n)
            .rev()
            .filter(|&i| a.c[i] != 0)
            .map(|i| match (i, a.c[i]) {
                (0, c) => c.to_string(),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}g"),
                (_, 1) => format!("g^{i}"),
                (_, c) => format!("{c}g^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}
