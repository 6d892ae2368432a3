//! Binomial coefficients mod p with the convention `C(m, n) = 0` unless `0 <= n <= m`.

/// `C(m, n) mod p` via Lucas' theorem; zero outside `0 <= n <= m`.
pub fn binom_mod(m: i64, n: i64, p: u32) -> u32 {
    if n < 0 || m < 0 || n > m {
        return 0;
    }
    let p64 = p as i64;
    let (mut m, mut n) = (m, n);
    let mut r: u64 = 1;
    while n > 0 || m > 0 {
        let (a, b) = (m % p64, n % p64);
        if b > a {
            return 0;
        }
        r = r * small_binom(a as u64, b as u64, p) % p as u64;
        m /= p64;
        n /= p64;
    }
    r as u32
}

fn small_binom(a: u64, b: u64, p: u32) -> u64 {
    let p = p as u64;
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * crate::field::pow_mod(den as u32, p as u32 - 2, p as u32) as u64 % p
}

/// `(-1)^e` as an element of `F_p`.
pub fn sign(e: i64, p: u32) -> u32 {
    if e.rem_euclid(2) == 0 {
        1 % p
    } else {
        p - 1
    }
}
