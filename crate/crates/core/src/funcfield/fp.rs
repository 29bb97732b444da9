//! Dense polynomials over the prime field F_p.
//!
//! Coefficients are `u64` residues in ascending degree order. All functions
//! return trimmed vectors (no trailing zeros); the zero polynomial is empty.

pub(crate) fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn pow_mod_p(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_p(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod_p(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0);
        out.push(x % p);
    }
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = inv_p(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        q[shift] = c;
        for (j, &y) in b.iter().enumerate() {
            let t = mul_mod(c, y, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        r = trim(r);
        // trim can drop more than one degree at once
        if r.len() <= db {
            break;
        }
    }
    (trim(q), r)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub(crate) fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_p(l, p);
            a.iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // extended Euclid tracking only the coefficient of `a`
    let mut r0 = trim(m.to_vec());
    let mut r1 = rem(a, m, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_p(r0[0], p);
    Some(rem(&s0.iter().map(|&x| mul_mod(x, c, p)).collect::<Vec<_>>(), m, p))
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod_u64(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

/// Irreducibility by trial division against every monic polynomial of
/// degree `1..=deg/2`.
pub(crate) fn is_irreducible_trial(f: &[u64], p: u64) -> bool {
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                g.push(t % p);
                t /= p;
            }
            g.push(1);
            if rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Ben-Or irreducibility test.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = powmod_u64(&h, p, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `n` over F_p,
/// comparing coefficient vectors constant-first.
pub(crate) fn smallest_irreducible(n: usize, p: u64, trial: bool) -> Vec<u64> {
    assert!(n >= 1);
    if n == 1 {
        return vec![0, 1];
    }
    // c_0 is the most significant digit; c_0 = 0 is divisible by x
    let mut digits = vec![0u64; n];
    digits[0] = 1;
    loop {
        let mut f = digits.clone();
        f.push(1);
        let ok = if trial {
            is_irreducible_trial(&f, p)
        } else {
            is_irreducible(&f, p)
        };
        if ok {
            return f;
        }
        // odometer: the last coefficient varies fastest
        let mut i = n - 1;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            assert!(i > 0, "no irreducible polynomial found");
            i -= 1;
        }
    }
}
