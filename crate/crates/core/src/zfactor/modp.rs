//! Dense polynomial arithmetic over a prime field `F_p` (`p < 2^32`).
//!
//! Polynomials are coefficient vectors in `[0, p)`, lowest degree first, with
//! no trailing zeros.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arith::pow_mod;

/// A polynomial over `F_p` tagged with its modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPoly {
    pub modulus: u64,
    pub coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}*x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, c) => write!(f, "{c}*x^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " (mod {})", self.modulus)
    }
}

pub(crate) fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_one(a: &[u64]) -> bool {
    a.len() == 1 && a[0] == 1
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
        out.push(if x >= p { x - p } else { x });
    }
    trim(out)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push(if x >= y { x - y } else { x + p - y });
    }
    trim(out)
}

pub(crate) fn scale(a: &[u64], k: u64, p: u64) -> Vec<u64> {
    trim(a.iter().map(|&c| mulm(c, k, p)).collect())
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += (x * y) as u128;
        }
    }
    trim(acc.into_iter().map(|c| (c % p as u128) as u64).collect())
}

pub(crate) fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv(lc, p), p),
    }
}

/// Division with remainder; `b` must be non-zero.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial over F_p");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = b.len() - 1;
    let lc_inv = inv(b[db], p);
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let top = rem[i + db];
        if top == 0 {
            continue;
        }
        let c = mulm(top, lc_inv, p);
        quot[i] = c;
        let neg = p - c;
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] = (rem[i + j] + mulm(neg, bj, p)) % p;
        }
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.len() < b.len() {
        return a.to_vec();
    }
    let db = b.len() - 1;
    let lc_inv = inv(b[db], p);
    let mut r = a.to_vec();
    for i in (0..=a.len() - b.len()).rev() {
        let top = r[i + db];
        if top == 0 {
            continue;
        }
        let neg = p - mulm(top, lc_inv, p);
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mulm(neg, bj, p)) % p;
        }
    }
    r.truncate(db);
    trim(r)
}

/// Monic gcd (empty when both inputs are zero).
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut u, mut v) = (a.to_vec(), b.to_vec());
    while !v.is_empty() {
        let r = rem(&u, &v, p);
        u = v;
        v = r;
    }
    monic(&u, p)
}

/// `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub(crate) fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s);
        t0 = core::mem::replace(&mut t1, t);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(&lc) => {
            let k = inv(lc, p);
            (scale(&r0, k, p), scale(&s0, k, p), scale(&t0, k, p))
        }
    }
}

pub(crate) fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(e, &c)| mulm(c, e as u64 % p, p))
            .collect(),
    )
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn powmod(base: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, f, p);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, f, p);
        }
    }
    rem(&acc, f, p)
}

/// Frobenius map `h -> h^p mod f` as a matrix: row `i` holds `x^(i·p) mod f`.
pub(crate) struct Frobenius {
    rows: Vec<Vec<u64>>,
    p: u64,
}

impl Frobenius {
    pub(crate) fn new(f: &[u64], p: u64) -> Self {
        let n = f.len() - 1;
        let mut rows = Vec::with_capacity(n);
        let mut cur = vec![1u64];
        rows.push(cur.clone());
        if (p as usize) < n {
            // advance by x^p through p single shifts, each reduced in O(n)
            for _ in 1..n {
                for _ in 0..p {
                    cur = shift_reduce(&cur, f, p);
                }
                rows.push(cur.clone());
            }
        } else {
            let xp = powmod(&[0, 1], p as u128, f, p);
            for _ in 1..n {
                cur = mulmod(&cur, &xp, f, p);
                rows.push(cur.clone());
            }
        }
        Frobenius { rows, p }
    }

    pub(crate) fn apply(&self, h: &[u64]) -> Vec<u64> {
        let n = self.rows.len();
        let mut acc = vec![0u128; n];
        for (i, &c) in h.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &r) in self.rows[i].iter().enumerate() {
                acc[j] += (c * r) as u128;
            }
        }
        trim(acc.into_iter().map(|c| (c % self.p as u128) as u64).collect())
    }
}

/// `x·a mod f` for monic `f` with `deg a < deg f`.
fn shift_reduce(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let n = f.len() - 1;
    let mut out = vec![0u64; n + 1];
    out[1..=a.len()].copy_from_slice(a);
    let top = out[n];
    if top != 0 {
        let neg = p - top;
        for j in 0..n {
            out[j] = (out[j] + mulm(neg, f[j], p)) % p;
        }
        out[n] = 0;
    }
    trim(out)
}

/// Squarefree decomposition of a monic polynomial (Musser's algorithm with
/// the `p`-th root step for vanishing derivatives).
pub(crate) fn squarefree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let d = derivative(f, p);
    if d.is_empty() {
        for (h, m) in squarefree(&pth_root(f, p), p) {
            out.push((h, m * p as usize));
        }
        return out;
    }
    let mut c = gcd(f, &d, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while !is_one(&w) {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if z.len() > 1 {
            out.push((monic(&z, p), i));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        for (h, m) in squarefree(&pth_root(&c, p), p) {
            out.push((h, m * p as usize));
        }
    }
    out
}

fn pth_root(f: &[u64], p: u64) -> Vec<u64> {
    trim(f.iter().step_by(p as usize).copied().collect())
}

pub(crate) fn is_squarefree(f: &[u64], p: u64) -> bool {
    let d = derivative(f, p);
    !d.is_empty() && gcd(f, &d, p).len() == 1
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// `(product of all irreducible factors of degree d, d)`.
pub(crate) fn distinct_degree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return out;
    }
    let frob = Frobenius::new(f, p);
    let mut rest = f.to_vec();
    let mut h = rem(&[0, 1], f, p);
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            let deg = rest.len() - 1;
            out.push((rest, deg));
            break;
        }
        h = frob.apply(&h);
        let g = gcd(&sub(&h, &[0, 1], p), &rest, p);
        if g.len() > 1 {
            rest = divrem(&rest, &g, p).0;
            out.push((g, d));
        }
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree `d` (Cantor-
/// Zassenhaus; trace map for `p = 2`).
pub(crate) fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    loop {
        let a: Vec<u64> = trim((0..n).map(|_| rng.next_u64() % p).collect());
        if a.len() <= 1 {
            continue;
        }
        let g = gcd(&a, f, p);
        if g.len() > 1 && g.len() < f.len() {
            return split_and_recurse(f, &g, d, p, rng);
        }
        let b = if p == 2 {
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = mulmod(&t, &t, f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = powmod(&t, p as u128, f, p);
                acc = mulmod(&acc, &t, f, p);
            }
            let b = powmod(&acc, ((p - 1) / 2) as u128, f, p);
            sub(&b, &[1], p)
        };
        let g = gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            return split_and_recurse(f, &g, d, p, rng);
        }
    }
}

fn split_and_recurse(f: &[u64], g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let h = divrem(f, g, p).0;
    let mut out = equal_degree(g, d, p, rng);
    out.extend(equal_degree(&monic(&h, p), d, p, rng));
    out
}

/// All monic irreducible factors of a squarefree monic polynomial, sorted.
pub(crate) fn factor_squarefree(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, &mut rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    out
}

/// Degrees of the irreducible factors of a squarefree monic polynomial.
pub(crate) fn degree_pattern(f: &[u64], p: u64) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        let count = (g.len() - 1) / d;
        out.extend(core::iter::repeat_n(d, count));
    }
    out
}
