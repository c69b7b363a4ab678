//! Linear Hensel lifting of a modular factorization to `p^k`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp;
use crate::arith::bigint_mod_u64;
use crate::polyring::IntPoly;

fn from_mod(v: &[u64]) -> IntPoly {
    IntPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
}

/// Coefficients reduced into `[0, m)`.
pub(crate) fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients reduced into `(-m/2, m/2]`.
pub(crate) fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m / 2u32;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `target ≡ g·h (mod p)` (all monic) to `G·H ≡ target (mod p^k)`.
fn lift_pair(target: &IntPoly, g: &[u64], h: &[u64], p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = modp::ext_gcd(g, h, p);
    debug_assert!(modp::is_one(&one), "modular factors must be coprime");
    let pb = BigInt::from(p);
    let mut big_g = from_mod(g);
    let mut big_h = from_mod(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let pj_next = &pj * &pb;
        let diff = reduce(&(target - &(&big_g * &big_h)), &pj_next);
        debug_assert!(diff.coeffs().iter().all(|c| (c % &pj).is_zero()));
        let e: Vec<u64> = modp::trim(
            diff.coeffs()
                .iter()
                .map(|c| bigint_mod_u64(&(c / &pj), p))
                .collect(),
        );
        let et = modp::mul(&e, &t, p);
        let (q, a) = modp::divrem(&et, g, p);
        let b = modp::rem(
            &modp::add(&modp::mul(&e, &s, p), &modp::mul(&q, h, p), p),
            h,
            p,
        );
        big_g = reduce(&(&big_g + &from_mod(&a).scale(&pj)), &pj_next);
        big_h = reduce(&(&big_h + &from_mod(&b).scale(&pj)), &pj_next);
        pj = pj_next;
    }
    (big_g, big_h)
}

/// Lifts the monic modular factors of `f` (primitive, `p ∤ lc f`) to monic
/// factors modulo `p^k` whose product is `lc(f)^{-1}·f mod p^k`.
pub(crate) fn lift_factors(f: &IntPoly, factors: &[Vec<u64>], p: u64, k: u32) -> Vec<IntPoly> {
    let modulus = num_traits::pow(BigInt::from(p), k as usize);
    let lc_inv = mod_inverse(f.leading_coeff(), &modulus);
    let target = reduce(&f.scale(&lc_inv), &modulus);
    lift_rec(&target, factors, p, k)
}

fn lift_rec(target: &IntPoly, factors: &[Vec<u64>], p: u64, k: u32) -> Vec<IntPoly> {
    match factors.len() {
        0 => Vec::new(),
        1 => alloc::vec![target.clone()],
        _ => {
            let mid = factors.len() / 2;
            let left = factors[..mid].iter().fold(alloc::vec![1u64], |a, g| modp::mul(&a, g, p));
            let right = factors[mid..].iter().fold(alloc::vec![1u64], |a, g| modp::mul(&a, g, p));
            let (big_l, big_r) = lift_pair(target, &left, &right, p, k);
            let mut out = lift_rec(&big_l, &factors[..mid], p, k);
            out.extend(lift_rec(&big_r, &factors[mid..], p, k));
            out
        }
    }
}
