//! Modular-free factorization of small polynomials, shared by test targets.

use fewnomial_core::IntPoly;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

fn eval(p: &IntPoly, x: i64) -> i64 {
    p.eval(&BigInt::from(x)).to_i64().unwrap()
}

/// Irreducible factors with positive leading coefficient, found by rational
/// roots and, for quartics, quadratic factors `a x² + b x + c` whose middle
/// coefficient is pinned by `(a + b + c) | p(1)`.
pub fn oracle(p: &IntPoly, out: &mut Vec<IntPoly>) {
    let p = p.primitive_part();
    let deg = p.degree().unwrap();
    if deg == 0 {
        return;
    }
    if p.constant_term().is_zero() {
        out.push(IntPoly::x());
        return oracle(&p.exact_div(&IntPoly::x()).unwrap(), out);
    }
    let lc = p.leading_coeff().to_i64().unwrap();
    let c0 = p.constant_term().to_i64().unwrap();
    for a in divisors(lc) {
        for b in divisors(c0) {
            for s in [1, -1] {
                let cand = IntPoly::from_i64(&[s * b, a]);
                if let Some(q) = p.try_div(&cand) {
                    out.push(cand.primitive_part());
                    return oracle(&q, out);
                }
            }
        }
    }
    if deg == 4 {
        let p1 = eval(&p, 1);
        for a in divisors(lc) {
            for c in divisors(c0) {
                for sc in [1, -1] {
                    for d in divisors(p1) {
                        for sd in [1, -1] {
                            let b = sd * d - a - sc * c;
                            let cand = IntPoly::from_i64(&[sc * c, b, a]);
                            if let Some(q) = p.try_div(&cand) {
                                out.push(cand);
                                return oracle(&q, out);
                            }
                        }
                    }
                }
            }
        }
    }
    out.push(p);
}

pub fn sorted(mut v: Vec<IntPoly>) -> Vec<IntPoly> {
    v.sort_by(|a, b| a.canonical_cmp(b));
    v
}

/// Every non-zero polynomial of degree at most 4 with coefficients in [-3, 3].
pub fn small_polynomials() -> impl Iterator<Item = IntPoly> {
    (0..7i64.pow(5))
        .map(|mut k| {
            let mut c = [0i64; 5];
            for x in c.iter_mut() {
                *x = k % 7 - 3;
                k /= 7;
            }
            IntPoly::from_i64(&c)
        })
        .filter(|p| !p.is_zero())
}
