//! Cyclotomic polynomials, cyclotomic parts and the split of an integer
//! polynomial into cyclotomic, reciprocal non-cyclotomic and non-reciprocal
//! pieces.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{
    bigint_mod_u64, factor_u64, pow_mod, prime_one_mod, primitive_root_of_unity, totient_sieve,
};
use crate::polyring::IntPoly;
use crate::zfactor::{factor_z, FactorConfig};
use crate::Result;

/// `Φ_n(x)`.
///
/// Built from `Φ_1 = x - 1` through `Φ_{mp}(x) = Φ_m(x^p) / Φ_m(x)` for each
/// prime `p | n`, then `Φ_n(x) = Φ_rad(n)(x^{n/rad(n)})`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut phi = IntPoly::from_i64(&[-1, 1]);
    let mut rad = 1u64;
    for (p, _) in factor_u64(n) {
        let inflated = phi.inflate(p as usize);
        phi = inflated.exact_div(&phi).expect("Φ_m divides Φ_m(x^p)");
        rad *= p;
    }
    phi.inflate((n / rad) as usize)
}

/// Whether `p` vanishes at a primitive `n`-th root of unity modulo a prime
/// `q ≡ 1 (mod n)`. A `false` answer proves `Φ_n ∤ p`.
fn may_have_root_of_order(p: &IntPoly, n: u64) -> bool {
    let q = prime_one_mod(n);
    let w = match primitive_root_of_unity(n, q) {
        Some(w) => w,
        None => return true,
    };
    let mut acc = 0u64;
    for (e, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cm = bigint_mod_u64(c, q);
        if cm != 0 {
            let term = crate::arith::mul_mod(cm, pow_mod(w, e as u64 % n, q), q);
            acc = (acc + term) % q;
        }
    }
    acc == 0
}

/// Indices `n` (ascending) that can possibly divide a polynomial of the
/// given degree: all `n` with `φ(n) ≤ deg`.
pub fn candidate_indices(deg: usize) -> Vec<u64> {
    if deg == 0 {
        return Vec::new();
    }
    // φ(n) ≥ sqrt(n/2), so φ(n) ≤ deg forces n ≤ 2 deg²
    let limit = 2 * deg * deg + 2;
    let phi = totient_sieve(limit);
    (1..=limit)
        .filter(|&n| (phi[n] as usize) <= deg)
        .map(|n| n as u64)
        .collect()
}

/// Cyclotomic factors `(n, multiplicity)` of `p` in increasing `n`, and the
/// cofactor with all of them divided out.
pub fn cyclotomic_part(p: &IntPoly) -> (Vec<(u64, u32)>, IntPoly) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    let deg = match p.degree() {
        Some(d) if d > 0 => d,
        _ => return (found, rest),
    };
    let phi = totient_sieve(2 * deg * deg + 2);
    for n in candidate_indices(deg - p.valuation()) {
        let live = rest.degree().unwrap_or(0) - rest.valuation();
        if phi[n as usize] as usize > live || !may_have_root_of_order(&rest, n) {
            continue;
        }
        let cyc = cyclotomic_poly(n);
        let mut mult = 0;
        while let Some(q) = rest.try_div(&cyc) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((n, mult));
        }
    }
    (found, rest)
}

/// Cyclotomic / reciprocal non-cyclotomic / non-reciprocal decomposition.
///
/// `unit · content · ∏ Φ_n^k · ∏ r^k · nonreciprocal_part` reproduces the
/// input. The non-reciprocal part carries the sign when it is non-constant;
/// otherwise the sign stays in `unit` and the part is `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorParts {
    pub unit: i8,
    /// Positive content; its prime factors are reciprocal constants.
    pub content: BigInt,
    pub cyclotomic: Vec<(u64, u32)>,
    pub reciprocal_noncyclotomic: Vec<(IntPoly, u32)>,
    pub nonreciprocal_part: IntPoly,
}

impl FactorParts {
    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = IntPoly::constant(&self.content * BigInt::from(self.unit));
        for (n, k) in &self.cyclotomic {
            acc = &acc * &cyclotomic_poly(*n).pow(*k);
        }
        for (r, k) in &self.reciprocal_noncyclotomic {
            acc = &acc * &r.pow(*k);
        }
        &acc * &self.nonreciprocal_part
    }

    /// Product of the reciprocal non-cyclotomic factors and the non-reciprocal
    /// part, i.e. the input with unit, content and cyclotomic factors removed.
    pub fn noncyclotomic_cofactor(&self) -> IntPoly {
        let mut acc = self.nonreciprocal_part.clone();
        for (r, k) in &self.reciprocal_noncyclotomic {
            acc = &acc * &r.pow(*k);
        }
        if acc.leading_coeff().is_negative() {
            acc = -acc;
        }
        acc
    }
}

/// Splits `p` into its three parts via a complete factorization.
pub fn three_part_split(p: &IntPoly) -> Result<FactorParts> {
    three_part_split_with(p, &FactorConfig::default())
}

pub fn three_part_split_with(p: &IntPoly, cfg: &FactorConfig) -> Result<FactorParts> {
    let fac = factor_z(p, cfg)?;
    let mut cyclotomic = Vec::new();
    let mut reciprocal = Vec::new();
    let mut nonrec = IntPoly::one();
    for (f, k) in &fac.factors {
        let k = *k as u32;
        if f.is_reciprocal()? {
            let (cyc, rest) = cyclotomic_part(f);
            if rest.is_constant() && cyc.len() == 1 {
                cyclotomic.push((cyc[0].0, k));
            } else {
                reciprocal.push((f.clone(), k));
            }
        } else {
            nonrec = &nonrec * &f.pow(k);
        }
    }
    cyclotomic.sort();
    let mut unit = fac.unit;
    if !nonrec.is_constant() && unit < 0 {
        nonrec = -nonrec;
        unit = 1;
    }
    Ok(FactorParts {
        unit,
        content: fac.content,
        cyclotomic,
        reciprocal_noncyclotomic: reciprocal,
        nonreciprocal_part: nonrec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::totient;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), p(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(10), p(&[1, -1, 1, -1, 1]));
        // first index with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_poly(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn divides_x_pow_n_minus_one() {
        for n in 1..=200u64 {
            let phi = cyclotomic_poly(n);
            assert_eq!(phi.degree(), Some(totient(n) as usize));
            assert!(IntPoly::x_pow_minus_one(n as usize).try_div(&phi).is_some(), "n = {n}");
        }
    }

    #[test]
    fn parts_of_examples() {
        let (c, r) = cyclotomic_part(&IntPoly::x_pow_minus_one(6));
        assert_eq!(c, vec![(1, 1), (2, 1), (3, 1), (6, 1)]);
        assert!(r.is_one());

        let (c, r) = cyclotomic_part(&p(&[1, -1, 0, 0, 0, 1, 1]));
        assert_eq!(c, vec![(4, 1)]);
        assert_eq!(r, p(&[1, -1, -1, 1, 1]));
    }

    #[test]
    fn candidates_cover_small_degrees() {
        assert_eq!(candidate_indices(1), vec![1, 2]);
        assert_eq!(candidate_indices(2), vec![1, 2, 3, 4, 6]);
    }

    #[test]
    fn worked_split() {
        let f = p(&[2, -2]) * p(&[1, 1, 1, 3, 1, 1, 1]);
        let parts = three_part_split(&f).unwrap();
        assert_eq!(parts.content, BigInt::from(2));
        assert_eq!(parts.cyclotomic, vec![(1, 1)]);
        assert!(parts.reciprocal_noncyclotomic.is_empty());
        assert_eq!(parts.nonreciprocal_part, p(&[-1, -1, -1, -3, -1, -1, -1]));
        assert_eq!(parts.unit, 1);
        assert_eq!(parts.reconstruct(), f);
    }

    #[test]
    fn negative_cyclotomic() {
        let g = p(&[-1, 1, -1, 1, -1]);
        let parts = three_part_split(&g).unwrap();
        assert_eq!(parts.cyclotomic, vec![(10, 1)]);
        assert_eq!(parts.unit, -1);
        assert!(parts.nonreciprocal_part.is_one());
        assert_eq!(parts.reconstruct(), g);
    }

    #[test]
    fn reciprocal_noncyclotomic_factor() {
        // x^2 - 3x + 1 is reciprocal with real roots off the unit circle
        let f = p(&[1, -3, 1]) * p(&[1, 1, 0, 1]);
        let parts = three_part_split(&f).unwrap();
        assert_eq!(parts.reciprocal_noncyclotomic, vec![(p(&[1, -3, 1]), 1)]);
        assert_eq!(parts.nonreciprocal_part, p(&[1, 1, 0, 1]));
    }
}
