//! Dense univariate polynomials over the integers.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::gaussian::GaussianInt;
use crate::zfactor::{factor_z, FactorConfig};
use crate::{Error, Result};

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. The vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Sparse view: `(exponent, coefficient)` pairs, exponents increasing,
/// coefficients non-zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRep {
    pub terms: Vec<(usize, BigInt)>,
}

impl SparseRep {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_dense(&self) -> IntPoly {
        let mut p = IntPoly::zero();
        for (e, c) in &self.terms {
            p = &p + &IntPoly::monomial(c.clone(), *e);
        }
        p
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, exp: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        IntPoly { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = Self::monomial(BigInt::one(), n);
        p.coeffs[0] -= 1;
        Self::new(p.coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        self.coeffs.get(i).unwrap_or(&BigInt::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> &BigInt {
        self.coeffs.last().unwrap_or(&BigInt::ZERO)
    }

    pub fn constant_term(&self) -> &BigInt {
        self.coeff(0)
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn to_sparse(&self) -> SparseRep {
        SparseRep {
            terms: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at `i = sqrt(-1)`, read off the remainder modulo `x^2 + 1`.
    pub fn eval_at_i(&self) -> GaussianInt {
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (e, c) in self.coeffs.iter().enumerate() {
            match e % 4 {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        GaussianInt::new(re, im)
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides every coefficient by `k`; the caller guarantees exactness.
    pub fn div_scalar_exact(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    /// Largest `v` with `x^v | self` (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Removes the largest power of `x` dividing `self`.
    pub fn strip_x_power(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs[self.valuation()..].to_vec(),
        }
    }

    /// `p(x^k)`.
    pub fn inflate(&self, k: usize) -> IntPoly {
        assert!(k > 0);
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (e, c) in self.coeffs.iter().enumerate() {
            coeffs[e * k] = c.clone();
        }
        IntPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c * BigInt::from(e))
                .collect(),
        )
    }

    /// `x^d p(1/x)` after removing the power of `x` dividing `p`, so the
    /// result always has a non-zero constant term and `reverse` is an
    /// involution on polynomials with `p(0) != 0`.
    pub fn reverse(&self) -> Result<IntPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = self.coeffs[self.valuation()..].to_vec();
        coeffs.reverse();
        Ok(IntPoly::new(coeffs))
    }

    /// `p = ±x^deg p · p(1/x)`; false whenever `p(0) = 0`.
    pub fn is_reciprocal(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.constant_term().is_zero() {
            return Ok(false);
        }
        let n = self.coeffs.len();
        let palindromic = (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i]);
        let anti = (0..n.div_ceil(2)).all(|i| self.coeffs[i] == -&self.coeffs[n - 1 - i]);
        Ok(palindromic || anti)
    }

    /// `‖p‖²`, the sum of squared coefficients.
    pub fn l2_norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Long division `self = q·quot + rem` with `deg rem < deg q`.
    ///
    /// Fails with [`Error::NonIntegralQuotient`] when a quotient coefficient
    /// would not be an integer.
    pub fn divrem(&self, q: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dq = q.coeffs.len() - 1;
        if self.coeffs.len() <= dq {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let lead = q.leading_coeff();
        let unit_lead = lead.is_one();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dq];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dq];
            if top.is_zero() {
                continue;
            }
            let c = if unit_lead {
                top.clone()
            } else {
                let (c, r) = top.div_rem(lead);
                if !r.is_zero() {
                    return Err(Error::NonIntegralQuotient);
                }
                c
            };
            for (j, qc) in q.coeffs.iter().enumerate() {
                if !qc.is_zero() {
                    rem[i + j] -= &c * qc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dq);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact quotient; [`Error::InexactDivision`] if `q` does not divide `self`.
    pub fn exact_div(&self, q: &IntPoly) -> Result<IntPoly> {
        match self.divrem(q) {
            Ok((quot, rem)) if rem.is_zero() => Ok(quot),
            Ok(_) => Err(Error::InexactDivision),
            Err(Error::NonIntegralQuotient) => Err(Error::InexactDivision),
            Err(e) => Err(e),
        }
    }

    /// `Some(quotient)` when `q` divides `self` in `Z[x]`.
    pub fn try_div(&self, q: &IntPoly) -> Option<IntPoly> {
        self.exact_div(q).ok()
    }

    /// Remainder of `lc(q)^k · self` on division by `q`, made primitive.
    fn pseudo_rem_primitive(&self, q: &IntPoly) -> IntPoly {
        let dq = q.coeffs.len() - 1;
        let lead = q.leading_coeff().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dq {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = rem.len() - dq;
            let g = top.gcd(&lead);
            let mul_rem = &lead / &g;
            let mul_q = &top / &g;
            for c in rem.iter_mut() {
                *c *= &mul_rem;
            }
            for (j, qc) in q.coeffs[..dq].iter().enumerate() {
                rem[shift + j] -= &mul_q * qc;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        IntPoly::new(rem).primitive_part()
    }

    /// Coefficient vector mapped to `[0, p)`.
    pub fn mod_prime(&self, p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| crate::arith::bigint_mod_u64(c, p))
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Orders by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &IntPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    pub fn to_string_in(&self, var: char) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        if self.is_zero() {
            return "0".into();
        }
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let first = s.is_empty();
            let abs = c.abs();
            if c.is_negative() {
                s.push('-');
            } else if !first {
                s.push('+');
            }
            if e == 0 || !abs.is_one() {
                let _ = write!(s, "{abs}");
                if e > 0 {
                    s.push('*');
                }
            }
            match e {
                0 => {}
                1 => s.push(var),
                _ => {
                    let _ = write!(s, "{var}^{e}");
                }
            }
        }
        s
    }
}

/// Greatest common divisor in `Z[x]`, normalized to positive leading
/// coefficient, computed with the primitive remainder sequence.
pub fn gcd_primitive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive_part().scale(&a.content());
    }
    let content = a.content().gcd(&b.content());
    let (mut u, mut v) = (a.primitive_part(), b.primitive_part());
    if u.coeffs.len() < v.coeffs.len() {
        core::mem::swap(&mut u, &mut v);
    }
    while !v.is_zero() {
        let r = u.pseudo_rem_primitive(&v);
        u = v;
        v = r;
    }
    u.scale(&content)
}

/// `gcd_Z(u, v)`: the product of the shared irreducible factors (positive
/// leading coefficient, prime constants included) to the smaller multiplicity.
pub fn gcd_z(u: &IntPoly, v: &IntPoly) -> Result<IntPoly> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let cfg = FactorConfig::default();
    let fu = factor_z(u, &cfg)?;
    let fv = factor_z(v, &cfg)?;
    let mut acc = IntPoly::constant(fu.content.clone().gcd(&fv.content));
    for (g, k) in &fu.factors {
        if let Some((_, l)) = fv.factors.iter().find(|(h, _)| h == g) {
            acc = &acc * &g.pow((*k).min(*l) as u32);
        }
    }
    Ok(acc)
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in('x'))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        IntPoly::new(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly { (&self).$m(&rhs) }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}
