//! Factorization of integer polynomials into irreducibles.
//!
//! Content and the power of `x` are split off, the primitive part is made
//! squarefree (Yun), and each squarefree part goes through the classical
//! Zassenhaus pipeline: factor modulo a few small primes, keep the prime with
//! the fewest factors, Hensel-lift past the Landau-Mignotte bound, and
//! recombine subsets of lifted factors by trial division. Degree patterns
//! across primes double as cheap irreducibility certificates.

mod hensel;
pub mod modp;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{factor_bigint, primes, subset_sums};
use crate::polyring::{gcd_primitive, IntPoly};
use crate::{Error, Result};
pub use modp::ModPoly;

/// Tuning knobs for [`factor_z`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Largest subset of modular factors tried during recombination.
    pub max_subset: usize,
    /// Number of good primes whose degree patterns are compared.
    pub num_primes: usize,
    /// Squarefree parts above this degree are never Hensel-lifted; they are
    /// either certified irreducible by degree patterns or reported as
    /// [`Error::RecombinationOverflow`].
    pub max_lift_degree: usize,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            max_subset: 6,
            num_primes: 5,
            max_lift_degree: 400,
        }
    }
}

/// `unit · content · ∏ factor^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// `+1` or `-1`.
    pub unit: i8,
    /// Positive content.
    pub content: BigInt,
    pub content_primes: Vec<(BigInt, u32)>,
    /// Irreducible, primitive, positive leading coefficient, sorted.
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = IntPoly::constant(&self.content * BigInt::from(self.unit));
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }

    /// Total number of irreducible polynomial factors, with multiplicity.
    pub fn factor_count(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

/// How irreducibility (or reducibility) was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Degree one, or a constant prime.
    Trivial,
    /// Irreducible modulo this prime with the degree preserved.
    IrreducibleModPrime(u64),
    /// The subset sums of the factor degrees modulo these primes only meet
    /// at `0` and `deg`.
    DegreePatterns(Vec<u64>),
    /// Complete factorization over the integers.
    FullFactorization,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub certificate: Certificate,
}

/// Yun's squarefree decomposition of a primitive polynomial:
/// `p = ∏ part^multiplicity` (up to sign), parts pairwise coprime.
pub fn squarefree_decompose(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let f = p.primitive_part();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    if let Some(q) = primes().take(20).find(|&q| good_prime(&f, q)) {
        let _ = q;
        return vec![(f, 1)];
    }
    let df = f.derivative();
    let a0 = gcd_primitive(&f, &df).primitive_part();
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let mut c = df.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = gcd_primitive(&b, &d).primitive_part();
        b = b.exact_div(&a).expect("exact");
        c = d.exact_div(&a).expect("exact");
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// `q` does not divide the leading coefficient and `f mod q` is squarefree.
fn good_prime(f: &IntPoly, q: u64) -> bool {
    let fq = f.mod_prime(q);
    fq.len() == f.coeffs().len() && modp::is_squarefree(&modp::monic(&fq, q), q)
}

/// Factorization modulo a prime into monic irreducibles with multiplicity.
pub fn factor_mod_p(p: &IntPoly, q: u64) -> Result<Vec<(ModPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    assert!(crate::arith::is_prime_u64(q) && q < (1 << 32), "modulus must be a prime below 2^32");
    let fq = p.mod_prime(q);
    if fq.len() != p.coeffs().len() {
        return Err(Error::BadPrime(q));
    }
    let f = modp::monic(&fq, q);
    let mut out = Vec::new();
    for (part, m) in modp::squarefree(&f, q) {
        for g in modp::factor_squarefree(&part, q) {
            out.push((ModPoly { modulus: q, coeffs: g }, m));
        }
    }
    out.sort();
    Ok(out)
}

/// Factor degrees of a squarefree `f` modulo `q`, or `None` if `q` is not a
/// good prime for `f`.
pub fn degree_pattern(f: &IntPoly, q: u64) -> Option<Vec<usize>> {
    if !good_prime(f, q) {
        return None;
    }
    let fq = modp::monic(&f.mod_prime(q), q);
    Some(modp::degree_pattern(&fq, q))
}

/// Intersection of the degree-subset-sum tables across several patterns.
pub fn admissible_degrees(patterns: &[Vec<usize>]) -> Vec<bool> {
    let mut acc: Option<Vec<bool>> = None;
    for pat in patterns {
        let sums = subset_sums(pat);
        acc = Some(match acc {
            None => sums,
            Some(a) => a.iter().zip(&sums).map(|(x, y)| *x && *y).collect(),
        });
    }
    acc.unwrap_or_default()
}

fn only_trivial_degrees(admissible: &[bool]) -> bool {
    admissible.len() > 1 && admissible[1..admissible.len() - 1].iter().all(|x| !x)
}

/// Complete factorization over the integers.
pub fn factor_z(p: &IntPoly, cfg: &FactorConfig) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit: i8 = if p.leading_coeff().is_negative() { -1 } else { 1 };
    let content = p.content();
    let prim = p.primitive_part();
    let mut factors: Vec<(IntPoly, usize)> = Vec::new();
    let v = prim.valuation();
    if v > 0 {
        factors.push((IntPoly::x(), v));
    }
    let rest = prim.strip_x_power();
    for (part, mult) in squarefree_decompose(&rest) {
        for g in factor_squarefree(&part, cfg)? {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization {
        unit,
        content_primes: factor_bigint(&content),
        content,
        factors,
    })
}

/// Irreducible factors of a primitive squarefree polynomial with positive
/// leading coefficient and non-zero constant term.
fn factor_squarefree(f: &IntPoly, cfg: &FactorConfig) -> Result<Vec<IntPoly>> {
    let n = f.degree().expect("non-zero");
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let mut patterns = Vec::new();
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    for q in primes().filter(|&q| good_prime(f, q)).take(cfg.num_primes) {
        let fq = modp::monic(&f.mod_prime(q), q);
        let pat = modp::degree_pattern(&fq, q);
        if pat.len() == 1 {
            return Ok(vec![f.clone()]);
        }
        if best.as_ref().is_none_or(|(_, b)| b.len() > pat.len()) {
            best = Some((q, vec![fq]));
        }
        patterns.push(pat);
        if only_trivial_degrees(&admissible_degrees(&patterns)) {
            return Ok(vec![f.clone()]);
        }
    }
    if n > cfg.max_lift_degree {
        return Err(Error::RecombinationOverflow {
            modular_factors: patterns.iter().map(Vec::len).min().unwrap_or(0),
            max_subset: cfg.max_subset,
        });
    }
    let admissible = admissible_degrees(&patterns);
    let (q, fq) = best.expect("a good prime exists for squarefree input");
    let modular = modp::factor_squarefree(&fq[0], q);
    zassenhaus(f, q, &modular, &admissible, cfg)
}

fn landau_mignotte(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let norm = f.l2_norm_sq().sqrt() + BigInt::one();
    (BigInt::one() << n) * norm * f.leading_coeff().abs()
}

fn zassenhaus(
    f: &IntPoly,
    q: u64,
    modular: &[Vec<u64>],
    admissible: &[bool],
    cfg: &FactorConfig,
) -> Result<Vec<IntPoly>> {
    let bound = landau_mignotte(f) * 2u32;
    let qb = BigInt::from(q);
    let mut k = 1u32;
    let mut modulus = qb.clone();
    while modulus <= bound {
        modulus *= &qb;
        k += 1;
    }
    let mut lifted = hensel::lift_factors(f, modular, q, k);
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        if size > cfg.max_subset {
            return Err(Error::RecombinationOverflow {
                modular_factors: modular.len(),
                max_subset: cfg.max_subset,
            });
        }
        let mut hit = None;
        for subset in Combinations::new(lifted.len(), size) {
            let deg: usize = subset.iter().map(|&i| lifted[i].degree().unwrap()).sum();
            if !admissible.get(deg).copied().unwrap_or(true) {
                continue;
            }
            let lc = rest.leading_coeff().clone();
            let cand = subset
                .iter()
                .fold(IntPoly::constant(lc.clone()), |acc, &i| hensel::reduce(&(&acc * &lifted[i]), &modulus));
            let cand = hensel::symmetric(&cand, &modulus).primitive_part();
            if !cand.constant_term().is_zero()
                && !(rest.constant_term() % cand.constant_term()).is_zero()
            {
                continue;
            }
            if let Some(quot) = rest.try_div(&cand) {
                hit = Some((subset, cand, quot));
                break;
            }
        }
        match hit {
            Some((subset, cand, quot)) => {
                found.push(cand);
                rest = quot;
                let mut idx = 0;
                lifted.retain(|_| {
                    let keep = !subset.contains(&idx);
                    idx += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        found.push(rest.primitive_part());
    }
    Ok(found)
}

/// k-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Irreducibility test with the cheapest available certificate.
///
/// Tries irreducibility modulo small primes and degree-pattern intersection
/// first; only then falls back to [`factor_z`]. Inputs above
/// `cfg.max_lift_degree` that no pattern certifies yield
/// [`Error::RecombinationOverflow`] ("incomplete").
pub fn is_irreducible_z(p: &IntPoly, cfg: &FactorConfig) -> Result<IrreducibilityReport> {
    let n = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(n) => n,
    };
    if n == 0 {
        let prime = factor_bigint(p.constant_term());
        return Ok(IrreducibilityReport {
            irreducible: prime.len() == 1 && prime[0].1 == 1,
            certificate: Certificate::Trivial,
        });
    }
    if !p.content().is_one() {
        return Ok(IrreducibilityReport { irreducible: false, certificate: Certificate::FullFactorization });
    }
    if n == 1 {
        return Ok(IrreducibilityReport { irreducible: true, certificate: Certificate::Trivial });
    }
    if p.constant_term().is_zero() {
        return Ok(IrreducibilityReport { irreducible: false, certificate: Certificate::FullFactorization });
    }
    let f = p.primitive_part();
    let mut patterns = Vec::new();
    let mut used = Vec::new();
    for q in primes().take(200).filter(|&q| good_prime(&f, q)).take(cfg.num_primes) {
        let pat = degree_pattern(&f, q).expect("good prime");
        if pat.len() == 1 {
            return Ok(IrreducibilityReport {
                irreducible: true,
                certificate: Certificate::IrreducibleModPrime(q),
            });
        }
        used.push(q);
        patterns.push(pat);
        if only_trivial_degrees(&admissible_degrees(&patterns)) {
            return Ok(IrreducibilityReport {
                irreducible: true,
                certificate: Certificate::DegreePatterns(used),
            });
        }
    }
    let fac = factor_z(&f, cfg)?;
    Ok(IrreducibilityReport {
        irreducible: fac.factor_count() == 1,
        certificate: Certificate::FullFactorization,
    })
}

/// Degree-pattern certificate only (no lifting), over up to `max_primes` good
/// primes. Returns the primes used when the patterns prove irreducibility.
pub fn pattern_certificate(p: &IntPoly, max_primes: usize) -> Option<Vec<u64>> {
    let f = p.primitive_part();
    let mut patterns = Vec::new();
    let mut used = Vec::new();
    for q in primes().take(400).filter(|&q| good_prime(&f, q)).take(max_primes) {
        let pat = degree_pattern(&f, q)?;
        used.push(q);
        if pat.len() == 1 {
            return Some(used);
        }
        patterns.push(pat);
        if only_trivial_degrees(&admissible_degrees(&patterns)) {
            return Some(used);
        }
    }
    None
}
