//! Specializations `G^T_{a,b}` of the Teichmüller polynomial
//! `P^T(x, y) = y + y^{-1} - (x + x^{-1} + 1)`: their cyclotomic parts, the
//! residue classification behind them, and the modification closure used to
//! rule out a reducible non-reciprocal part.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::divisors;
use crate::cyclofactor::{cyclotomic_part, cyclotomic_poly};
use crate::polyring::IntPoly;
use crate::{Error, Result};

/// Integer Laurent polynomial in `x, y`.
///
/// Terms are `(x-exponent, y-exponent, coefficient)`, sorted by exponent
/// pair, without zero coefficients or repeated pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BivarPoly {
    terms: Vec<(i64, i64, BigInt)>,
}

impl BivarPoly {
    pub fn new(terms: Vec<(i64, i64, BigInt)>) -> Self {
        let mut acc: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (i, j, c) in terms {
            *acc.entry((i, j)).or_insert_with(BigInt::zero) += c;
        }
        BivarPoly {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((i, j), c)| (i, j, c))
                .collect(),
        }
    }

    pub fn from_i64(terms: &[(i64, i64, i64)]) -> Self {
        Self::new(terms.iter().map(|&(i, j, c)| (i, j, BigInt::from(c))).collect())
    }

    pub fn terms(&self) -> &[(i64, i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn min_exponents(&self) -> (i64, i64) {
        let mx = self.terms.iter().map(|t| t.0).min().unwrap_or(0);
        let my = self.terms.iter().map(|t| t.1).min().unwrap_or(0);
        (mx, my)
    }

    fn max_exponents(&self) -> (i64, i64) {
        let mx = self.terms.iter().map(|t| t.0).max().unwrap_or(0);
        let my = self.terms.iter().map(|t| t.1).max().unwrap_or(0);
        (mx, my)
    }

    /// Multiplies by the monomial that makes both minimal exponents zero.
    pub fn normalize(&self) -> BivarPoly {
        let (mx, my) = self.min_exponents();
        BivarPoly {
            terms: self.terms.iter().map(|(i, j, c)| (i - mx, j - my, c.clone())).collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.min_exponents() == (0, 0)
    }

    /// `h(-x, y)`.
    pub fn flip_x(&self) -> BivarPoly {
        self.map_coeffs(|i, _, c| if i.rem_euclid(2) == 1 { -c } else { c.clone() })
    }

    /// `h(x, -y)`.
    pub fn flip_y(&self) -> BivarPoly {
        self.map_coeffs(|_, j, c| if j.rem_euclid(2) == 1 { -c } else { c.clone() })
    }

    fn map_coeffs(&self, f: impl Fn(i64, i64, &BigInt) -> BigInt) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(i, j, c)| (*i, *j, f(*i, *j, c))).collect(),
        }
    }

    pub fn positive_count(&self) -> usize {
        self.terms.iter().filter(|t| t.2.is_positive()).count()
    }

    pub fn negative_count(&self) -> usize {
        self.terms.iter().filter(|t| t.2.is_negative()).count()
    }

    /// `h = ±h̃` after normalization.
    pub fn is_reciprocal(&self) -> Result<bool> {
        let n = self.normalize();
        let t = bivar_tilde(&n)?;
        Ok(t == n || t == -&n)
    }

    /// `x^s h(x^a, x^b)` with `s` chosen so the result is a polynomial with
    /// non-zero constant term (or zero).
    pub fn specialize(&self, a: u64, b: u64) -> IntPoly {
        let exps: Vec<i64> = self
            .terms
            .iter()
            .map(|(i, j, _)| i * a as i64 + j * b as i64)
            .collect();
        let lo = exps.iter().copied().min().unwrap_or(0);
        let mut p = IntPoly::zero();
        for (e, (_, _, c)) in exps.iter().zip(&self.terms) {
            p = &p + &IntPoly::monomial(c.clone(), (e - lo) as usize);
        }
        p.strip_x_power()
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for (i, j, c) in &self.terms {
            for (k, l, d) in &other.terms {
                out.push((i + k, j + l, c * d));
            }
        }
        BivarPoly::new(out)
    }
}

impl core::ops::Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.map_coeffs(|_, _, c| -c)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (i, j, c)) in self.terms.iter().rev().enumerate() {
            let mut mono = Vec::new();
            for (v, e) in [("x", *i), ("y", *j)] {
                match e {
                    0 => {}
                    1 => mono.push(String::from(v)),
                    e => mono.push(format!("{v}^{e}")),
                }
            }
            let abs = c.abs();
            let body = if mono.is_empty() {
                format!("{abs}")
            } else if abs.is_one() {
                mono.join("*")
            } else {
                format!("{abs}*{}", mono.join("*"))
            };
            match (k, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push('-'),
                (_, false) => out.push('+'),
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

/// `P^T(x, y) = y + y^{-1} - x - x^{-1} - 1`.
pub fn p_t() -> BivarPoly {
    BivarPoly::from_i64(&[(0, 1, 1), (0, -1, 1), (1, 0, -1), (-1, 0, -1), (0, 0, -1)])
}

/// `xy P^T(x, y) = xy² + x - x²y - y - xy`.
pub fn xy_p_t() -> BivarPoly {
    p_t().mul(&BivarPoly::from_i64(&[(1, 1, 1)]))
}

/// `(x^{a+2b} + x^a - x^{2a+b} - x^b - x^{a+b}) / x^{min(a,b)}`.
pub fn build_gt(a: u64, b: u64) -> IntPoly {
    assert!(a >= 1 && b >= 1, "a and b must be positive");
    let c = a.min(b);
    let terms = [(a + 2 * b, 1), (a, 1), (2 * a + b, -1), (b, -1), (a + b, -1)];
    terms.iter().fold(IntPoly::zero(), |acc, &(e, s)| {
        &acc + &IntPoly::monomial(BigInt::from(s), (e - c) as usize)
    })
}

/// The three residue-class families of the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycloCase {
    I,
    II,
    III,
}

impl CycloCase {
    pub const ALL: [CycloCase; 3] = [CycloCase::I, CycloCase::II, CycloCase::III];

    pub fn modulus(self) -> u64 {
        match self {
            CycloCase::I => 6,
            CycloCase::II => 10,
            CycloCase::III => 12,
        }
    }

    /// Residue pairs `(a, b)` modulo [`Self::modulus`].
    pub fn pairs(self) -> &'static [(u64, u64)] {
        match self {
            CycloCase::I => &[(1, 0), (3, 2), (3, 4), (5, 0)],
            CycloCase::II => &[(2, 1), (2, 9), (4, 3), (4, 7), (6, 3), (6, 7), (8, 1), (8, 9)],
            CycloCase::III => &[(3, 2), (3, 10), (4, 3), (4, 9), (8, 3), (8, 9), (9, 2), (9, 10)],
        }
    }

    pub fn contains(self, a: u64, b: u64) -> bool {
        let m = self.modulus();
        self.pairs().contains(&(a % m, b % m))
    }
}

/// One matched classification: `(a/d, b/d)` lies in `case`, giving `Φ_{M d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycloClass {
    pub case: CycloCase,
    pub modulus: u64,
    pub pairs: &'static [(u64, u64)],
    pub d: u64,
}

impl CycloClass {
    pub fn index(&self) -> u64 {
        self.modulus * self.d
    }
}

/// All classifications matched by `(a, b)`, case by case, `d` ascending.
pub fn ct_classes(a: u64, b: u64) -> Vec<CycloClass> {
    let mut out = Vec::new();
    let ds = divisors(a.gcd(&b));
    for case in CycloCase::ALL {
        for &d in &ds {
            if case.contains(a / d, b / d) {
                out.push(CycloClass { case, modulus: case.modulus(), pairs: case.pairs(), d });
            }
        }
    }
    out
}

/// Indices `n` of the distinct `Φ_n` making up `C^T_{a,b}`.
pub fn ct_part(a: u64, b: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for c in ct_classes(a, b) {
        if !out.contains(&c.index()) {
            out.push(c.index());
        }
    }
    out
}

/// `x^{a+2b} + x^a - x^{2a+b} - x^b - x^{a+b}`.
fn five_term(a: u64, b: u64) -> IntPoly {
    let terms = [(a + 2 * b, 1), (a, 1), (2 * a + b, -1), (b, -1), (a + b, -1)];
    terms.iter().fold(IntPoly::zero(), |acc, &(e, s)| {
        &acc + &IntPoly::monomial(BigInt::from(s), e as usize)
    })
}

/// Triples `(n₀, a₀, b₀)` with `1 ≤ a₀, b₀ ≤ n₀ ≤ 12` such that `Φ_{n₀}`
/// divides the five-term polynomial, by direct division.
pub fn enumerate_script_t() -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for n0 in 1..=12u64 {
        let phi = cyclotomic_poly(n0);
        for a0 in 1..=n0 {
            for b0 in 1..=n0 {
                if five_term(a0, b0).try_div(&phi).is_some() {
                    out.push((n0, a0, b0));
                }
            }
        }
    }
    out
}

/// The same set as [`enumerate_script_t`], predicted from the printed
/// classification: some `d | gcd(n₀, a₀, b₀)` has `n₀/d ∈ {6, 10, 12}` and
/// `(a₀/d, b₀/d)` in the matching case.
pub fn script_t_from_classification() -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for n0 in 1..=12u64 {
        for a0 in 1..=n0 {
            for b0 in 1..=n0 {
                let g = n0.gcd(&a0).gcd(&b0);
                let hit = divisors(g).into_iter().any(|d| {
                    CycloCase::ALL
                        .iter()
                        .any(|c| c.modulus() == n0 / d && c.contains(a0 / d, b0 / d))
                });
                if hit {
                    out.push((n0, a0, b0));
                }
            }
        }
    }
    out
}

/// A pair where predicted and observed cyclotomic parts differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub a: u64,
    pub b: u64,
    pub predicted: Vec<u64>,
    pub observed: Vec<(u64, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub discrepancies: Vec<Discrepancy>,
}

/// Compares `ct_part(a, b)` with the cyclotomic part of `G^T_{a,b}` found by
/// division, for a single pair. Multiplicities other than one count as a
/// discrepancy.
pub fn ct_check(a: u64, b: u64) -> Option<Discrepancy> {
    let mut predicted = ct_part(a, b);
    predicted.sort_unstable();
    let (observed, _) = cyclotomic_part(&build_gt(a, b));
    let agrees = observed.len() == predicted.len()
        && observed.iter().zip(&predicted).all(|((n, k), p)| n == p && *k == 1);
    (!agrees).then_some(Discrepancy { a, b, predicted, observed })
}

pub fn ct_consistency(a_max: u64, b_max: u64) -> ConsistencyReport {
    let mut discrepancies = Vec::new();
    let mut checked = 0;
    for a in 1..=a_max {
        for b in 1..=b_max {
            checked += 1;
            if let Some(d) = ct_check(a, b) {
                discrepancies.push(d);
            }
        }
    }
    ConsistencyReport { checked, discrepancies }
}

/// `U(x) = (a+2b)x^{a+2b} + a x^a - (2a+b)x^{2a+b} - b x^b - (a+b)x^{a+b}`.
pub fn u_poly(a: u64, b: u64) -> IntPoly {
    let (ai, bi) = (a as i64, b as i64);
    let terms = [
        (a + 2 * b, ai + 2 * bi),
        (a, ai),
        (2 * a + b, -(2 * ai + bi)),
        (b, -bi),
        (a + b, -(ai + bi)),
    ];
    terms.iter().fold(IntPoly::zero(), |acc, &(e, c)| {
        &acc + &IntPoly::monomial(BigInt::from(c), e as usize)
    })
}

/// `U(x) mod Φ_n`; a non-zero remainder shows `Φ_n` divides `G^T_{a,b}`
/// exactly once.
pub fn multiplicity_witness(a: u64, b: u64, n: u64) -> Result<IntPoly> {
    let phi = cyclotomic_poly(n);
    if build_gt(a, b).try_div(&phi).is_none() {
        return Err(Error::NotACyclotomicFactor(n));
    }
    Ok(u_poly(a, b).divrem(&phi)?.1)
}

/// `x^k y^l h(1/x, 1/y)` with `k, l` as small as possible.
pub fn bivar_tilde(h: &BivarPoly) -> Result<BivarPoly> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mx, my) = h.max_exponents();
    Ok(BivarPoly::new(
        h.terms.iter().map(|(i, j, c)| (mx - i, my - j, c.clone())).collect(),
    ))
}

/// A bivariate polynomial with a tracked factorization `poly = f1 · f2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedBivar {
    pub poly: BivarPoly,
    pub factor_pair: (BivarPoly, BivarPoly),
}

impl SignedBivar {
    /// Fails unless `f1 · f2 = poly` (all three normalized first).
    pub fn new(poly: BivarPoly, f1: BivarPoly, f2: BivarPoly) -> Result<Self> {
        let s = SignedBivar { poly: poly.normalize(), factor_pair: (f1.normalize(), f2.normalize()) };
        if s.product_holds() {
            Ok(s)
        } else {
            Err(Error::MalformedCandidate(format!("{} is not ({})({})", s.poly, s.factor_pair.0, s.factor_pair.1)))
        }
    }

    pub fn product_holds(&self) -> bool {
        self.factor_pair.0.mul(&self.factor_pair.1).normalize() == self.poly
    }
}

/// `F = x⁵y² - x³y² - x³y - xy - 1 = (x³y + x²y + 1)(x²y - xy - 1)`.
pub fn fmv_seed() -> SignedBivar {
    let f1 = BivarPoly::from_i64(&[(3, 1, 1), (2, 1, 1), (0, 0, 1)]);
    let f2 = BivarPoly::from_i64(&[(2, 1, 1), (1, 1, -1), (0, 0, -1)]);
    let f = BivarPoly::from_i64(&[(5, 2, 1), (3, 2, -1), (3, 1, -1), (1, 1, -1), (0, 0, -1)]);
    SignedBivar::new(f, f1, f2).expect("seed factorization")
}

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct FmvClosure {
    /// `S_J` in canonical order.
    pub members: Vec<SignedBivar>,
    /// First `J` with `S_J = S_{J+1}`.
    pub j: usize,
    /// `|S_1|, |S_2|, …, |S_J|`.
    pub sizes: Vec<usize>,
}

type PairMap = BTreeMap<BivarPoly, (BivarPoly, BivarPoly)>;

fn insert_signed(map: &mut PairMap, poly: BivarPoly, pair: (BivarPoly, BivarPoly)) {
    let negated = (-&poly, (-&pair.0, pair.1.clone()));
    map.entry(poly).or_insert(pair);
    map.entry(negated.0).or_insert(negated.1);
}

/// Closure of `{±seed}` under `F₀ ↦ ±F̃₀, ±F₁F̃₂, ±F₀(-x, y), ±F₀(x, -y)`,
/// carrying the factor pairs along. Members are kept in normalized form with
/// their sign; the first pair found for a member is kept.
pub fn fmv_closure(seed: &SignedBivar, cap: usize) -> Result<FmvClosure> {
    let mut current = PairMap::new();
    insert_signed(&mut current, seed.poly.clone(), seed.factor_pair.clone());
    let mut sizes = vec![current.len()];
    let mut j = 1;
    loop {
        let mut next = current.clone();
        for (f0, (f1, f2)) in &current {
            let t1 = bivar_tilde(f1)?;
            let t2 = bivar_tilde(f2)?;
            let candidates = [
                (bivar_tilde(f0)?, (t1.clone(), t2.clone())),
                (f1.mul(&t2).normalize(), (f1.clone(), t2)),
                (f0.flip_x(), (f1.flip_x(), f2.flip_x())),
                (f0.flip_y(), (f1.flip_y(), f2.flip_y())),
            ];
            for (poly, pair) in candidates {
                insert_signed(&mut next, poly, pair);
            }
            if next.len() > cap {
                return Err(Error::ClosureBudgetExceeded(cap));
            }
        }
        if next.len() == current.len() {
            break;
        }
        current = next;
        sizes.push(current.len());
        j += 1;
    }
    let members = current
        .into_iter()
        .map(|(poly, factor_pair)| SignedBivar { poly, factor_pair })
        .collect();
    Ok(FmvClosure { members, j, sizes })
}

/// One way of matching the terms of `g(x^t, x^u)` with those of
/// `x^c G^T(x^a, x^b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSystem {
    /// `positive[k]` is the index (into `g`'s positive terms) matched with the
    /// `k`-th positive exponent `a+2b+c, a+c`.
    pub positive: Vec<usize>,
    /// Same for `2a+b+c, b+c, a+b+c` and the negative terms.
    pub negative: Vec<usize>,
    /// Integer basis of all solutions `(a, b, c, t, u)`.
    pub kernel: Vec<[BigInt; 5]>,
    /// Some solution has both `a ≠ 0` and `b ≠ 0`.
    pub nonzero_ab: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatchReport {
    pub systems: Vec<ExponentSystem>,
}

impl ExponentMatchReport {
    pub fn has_nonzero_solution(&self) -> bool {
        self.systems.iter().any(|s| s.nonzero_ab)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Rational null space of `rows` (each of width 5), scaled to integers.
fn integer_kernel(mut rows: Vec<[BigRational; 5]>) -> Vec<[BigInt; 5]> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..5 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for k in 0..5 {
            rows[r][k] = &rows[r][k] * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for k in 0..5 {
                    let sub = &f * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..5).filter(|c| !pivots.contains(c)) {
        let mut v: [BigRational; 5] = core::array::from_fn(|_| BigRational::zero());
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[row][free].clone();
        }
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        basis.push(core::array::from_fn(|k| (&v[k] * BigRational::from_integer(lcm.clone())).to_integer()));
    }
    basis
}

/// Solves the 2!·3! = 12 linear systems equating the positive (negative)
/// exponents of `g(x^t, x^u)` with those of `x^c G^T(x^a, x^b)`, unknowns
/// `(a, b, c, t, u)`.
pub fn exponent_system_match(g: &BivarPoly) -> Result<ExponentMatchReport> {
    let g = g.normalize();
    if g.len() != 5
        || g.positive_count() != 2
        || g.negative_count() != 3
        || g.terms().iter().any(|t| !t.2.abs().is_one())
    {
        return Err(Error::MalformedCandidate(format!(
            "{g} needs five ±1 terms, two positive and three negative"
        )));
    }
    let pos: Vec<(i64, i64)> = g.terms().iter().filter(|t| t.2.is_positive()).map(|t| (t.0, t.1)).collect();
    let neg: Vec<(i64, i64)> = g.terms().iter().filter(|t| t.2.is_negative()).map(|t| (t.0, t.1)).collect();
    // coefficients of a, b, c in the exponents of G^T
    let gt_pos: [[i64; 3]; 2] = [[1, 2, 1], [1, 0, 1]];
    let gt_neg: [[i64; 3]; 3] = [[2, 1, 1], [0, 1, 1], [1, 1, 1]];
    let mut systems = Vec::new();
    for pp in permutations(2) {
        for np in permutations(3) {
            let mut rows = Vec::new();
            let mut push = |gt: &[i64; 3], (i, j): (i64, i64)| {
                let row = [gt[0], gt[1], gt[2], -i, -j];
                rows.push(row.map(|v| BigRational::from_integer(v.into())));
            };
            for (k, &idx) in pp.iter().enumerate() {
                push(&gt_pos[k], pos[idx]);
            }
            for (k, &idx) in np.iter().enumerate() {
                push(&gt_neg[k], neg[idx]);
            }
            let kernel = integer_kernel(rows);
            let nonzero_ab = kernel.iter().any(|v| !v[0].is_zero()) && kernel.iter().any(|v| !v[1].is_zero());
            systems.push(ExponentSystem { positive: pp.clone(), negative: np, kernel, nonzero_ab });
        }
    }
    Ok(ExponentMatchReport { systems })
}
