//! Dehn fillings of the Whitehead link: the polynomials `F^W_{m,n}`, their
//! `x² + 1` structure, the trace polynomials `T_{m,n}(z)` and the
//! Schinzel-type threshold that makes the irreducibility statement effective.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{binomial, exact_root, factor_u64};
use crate::gaussian::{GaussianInt, GaussianRational};
use crate::polyring::{gcd_z, IntPoly};
use crate::zfactor::{factor_z, FactorConfig};
use crate::{Error, Result};

/// The slope `m/n` of a Dehn filling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FillingSlope {
    pub m: u64,
    pub n: u64,
}

impl FillingSlope {
    pub fn new(m: u64, n: u64) -> Self {
        FillingSlope { m, n }
    }

    pub fn gcd(&self) -> u64 {
        self.m.gcd(&self.n)
    }

    /// `m` odd and `gcd(m, n) = 1`.
    pub fn is_admissible(&self) -> bool {
        self.m % 2 == 1 && self.gcd() == 1
    }

    fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::PreconditionViolation(format!(
                "slope {}/{} needs m odd and gcd(m, n) = 1",
                self.m, self.n
            )))
        }
    }
}

/// `F^W_{m,n}` together with its trace polynomial `T_{m,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracePolyPair {
    pub slope: FillingSlope,
    pub fw: IntPoly,
    /// Polynomial in `z`.
    pub t: IntPoly,
}

impl TracePolyPair {
    pub fn new(m: u64, n: u64) -> Self {
        TracePolyPair {
            slope: FillingSlope::new(m, n),
            fw: build_fw(m, n),
            t: trace_poly(m, n),
        }
    }
}

/// `(x(x+1))^m x^{4n} - (x-1)^m`.
pub fn build_fw(m: u64, n: u64) -> IntPoly {
    let xx1 = IntPoly::from_i64(&[0, 1, 1]);
    let xm1 = IntPoly::from_i64(&[-1, 1]);
    let lead = xx1.pow(m as u32).shift(4 * n as usize);
    &lead - &xm1.pow(m as u32)
}

/// Checks that `x² + 1` divides `F^W_{m,n}` exactly once.
///
/// Returns the quotient and `F'(i) / (i-1)^{m-1}`, which must equal
/// `(k+m) i + (k-m)` with `k = 4n + m`. Any deviation is a
/// [`Error::StructureViolation`].
pub fn x2p1_structure(m: u64, n: u64) -> Result<(IntPoly, GaussianInt)> {
    FillingSlope::new(m, n).require_admissible()?;
    let fw = build_fw(m, n);
    let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
    let (quot, rem) = fw.divrem(&x2p1)?;
    if !rem.is_zero() {
        return Err(Error::StructureViolation(format!(
            "x^2+1 does not divide F^W_{{{m},{n}}}"
        )));
    }
    let d = fw.derivative().eval_at_i();
    let base = GaussianInt::from_i64(-1, 1).pow(m as u32 - 1);
    let witness = d.div_exact(&base).ok_or_else(|| {
        Error::StructureViolation(format!("(i-1)^{} does not divide F'(i)", m - 1))
    })?;
    let k = (4 * n + m) as i64;
    let expected = GaussianInt::from_i64(k - m as i64, k + m as i64);
    if witness != expected || witness.is_zero() {
        return Err(Error::StructureViolation(format!(
            "derivative witness {witness} differs from {expected}"
        )));
    }
    if quot.eval_at_i().is_zero() {
        return Err(Error::StructureViolation(format!(
            "(x^2+1)^2 divides F^W_{{{m},{n}}}"
        )));
    }
    Ok((quot, witness))
}

/// Data of the Schinzel-type criterion for `f(x) x^k + g(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchinzelReport {
    /// `k` at or above which the criterion applies.
    pub n_threshold: BigRational,
    pub big_n: BigInt,
    /// `-f g` is a `p`-th power for some prime `p | k`.
    pub condition_i: bool,
    /// The prime realising condition (i), if any.
    pub condition_i_prime: Option<u64>,
    /// One of `±f, ±g` is a 4th power, the other 4 times a 4th power, `4 | k`.
    pub condition_ii: bool,
    pub r1: usize,
    pub r2: usize,
    pub norm_f_sq: BigInt,
    pub norm_g_sq: BigInt,
}

/// `N = 2‖f‖² + 2‖g‖² + 2r₁ + 2r₂ - 7`.
pub fn schinzel_big_n(f: &IntPoly, g: &IntPoly) -> BigInt {
    let r = (2 * (f.term_count() + g.term_count())) as i64 - 7;
    (f.l2_norm_sq() + g.l2_norm_sq()) * 2 + BigInt::from(r)
}

/// `max{2·5^{2N-1}, 2·max(deg f, deg g)·(5^{N-1} + 1/4)}`.
pub fn schinzel_threshold(big_n: &BigInt, max_deg: usize) -> BigRational {
    let five = BigInt::from(5);
    let n: u32 = big_n.try_into().expect("N fits in u32");
    let first = BigRational::from_integer(BigInt::from(2) * five.pow(2 * n - 1));
    let second = BigRational::from_integer(BigInt::from(2 * max_deg))
        * (BigRational::from_integer(five.pow(n - 1)) + BigRational::new(1.into(), 4.into()));
    first.max(second)
}

/// Whether `h` is a `p`-th power in `Z[x]` (sign allowed when `p` is odd).
pub fn is_perfect_power(h: &IntPoly, p: u32) -> Result<bool> {
    let fac = factor_z(h, &FactorConfig::default())?;
    if fac.factors.iter().any(|(_, e)| !(*e as u32).is_multiple_of(p)) {
        return Ok(false);
    }
    let c = fac.content * BigInt::from(fac.unit);
    Ok(exact_root(&c, p).is_some())
}

fn is_four_times_fourth_power(h: &IntPoly) -> Result<bool> {
    let four = BigInt::from(4);
    if h.coeffs().iter().any(|c| !(c % &four).is_zero()) {
        return Ok(false);
    }
    is_perfect_power(&h.div_scalar_exact(&four), 4)
}

/// Evaluates the hypotheses and threshold of the criterion for `f x^k + g`.
pub fn schinzel_conditions(f: &IntPoly, g: &IntPoly, k: u64) -> Result<SchinzelReport> {
    if f.is_zero() || g.is_zero() || f.constant_term().is_zero() || g.constant_term().is_zero() {
        return Err(Error::PreconditionViolation("f(0) and g(0) must be non-zero".into()));
    }
    if !gcd_z(f, g)?.is_one() {
        return Err(Error::PreconditionViolation("gcd_Z(f, g) must be 1".into()));
    }
    let minus_fg = -(f * g);
    let mut condition_i_prime = None;
    for (p, _) in factor_u64(k) {
        if is_perfect_power(&minus_fg, p as u32)? {
            condition_i_prime = Some(p);
            break;
        }
    }
    let mut condition_ii = false;
    if k.is_multiple_of(4) {
        for (a, b) in [(f, g), (g, f)] {
            for eps in [IntPoly::one(), -IntPoly::one()] {
                let ea = &eps * a;
                let eb = &eps * b;
                if is_perfect_power(&ea, 4)? && is_four_times_fourth_power(&eb)? {
                    condition_ii = true;
                }
            }
        }
    }
    let big_n = schinzel_big_n(f, g);
    let max_deg = f.degree().unwrap().max(g.degree().unwrap());
    Ok(SchinzelReport {
        n_threshold: schinzel_threshold(&big_n, max_deg),
        big_n,
        condition_i: condition_i_prime.is_some(),
        condition_i_prime,
        condition_ii,
        r1: f.term_count(),
        r2: g.term_count(),
        norm_f_sq: f.l2_norm_sq(),
        norm_g_sq: g.l2_norm_sq(),
    })
}

/// `N(m) = 5^{8·C(2m,m) + 8m - 7} / 2 - m/4`.
pub fn n_threshold_whitehead(m: u64) -> BigRational {
    assert!(m % 2 == 1, "m must be odd");
    let e: BigInt = binomial(2 * m, m) * 8 + BigInt::from(8 * m) - BigInt::from(7);
    let e: u32 = (&e).try_into().expect("exponent fits in u32");
    BigRational::new(BigInt::from(5).pow(e), 2.into()) - BigRational::new(BigInt::from(m), 4.into())
}

/// Order in which the `(m, n)` table of trace polynomials is filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecursionOrder {
    /// Columns `m = 0, 1` by the `n`-recursion, then rows by the `m`-recursion.
    ColumnsFirst,
    /// Rows `n = 0, 1` by the `m`-recursion, then columns by the `n`-recursion.
    RowsFirst,
}

/// `T_{m,n}(z)`.
pub fn trace_poly(m: u64, n: u64) -> IntPoly {
    trace_table(m, n, RecursionOrder::ColumnsFirst)[m as usize][n as usize].clone()
}

pub fn trace_poly_with(m: u64, n: u64, order: RecursionOrder) -> IntPoly {
    trace_table(m, n, order)[m as usize][n as usize].clone()
}

/// `T_{i,j}` for `0 ≤ i ≤ m`, `0 ≤ j ≤ n`, indexed `[i][j]`.
pub fn trace_table(m: u64, n: u64, order: RecursionOrder) -> Vec<Vec<IntPoly>> {
    let (rows, cols) = (m.max(1) as usize + 1, n.max(1) as usize + 1);
    let z = IntPoly::x();
    let zp2 = IntPoly::from_i64(&[2, 1]);
    let z2p2 = IntPoly::from_i64(&[2, 0, 1]);
    let m_step = |a: &IntPoly, b: &IntPoly| &(&zp2 * a) - &(&z * b);
    let n_step = |a: &IntPoly, b: &IntPoly| &(&z2p2 * a) - b;
    let mut t = vec![vec![IntPoly::zero(); cols]; rows];
    t[0][0] = IntPoly::zero();
    t[1][0] = IntPoly::one();
    t[0][1] = z.clone();
    t[1][1] = IntPoly::from_i64(&[1, 1, 1]);
    match order {
        RecursionOrder::ColumnsFirst => {
            for i in 0..2 {
                for j in 2..cols {
                    t[i][j] = n_step(&t[i][j - 1], &t[i][j - 2]);
                }
            }
            for i in 2..rows {
                for j in 0..cols {
                    t[i][j] = m_step(&t[i - 1][j], &t[i - 2][j]);
                }
            }
        }
        RecursionOrder::RowsFirst => {
            for j in 0..2 {
                for i in 2..rows {
                    t[i][j] = m_step(&t[i - 1][j], &t[i - 2][j]);
                }
            }
            for j in 2..cols {
                for i in 0..rows {
                    t[i][j] = n_step(&t[i][j - 1], &t[i][j - 2]);
                }
            }
        }
    }
    t
}

/// `x^D T(x - 1/x)` with `D ≥ deg T`, as a polynomial in `x`.
pub fn substitute_x_minus_inv(t: &IntPoly, big_d: usize) -> IntPoly {
    let x2m1 = IntPoly::from_i64(&[-1, 0, 1]);
    let mut acc = IntPoly::zero();
    let mut pw = IntPoly::one();
    for (j, c) in t.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &pw.scale(c).shift(big_d - j);
        }
        pw = &pw * &x2m1;
    }
    acc
}

/// `(x² + 1) x^{2n+m-1} T_{m,n}(x - 1/x) = F^W_{m,n}(x)`.
pub fn verify_trace_identity(m: u64, n: u64) -> bool {
    let t = trace_poly(m, n);
    let fw = build_fw(m, n);
    if m + 2 * n == 0 {
        return t.is_zero() && fw.is_zero();
    }
    let big_d = (2 * n + m - 1) as usize;
    if t.degree().is_some_and(|d| d > big_d) {
        return false;
    }
    let lhs = &IntPoly::from_i64(&[1, 0, 1]) * &substitute_x_minus_inv(&t, big_d);
    lhs == fw
}

/// `2n + m - 1`, checked against `deg T_{m,n}`.
pub fn trace_field_degree(m: u64, n: u64) -> Result<usize> {
    FillingSlope::new(m, n).require_admissible()?;
    let d = (2 * n + m - 1) as usize;
    if trace_poly(m, n).degree() != Some(d) {
        return Err(Error::StructureViolation(format!("deg T_{{{m},{n}}} differs from {d}")));
    }
    Ok(d)
}

/// Shape parameters `(x, -1/x, x, -1/x)` of the four ideal tetrahedra.
pub fn parametrized_solution(x: &GaussianRational) -> Result<[GaussianRational; 4]> {
    let inv = x.inv().ok_or(Error::ZeroInput)?;
    let minus_inv = -&inv;
    Ok([x.clone(), minus_inv.clone(), x.clone(), minus_inv])
}

/// Smallest `k = 4n + m` for which the criterion guarantees irreducibility of
/// `F^W_{m,n} / (x²+1)`, from the generic threshold with
/// `f = (x+1)^m`, `g = -(x-1)^m`.
pub fn k_threshold_whitehead(m: u64) -> BigRational {
    let f = IntPoly::from_i64(&[1, 1]).pow(m as u32);
    let g = -IntPoly::from_i64(&[-1, 1]).pow(m as u32);
    let big_n = schinzel_big_n(&f, &g);
    schinzel_threshold(&big_n, m as usize)
}
