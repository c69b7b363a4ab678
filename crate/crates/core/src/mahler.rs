//! Numerical Mahler measures.
//!
//! Univariate measures come from Aberth iteration in double precision with
//! inclusion-disk error bounds; cyclotomic factors are split off exactly
//! first. Bivariate measures use a midpoint rule on the torus.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cyclofactor::{cyclotomic_part, FactorParts};
use crate::polyring::IntPoly;
use crate::teichmuller::BivarPoly;
use crate::zfactor::squarefree_decompose;
use crate::{Error, Result};

/// `M(x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1)`.
pub const LEHMER_C: f64 = 1.176_280_818_259_917_5;

const EPS: f64 = f64::EPSILON;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MahlerMethod {
    /// Product over numerically located roots.
    Roots,
    /// Midpoint rule on the torus.
    TorusQuadrature,
    /// Exact: every root is a root of unity (or zero), nothing numerical.
    Cyclotomic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MahlerEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub method: MahlerMethod,
}

impl MahlerEstimate {
    pub fn contains(&self, target: f64) -> bool {
        (self.value - target).abs() <= self.error_bound
    }
}

/// `M(p) = |lead| · ∏ max(1, |ρ|)`.
///
/// `p` is split into content, squarefree parts and their cyclotomic factors
/// before any root finding. `tol` is the target accuracy of the root
/// iteration; the returned `error_bound` is what was actually certified by
/// the inclusion disks.
pub fn mahler_univariate(p: &IntPoly, tol: f64) -> Result<MahlerEstimate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = p.content().to_f64().unwrap_or(f64::INFINITY);
    let prim = p.primitive_part().strip_x_power();
    let mut log_m = 0.0;
    let mut log_err = 0.0;
    let mut numeric = false;
    for (part, k) in squarefree_decompose(&prim) {
        let (_, rest) = cyclotomic_part(&part);
        if rest.is_constant() {
            continue;
        }
        numeric = true;
        let (lm, le) = aberth_log_measure(&rest, tol)?;
        log_m += k as f64 * lm;
        log_err += k as f64 * le;
    }
    let value = content * libm::exp(log_m);
    let pad = 4.0 * EPS * value * (1.0 + prim.degree().unwrap_or(0) as f64);
    Ok(MahlerEstimate {
        value,
        error_bound: if numeric { value * libm::expm1(log_err) + pad } else { 0.0 },
        method: if numeric { MahlerMethod::Roots } else { MahlerMethod::Cyclotomic },
    })
}

fn coeffs_f64(p: &IntPoly) -> Result<Vec<f64>> {
    p.coeffs()
        .iter()
        .map(|c| c.to_f64().filter(|v| v.is_finite()))
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::ConvergenceFailure(0))
}

/// `(p(z), p'(z))` by Horner.
fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Newton correction `p(z)/p'(z)`, through the reversed polynomial outside
/// the unit disk to avoid overflow.
fn newton_ratio(a: &[f64], z: Complex64) -> Complex64 {
    if z.norm() <= 1.0 {
        let (p, dp) = horner(a, z);
        return p / dp;
    }
    let d = (a.len() - 1) as f64;
    let w = z.inv();
    let mut r = Complex64::zero();
    let mut dr = Complex64::zero();
    for &c in a {
        dr = dr * w + r;
        r = r * w + c;
    }
    z * r / (r * d - w * dr)
}

/// `ln |p(z)|` and an upper bound for `ln` of its absolute rounding error.
fn log_residual(a: &[f64], z: Complex64) -> (f64, f64) {
    let d = (a.len() - 1) as f64;
    let rho = z.norm();
    let (val, abs) = if rho <= 1.0 {
        let mut p = Complex64::zero();
        let mut s = 0.0;
        for &c in a.iter().rev() {
            p = p * z + c;
            s = s * rho + c.abs();
        }
        (p.norm(), s)
    } else {
        let w = z.inv();
        let mut r = Complex64::zero();
        let mut s = 0.0;
        for &c in a {
            r = r * w + c;
            s = s / rho + c.abs();
        }
        let scale = d * libm::log(rho);
        return (libm::log(r.norm()) + scale, libm::log(s * 4.0 * d * EPS) + scale);
    };
    (libm::log(val), libm::log(abs * 4.0 * d * EPS))
}

fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + libm::log1p(libm::exp(lo - hi))
}

const MAX_ITER: usize = 2000;
const ATTEMPTS: usize = 4;

/// `(ln M(p), bound on the error of ln M(p))` for squarefree `p` with
/// non-zero constant term.
fn aberth_log_measure(p: &IntPoly, tol: f64) -> Result<(f64, f64)> {
    let a = coeffs_f64(p)?;
    let d = a.len() - 1;
    let lead = a[d].abs();
    if d == 1 {
        let root = (a[0] / a[1]).abs();
        let lm = libm::log(lead) + libm::log(root).max(0.0);
        return Ok((lm, 4.0 * EPS * (1.0 + lm.abs())));
    }
    let step_tol = tol.clamp(1e-15, 1e-6) * 1e-3;
    let mut last_iters = 0;
    for attempt in 0..ATTEMPTS {
        let radius = libm::pow(a[0].abs() / lead, 1.0 / d as f64) * (1.0 + 0.05 * attempt as f64);
        let phase = 0.4 + 0.7 * attempt as f64;
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + phase))
            .collect();
        let mut converged = false;
        let mut polish = 0;
        for it in 0..MAX_ITER {
            last_iters = it;
            let mut worst: f64 = 0.0;
            for i in 0..d {
                let ratio = newton_ratio(&a, z[i]);
                let mut s = Complex64::zero();
                for (j, zj) in z.iter().enumerate() {
                    if j != i {
                        s += (z[i] - zj).inv();
                    }
                }
                let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
                if !w.re.is_finite() || !w.im.is_finite() {
                    let bump = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                    z[i] += bump;
                    worst = f64::INFINITY;
                    continue;
                }
                z[i] -= w;
                worst = worst.max(w.norm() / z[i].norm().max(1.0));
            }
            if worst < step_tol {
                polish += 1;
                if polish >= 2 {
                    converged = true;
                    break;
                }
            }
        }
        if !converged {
            continue;
        }
        if let Some(bound) = inclusion_bound(&a, &z) {
            let lm = libm::log(lead) + z.iter().map(|r| libm::log(r.norm()).max(0.0)).sum::<f64>();
            return Ok((lm, bound + 4.0 * EPS * d as f64 * (1.0 + lm.abs())));
        }
    }
    Err(Error::ConvergenceFailure(last_iters))
}

/// Bound on `|Σ ln⁺|ρ_i| - Σ ln⁺|z_i||` from the disks
/// `|ρ - z_i| ≤ d |p(z_i)| / (|a_d| ∏_{j≠i} |z_i - z_j|)`; overlapping disks
/// are merged and the merged cluster radius is used for each member.
fn inclusion_bound(a: &[f64], z: &[Complex64]) -> Option<f64> {
    let d = z.len();
    let log_lead = libm::log(a[d].abs());
    let log_d = libm::log(d as f64);
    let mut radius = vec![0.0f64; d];
    for i in 0..d {
        let (lp, le) = log_residual(a, z[i]);
        let mut log_prod = 0.0;
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                let dist = (z[i] - zj).norm();
                if dist == 0.0 {
                    return None;
                }
                log_prod += libm::log(dist);
            }
        }
        radius[i] = libm::exp(log_d + log_add(lp, le) - log_lead - log_prod);
        if !radius[i].is_finite() {
            return None;
        }
    }
    // union-find over overlapping disks
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..d {
        for j in i + 1..d {
            if (z[i] - z[j]).norm() <= radius[i] + radius[j] {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut cluster = vec![0.0f64; d];
    for i in 0..d {
        let r = find(&mut parent, i);
        cluster[r] += 2.0 * radius[i];
    }
    let mut total = 0.0;
    for i in 0..d {
        let r = cluster[find(&mut parent, i)];
        let rho = z[i].norm();
        let hi = libm::log(rho + r).max(0.0);
        let lo = if rho > r { libm::log(rho - r).max(0.0) } else { 0.0 };
        total += hi - lo;
    }
    Some(total)
}

/// Compensated sum of `ln |p|` over the midpoint grid with the given offset.
fn torus_mean_log(p: &BivarPoly, grid: usize, offset: f64) -> Result<f64> {
    let terms: Vec<(i64, i64, f64)> = p
        .terms()
        .iter()
        .map(|(i, j, c)| (*i, *j, c.to_f64().unwrap_or(f64::INFINITY)))
        .collect();
    let unit = |e: i64, k: usize| {
        let t = (k as f64 + offset) / grid as f64;
        Complex64::from_polar(1.0, 2.0 * PI * (e as f64) * t)
    };
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut inner = vec![Complex64::zero(); terms.len()];
    for k1 in 0..grid {
        for (slot, (i, _, c)) in inner.iter_mut().zip(&terms) {
            *slot = unit(*i, k1) * *c;
        }
        for k2 in 0..grid {
            let mut v = Complex64::zero();
            for (slot, (_, j, _)) in inner.iter().zip(&terms) {
                v += slot * unit(*j, k2);
            }
            let m = v.norm();
            if m < 1e-300 {
                return Err(Error::SingularGrid);
            }
            let y = libm::log(m) - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    Ok(sum / (grid * grid) as f64)
}

fn torus_measure(p: &BivarPoly, grid: usize) -> Result<f64> {
    match torus_mean_log(p, grid, 0.5) {
        Err(Error::SingularGrid) => torus_mean_log(p, grid, 0.5 + 1.0 / (7.0 * PI)),
        r => r,
    }
    .map(libm::exp)
}

/// `M(p)` for a Laurent polynomial in two variables by the midpoint rule on
/// a `grid × grid` torus mesh (`t = (k + 1/2) / grid`).
///
/// `error_bound` is the larger of the last two refinement differences
/// `|M_G - M_{G/2}|` and `|M_{G/2} - M_{G/4}|`.
pub fn mahler_bivariate(p: &BivarPoly, grid: usize) -> Result<MahlerEstimate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if grid < 64 {
        return Err(Error::PreconditionViolation("grid must be at least 64".into()));
    }
    if p.len() == 1 {
        let c = p.terms()[0].2.abs().to_f64().unwrap_or(f64::INFINITY);
        return Ok(MahlerEstimate { value: c, error_bound: 0.0, method: MahlerMethod::TorusQuadrature });
    }
    let fine = torus_measure(p, grid)?;
    let mid = torus_measure(p, grid / 2)?;
    let coarse = torus_measure(p, grid / 4)?;
    Ok(MahlerEstimate {
        value: fine,
        error_bound: (fine - mid).abs().max((mid - coarse).abs()),
        method: MahlerMethod::TorusQuadrature,
    })
}

/// `q(a) = min { max |s_j| : s ≠ 0, s · a = 0 }`.
///
/// Two entries: `max(a, b) / gcd(a, b)`. More entries: exhaustive search
/// below the bound given by the first two coordinates.
pub fn lawton_q(a: &[u64]) -> u64 {
    assert!(!a.is_empty() && a.iter().all(|&v| v > 0), "entries must be positive");
    if a.len() == 1 {
        // no non-zero integer multiple of a positive number vanishes
        return u64::MAX;
    }
    let g = a[0].gcd(&a[1]);
    let bound = a[0].max(a[1]) / g;
    if a.len() == 2 {
        return bound;
    }
    for h in 1..bound {
        if has_orthogonal_vector(a, h as i64) {
            return h;
        }
    }
    bound
}

fn has_orthogonal_vector(a: &[u64], h: i64) -> bool {
    let r = a.len();
    let mut s = vec![-h; r];
    loop {
        if s.iter().any(|&v| v != 0) {
            let dot: i128 = s.iter().zip(a).map(|(x, y)| *x as i128 * *y as i128).sum();
            if dot == 0 {
                return true;
            }
        }
        let mut k = 0;
        loop {
            if k == r {
                return false;
            }
            if s[k] < h {
                s[k] += 1;
                break;
            }
            s[k] = -h;
            k += 1;
        }
    }
}

/// `M(p(x^a, x^b))` for each pair.
pub fn lawton_sequence(p: &BivarPoly, pairs: &[(u64, u64)], tol: f64) -> Result<Vec<MahlerEstimate>> {
    pairs
        .iter()
        .map(|&(a, b)| mahler_univariate(&p.specialize(a, b), tol))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LehmerVerdict {
    /// `M + error < c²`: a proper factorization would need a factor of
    /// measure below `c`.
    ConditionallyIrreducible,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LehmerGate {
    pub measure: MahlerEstimate,
    pub threshold: f64,
    pub verdict: LehmerVerdict,
}

/// Applies the gate to the cofactor left after removing unit, content and
/// cyclotomic factors.
pub fn lehmer_gate(p: &IntPoly, parts: &FactorParts) -> Result<LehmerGate> {
    debug_assert_eq!(&parts.reconstruct(), p);
    lehmer_gate_cofactor(&parts.noncyclotomic_cofactor())
}

/// [`lehmer_gate`] for a cofactor that is already free of cyclotomic factors.
pub fn lehmer_gate_cofactor(cofactor: &IntPoly) -> Result<LehmerGate> {
    let measure = mahler_univariate(cofactor, 1e-12)?;
    let threshold = LEHMER_C * LEHMER_C;
    let verdict = if measure.value + measure.error_bound < threshold {
        LehmerVerdict::ConditionallyIrreducible
    } else {
        LehmerVerdict::Inconclusive
    };
    Ok(LehmerGate { measure, threshold, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclofactor::three_part_split;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn lehmer() -> IntPoly {
        p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn golden_ratio() {
        let m = mahler_univariate(&p(&[-1, -1, 1]), 1e-12).unwrap();
        assert!((m.value - 1.618_033_988_749_895).abs() < 1e-12);
        assert!(m.contains(1.618_033_988_749_895));
        assert_eq!(m.method, MahlerMethod::Roots);
    }

    #[test]
    fn lehmer_constant() {
        let m = mahler_univariate(&lehmer(), 1e-12).unwrap();
        assert!((m.value - LEHMER_C).abs() < 1e-12);
        assert!(m.error_bound < 1e-9);
    }

    #[test]
    fn cyclotomic_shortcut() {
        let m = mahler_univariate(&IntPoly::x_pow_minus_one(10), 1e-12).unwrap();
        assert_eq!(m.value, 1.0);
        assert_eq!(m.error_bound, 0.0);
        assert_eq!(m.method, MahlerMethod::Cyclotomic);
        assert_eq!(mahler_univariate(&p(&[0, 0, 3]), 1e-12).unwrap().value, 3.0);
    }

    #[test]
    fn bivariate_trivial() {
        let x = BivarPoly::from_i64(&[(1, 0, 1)]);
        assert_eq!(mahler_bivariate(&x, 64).unwrap().value, 1.0);
        let two = BivarPoly::from_i64(&[(0, 0, 2)]);
        assert_eq!(mahler_bivariate(&two, 64).unwrap().value, 2.0);
        // x + 2: Jensen gives 2
        let xp2 = BivarPoly::from_i64(&[(1, 0, 1), (0, 0, 2)]);
        assert!((mahler_bivariate(&xp2, 64).unwrap().value - 2.0).abs() < 1e-12);
        assert!(mahler_bivariate(&xp2, 32).is_err());
    }

    #[test]
    fn lawton_heights() {
        assert_eq!(lawton_q(&[1, 17]), 17);
        assert_eq!(lawton_q(&[448, 441]), 64);
        assert_eq!(lawton_q(&[2, 2]), 1);
        assert_eq!(lawton_q(&[1, 2, 3]), 1);
        assert_eq!(lawton_q(&[6, 10, 15]), 3);
    }

    #[test]
    fn gate() {
        let g = lehmer_gate_cofactor(&lehmer()).unwrap();
        assert_eq!(g.verdict, LehmerVerdict::ConditionallyIrreducible);
        let sq = lehmer().pow(2);
        let parts = three_part_split(&sq).unwrap();
        let g2 = lehmer_gate(&sq, &parts).unwrap();
        assert_eq!(g2.verdict, LehmerVerdict::Inconclusive);
    }
}
