use fewnomial_core::arith::{binomial, subset_sums};
use fewnomial_core::cyclofactor::{cyclotomic_part, cyclotomic_poly, three_part_split};
use fewnomial_core::mahler::{lawton_q, mahler_bivariate, mahler_univariate};
use fewnomial_core::teichmuller::{
    build_gt, fmv_closure, fmv_seed, xy_p_t, SignedBivar, DEFAULT_CLOSURE_CAP,
};
use fewnomial_core::whitehead::{
    build_fw, trace_poly, trace_poly_with, verify_trace_identity, RecursionOrder,
};
use fewnomial_core::zfactor::{degree_pattern, is_irreducible_z};
use fewnomial_core::{factor_z, gcd_z, FactorConfig, IntPoly};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64(&c))
}

fn nonzero_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    small_poly(max_deg, bound).prop_filter("non-zero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_z_divides_and_is_symmetric(
        a in nonzero_poly(3, 5),
        b in nonzero_poly(3, 5),
        c in nonzero_poly(2, 5),
    ) {
        let u = &a * &c;
        let v = &b * &c;
        let g = gcd_z(&u, &v).unwrap();
        prop_assert!(u.try_div(&g).is_some());
        prop_assert!(v.try_div(&g).is_some());
        prop_assert_eq!(g.clone(), gcd_z(&v, &u).unwrap());
        prop_assert!(g.degree().unwrap() >= c.degree().unwrap());
    }

    #[test]
    fn factorization_reconstructs(
        a in nonzero_poly(8, 100),
        b in nonzero_poly(8, 100),
    ) {
        let cfg = FactorConfig::default();
        let p = &a * &b;
        let f = factor_z(&p, &cfg).unwrap();
        prop_assert_eq!(f.reconstruct(), p.clone());
        for (g, _) in &f.factors {
            prop_assert!(is_irreducible_z(g, &cfg).unwrap().irreducible);
            // every claimed factor degree is a subset sum of each mod-q pattern
            let sf = g.primitive_part();
            let deg = sf.degree().unwrap();
            for q in [2u64, 3, 5, 7, 11, 13] {
                if let Some(pat) = degree_pattern(&sf, q) {
                    prop_assert!(subset_sums(&pat)[deg]);
                }
            }
        }
    }

    #[test]
    fn planted_cyclotomic_factors_recovered(
        idx in prop::collection::btree_map(1u64..=40, 1u32..=2, 0..=3),
    ) {
        // x^3 + x + 1 is non-reciprocal, so it cannot hide a root of unity
        let mut p = IntPoly::from_i64(&[1, 1, 0, 1]);
        for (n, k) in &idx {
            p = &p * &cyclotomic_poly(*n).pow(*k);
        }
        let (found, rest) = cyclotomic_part(&p);
        let want: Vec<(u64, u32)> = idx.into_iter().collect();
        prop_assert_eq!(found, want);
        prop_assert_eq!(rest.clone(), IntPoly::from_i64(&[1, 1, 0, 1]));
        prop_assert!(cyclotomic_part(&rest).0.is_empty());
    }

    #[test]
    fn three_parts_reconstruct(a in nonzero_poly(6, 9), n in 1u64..=12) {
        let p = &a * &cyclotomic_poly(n);
        let parts = three_part_split(&p).unwrap();
        prop_assert_eq!(parts.reconstruct(), p);
        for (r, _) in &parts.reciprocal_noncyclotomic {
            prop_assert!(r.is_reciprocal().unwrap());
        }
        prop_assert!(parts.cyclotomic.iter().any(|(m, _)| *m == n));
    }

    #[test]
    fn mahler_is_multiplicative(a in nonzero_poly(6, 4), b in nonzero_poly(6, 4)) {
        let ma = mahler_univariate(&a, 1e-12).unwrap();
        let mb = mahler_univariate(&b, 1e-12).unwrap();
        let mab = mahler_univariate(&(&a * &b), 1e-12).unwrap();
        let slack = mab.error_bound + ma.error_bound * mb.value + mb.error_bound * ma.value + 1e-12;
        prop_assert!((mab.value - ma.value * mb.value).abs() <= slack,
            "{} vs {}·{}", mab.value, ma.value, mb.value);
    }

    #[test]
    fn mahler_reversal_symmetry(a in nonzero_poly(7, 5)) {
        let ma = mahler_univariate(&a, 1e-12).unwrap();
        let mr = mahler_univariate(&a.reverse().unwrap(), 1e-12).unwrap();
        prop_assert!((ma.value - mr.value).abs() <= ma.error_bound + mr.error_bound + 1e-12);
    }

    #[test]
    fn kronecker_products(idx in prop::collection::vec(1u64..=30, 1..=5)) {
        let mut p = IntPoly::one();
        for n in &idx {
            p = &p * &cyclotomic_poly(*n);
        }
        prop_assume!(p.degree().unwrap() <= 50);
        let m = mahler_univariate(&p, 1e-12).unwrap();
        prop_assert!((m.value - 1.0).abs() < 1e-9);
    }
}

#[test]
fn cyclotomics_are_irreducible() {
    let cfg = FactorConfig::default();
    for n in 1..=60u64 {
        let phi = cyclotomic_poly(n);
        let f = factor_z(&phi, &cfg).unwrap();
        assert_eq!(f.factors, vec![(phi.clone(), 1)], "n = {n}");
        assert!(is_irreducible_z(&phi, &cfg).unwrap().irreducible);
    }
}

#[test]
fn central_binomial_norms() {
    for m in 1..=10u32 {
        let p = IntPoly::from_i64(&[1, 1]).pow(m);
        let factorial = |k: u64| (1..=k).fold(BigInt::from(1), |a, i| a * i);
        let m = m as u64;
        let via_factorials = factorial(2 * m) / (factorial(m) * factorial(m));
        assert_eq!(p.l2_norm_sq(), via_factorials);
        assert_eq!(p.l2_norm_sq(), binomial(2 * m, m));
    }
}

#[test]
fn whitehead_families() {
    let cfg = FactorConfig::default();
    for m in [1u64, 3, 5] {
        for n in 1..=8u64 {
            if num_integer::gcd(m, n) != 1 {
                continue;
            }
            let fw = build_fw(m, n);
            assert_eq!(cyclotomic_part(&fw).0, vec![(4, 1)], "({m},{n})");
            let parts = three_part_split(&fw).unwrap();
            assert!(parts.reciprocal_noncyclotomic.is_empty());
            assert!(is_irreducible_z(&parts.nonreciprocal_part, &cfg).unwrap().irreducible);
        }
    }
}

#[test]
fn trace_recursion_orders_agree() {
    for m in 0..=10u64 {
        for n in 0..=10u64 {
            assert_eq!(
                trace_poly_with(m, n, RecursionOrder::ColumnsFirst),
                trace_poly_with(m, n, RecursionOrder::RowsFirst),
                "({m},{n})"
            );
        }
    }
}

#[test]
fn trace_identity_grid() {
    for m in 0..=8u64 {
        for n in 0..=8u64 {
            assert!(verify_trace_identity(m, n), "({m},{n})");
            if m + n > 0 && (m, n) != (0, 0) && 2 * n + m >= 1 {
                assert_eq!(trace_poly(m, n).degree(), Some((2 * n + m - 1) as usize));
            }
        }
    }
}

#[test]
fn auxiliary_identities() {
    let q = IntPoly::from_i64(&[-1, 2, 1]);
    let x3mx = IntPoly::from_i64(&[0, -1, 0, 1]);
    let lhs1 = &(&q * &IntPoly::from_i64(&[0, 1, 1])) - &x3mx;
    assert_eq!(lhs1, IntPoly::from_i64(&[0, 1, 1]).pow(2));
    let lhs2 = &(&q * &IntPoly::from_i64(&[-1, 1])) - &x3mx;
    assert_eq!(lhs2, IntPoly::from_i64(&[-1, 1]).pow(2));
}

#[test]
fn gt_shape() {
    for a in 1..=100u64 {
        for b in 1..=100u64 {
            if a == b {
                continue;
            }
            let g = build_gt(a, b);
            assert_eq!(g.term_count(), 5, "({a},{b})");
            assert!(g.constant_term() == &BigInt::from(1) || g.constant_term() == &BigInt::from(-1));
            if a <= 30 && b <= 30 {
                assert!(g.is_reciprocal().unwrap(), "({a},{b})");
            }
        }
    }
}

#[test]
fn closure_is_monotone_and_pairs_multiply_back() {
    let c = fmv_closure(&fmv_seed(), DEFAULT_CLOSURE_CAP).unwrap();
    assert!(c.sizes.windows(2).all(|w| w[0] < w[1]));
    for m in &c.members {
        assert!(m.product_holds(), "{}", m.poly);
        assert!(!m.factor_pair.0.is_reciprocal().unwrap());
        assert!(!m.factor_pair.1.is_reciprocal().unwrap());
    }
    let again = fmv_closure(&SignedBivar { ..c.members[0].clone() }, DEFAULT_CLOSURE_CAP).unwrap();
    let polys = |v: &[SignedBivar]| v.iter().map(|m| m.poly.clone()).collect::<Vec<_>>();
    assert_eq!(polys(&again.members), polys(&c.members));
}

#[test]
fn closure_ignores_factor_order() {
    let seed = fmv_seed();
    let (f1, f2) = seed.factor_pair.clone();
    let swapped = SignedBivar::new(seed.poly.clone(), f2, f1).unwrap();
    let a = fmv_closure(&seed, DEFAULT_CLOSURE_CAP).unwrap();
    let b = fmv_closure(&swapped, DEFAULT_CLOSURE_CAP).unwrap();
    let polys = |v: &[SignedBivar]| v.iter().map(|m| m.poly.clone()).collect::<Vec<_>>();
    assert_eq!(polys(&a.members), polys(&b.members));
    assert_eq!(a.j, b.j);
}

#[test]
fn lawton_limit_at_desk_scale() {
    let target = mahler_bivariate(&xy_p_t(), 512).unwrap();
    for (a, b) in [(1u64, 50u64), (1, 64), (3, 160), (2, 101)] {
        assert!(lawton_q(&[a, b]) >= 50);
        let (_, rest) = cyclotomic_part(&build_gt(a, b));
        let m = mahler_univariate(&rest, 1e-12).unwrap();
        assert!((m.value - target.value).abs() < 0.02, "({a},{b}): {}", m.value);
    }
}

#[test]
fn quadrature_error_shrinks_under_refinement() {
    let p = xy_p_t();
    let e = |g| mahler_bivariate(&p, g).unwrap().error_bound;
    assert!(e(512) < e(256));
    assert!(e(2048) < e(1024));
}
