//! `factor_z` against an exhaustive, modular-free factorization of every
//! polynomial of degree at most 4 with coefficients in [-3, 3].

mod common;

use common::{oracle, small_polynomials, sorted};
use fewnomial_core::{factor_z, FactorConfig, IntPoly};
use num_traits::Signed;

#[test]
fn exhaustive_small_polynomials() {
    let cfg = FactorConfig::default();
    let mut checked = 0;
    for p in small_polynomials() {
        let fz = factor_z(&p, &cfg).unwrap();
        assert_eq!(fz.reconstruct(), p);
        assert_eq!(fz.content, p.content());
        let mut got = Vec::new();
        for (f, k) in &fz.factors {
            assert!(f.leading_coeff().is_positive());
            got.extend(std::iter::repeat_n(f.clone(), *k));
        }
        let mut want = Vec::new();
        oracle(&p, &mut want);
        assert_eq!(sorted(got), sorted(want), "p = {p}");
        checked += 1;
    }
    assert_eq!(checked, 7usize.pow(5) - 1);
}

#[test]
fn oracle_sanity() {
    let mut out = Vec::new();
    oracle(&IntPoly::from_i64(&[4, 0, 0, 0, 1]), &mut out);
    assert_eq!(sorted(out), vec![IntPoly::from_i64(&[2, -2, 1]), IntPoly::from_i64(&[2, 2, 1])]);
    let mut out = Vec::new();
    oracle(&IntPoly::from_i64(&[1, -1, -1, 1, 1]), &mut out);
    assert_eq!(out.len(), 1);
}
