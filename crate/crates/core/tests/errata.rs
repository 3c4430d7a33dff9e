//! Each discrepancy in the shipped ledger, checked from both sides: the
//! formula as stated disagrees with the oracle and the corrected form agrees.

use invol_core::oracle::{count_series, ClassSpec, Limits, OccurrenceConstraint, Relation};
use invol_core::perm::{PatternSpec, Permutation};
use invol_core::series::{gf_catalog, s_incr_exactly, CatalogName, Params, RationalGF, TruncatedSeries};
use invol_core::trees::dyck_bounded_height_count;
use num_bigint::BigInt;

const N: usize = 11;

fn oracle(c132: Relation, extra: Vec<OccurrenceConstraint>) -> TruncatedSeries {
    count_series(&ClassSpec::involutions(c132, extra), N, &Limits::default()).unwrap()
}

fn lit(v: &[usize]) -> PatternSpec {
    PatternSpec::Literal(Permutation::new(v.to_vec()).unwrap())
}

fn coeffs(s: &TruncatedSeries) -> Vec<i64> {
    s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

#[test]
fn kd_once_closed_form_needs_one_more_factor_x() {
    for (k, d) in [(4, 2), (5, 2), (6, 2), (6, 3)] {
        let stated = gf_catalog(CatalogName::JKd, &Params::kd(k, d), N).unwrap();
        let truth = oracle(Relation::Eq(1), vec![OccurrenceConstraint::avoid(PatternSpec::Kd { k, d })]);
        assert_ne!(stated, truth);
        assert_eq!(stated.shift(1), truth, "k={k} d={d}");
    }
}

#[test]
fn single_occurrence_of_21_degenerates() {
    let once_21 = oracle(Relation::Avoid, vec![OccurrenceConstraint::exactly(lit(&[2, 1]), 1)]);
    assert_eq!(coeffs(&once_21), [0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
    for name in [CatalogName::IR1M213, CatalogName::IR1Cycle] {
        assert_ne!(gf_catalog(name, &Params::k(2), N).unwrap(), once_21);
    }
    let both_21 = oracle(Relation::Eq(1), vec![OccurrenceConstraint::exactly(lit(&[2, 1]), 1)]);
    assert_eq!(coeffs(&both_21), [0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
}

#[test]
fn two_occurrence_recurrence_overcounts_but_explicit_form_holds() {
    for k in 2..=6 {
        let truth = oracle(Relation::Avoid, vec![OccurrenceConstraint::exactly(PatternSpec::Incr(k), 2)]);
        assert_ne!(gf_catalog(CatalogName::IRIncr, &Params::kr(k, 2), N).unwrap(), truth);
        assert_eq!(gf_catalog(CatalogName::IR2Incr, &Params::k(k), N).unwrap(), truth);
    }
    for k in 1..=6 {
        let truth = oracle(Relation::Avoid, vec![OccurrenceConstraint::exactly(PatternSpec::Incr(k), 1)]);
        assert_eq!(gf_catalog(CatalogName::IRIncr, &Params::kr(k, 1), N).unwrap(), truth);
    }
    let k1 = oracle(Relation::Avoid, vec![OccurrenceConstraint::exactly(PatternSpec::Incr(1), 2)]);
    assert_eq!(coeffs(&k1)[2], 2);
    assert_eq!(coeffs(&gf_catalog(CatalogName::IR2Incr, &Params::k(1), N).unwrap())[2], 1);
}

/// The `a`-th term reads `x^(a-1) U_{k-1}^(a-1) / U_k^(a+1)` when stated;
/// only the indices `k-2, k-1` reproduce `S^a_{k-1}(x^2)`.
#[test]
fn occurrence_term_indices_are_shifted() {
    let term = |top: i64, bottom: i64, a: usize| {
        let num = &RationalGF::x_pow(a as i64 - 1) * &RationalGF::u(top).pow(a - 1);
        (&num * &RationalGF::u(bottom).pow(a + 1).recip().unwrap()).expand(ORDER).unwrap()
    };
    const ORDER: usize = 30;
    for k in 3..=6usize {
        for a in 1..=2 {
            let s = s_incr_exactly(k - 1, a, ORDER / 2).unwrap().truncate(ORDER).sub_x2();
            assert_eq!(term(k as i64 - 2, k as i64 - 1, a), s, "k={k} a={a}");
            assert_ne!(term(k as i64 - 1, k as i64, a), s, "k={k} a={a}");
        }
    }
}

#[test]
fn base_case_for_213_once_is_x3_r3() {
    let truth = oracle(Relation::Eq(1), vec![OccurrenceConstraint::avoid(lit(&[2, 1, 3]))]);
    let r3 = RationalGF::r(3, true);
    assert_eq!((&RationalGF::x_pow(3) * &r3).expand(N).unwrap(), truth);
    assert_ne!((&RationalGF::x_pow(4) * &r3).expand(N).unwrap(), truth);
    assert_eq!(gf_catalog(CatalogName::JM213, &Params::k(3), N).unwrap(), truth);
}

#[test]
fn once_132_avoiding_231_starts_at_three() {
    let truth = coeffs(&oracle(Relation::Eq(1), vec![OccurrenceConstraint::avoid(lit(&[2, 3, 1]))]));
    assert_eq!(&truth[..3], [0, 0, 0]);
    assert!(truth[3..].iter().all(|&c| c == 1));
}

#[test]
fn once_213_once_132_even_law_from_six() {
    let truth = coeffs(&oracle(Relation::Eq(1), vec![OccurrenceConstraint::exactly(lit(&[2, 1, 3]), 1)]));
    assert_eq!(truth[4], 1);
    for (n, &c) in truth.iter().enumerate().skip(5) {
        let expect = if n % 2 == 0 { 1i64 << ((n - 6) / 2) } else { 0 };
        assert_eq!(c, expect, "n={n}");
    }
}

#[test]
fn height_below_four_is_every_other_fibonacci() {
    let mut fib: Vec<BigInt> = vec![BigInt::from(1), BigInt::from(1)];
    for i in 2..=20 {
        let next = &fib[i - 1] + &fib[i - 2];
        fib.push(next);
    }
    for n in 1..=10usize {
        let count = BigInt::from(dyck_bounded_height_count(n, 4));
        assert_eq!(count, fib[2 * n - 2], "n={n}");
        if n >= 3 {
            assert_ne!(count, fib[n - 2], "n={n}");
        }
    }
}
