use invol_core::bijections::{code_213, decode_213, phi, phi_inv, psi, psi_inv, DyckWord, Step};
use invol_core::perm::{Involution, PatternMatcher, Permutation};
use invol_core::series::{Poly, RationalGF, TruncatedSeries};
use num_bigint::BigInt;
use proptest::prelude::*;

/// A primitive word of length at most `max`: a clamped random walk.
fn primitive_word(max: usize) -> impl Strategy<Value = DyckWord> {
    prop::collection::vec(any::<bool>(), 0..=max).prop_map(|coins| {
        let mut height = 0i64;
        let steps = coins
            .into_iter()
            .map(|up| {
                if up || height == 0 {
                    height += 1;
                    Step::Up
                } else {
                    height -= 1;
                    Step::Down
                }
            })
            .collect();
        DyckWord::new(steps)
    })
}

fn permutation(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (0..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
}

/// Occurrences by trying every index subset.
fn brute_occurrences(p: &[usize], tau: &[usize]) -> u64 {
    let n = p.len();
    let k = tau.len();
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .filter(|mask| {
            let sub: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| p[i]).collect();
            (0..k).all(|a| (0..k).all(|b| (sub[a] < sub[b]) == (tau[a] < tau[b])))
        })
        .count() as u64
}

fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-20i64..=20, order).prop_map(|mut tail| {
        tail.insert(0, 1);
        TruncatedSeries::from_i64(&tail)
    })
}

proptest! {
    #[test]
    fn phi_round_trip_transports_fixed_points(w in primitive_word(24)) {
        let inv = phi_inv(&w).unwrap();
        prop_assert_eq!(inv.len(), w.len());
        prop_assert_eq!(inv.fixed_point_count() as i64, w.balance());
        prop_assert!(!PatternMatcher::new(&[1, 3, 2]).occurs_in(inv.values()));
        prop_assert_eq!(phi(&inv).unwrap(), w);
    }

    #[test]
    fn psi_round_trip(w in primitive_word(20)) {
        let sigma = phi_inv(&w).unwrap();
        prop_assume!(sigma.fixed_point_count() > 0);
        let pi = psi_inv(&sigma).unwrap();
        prop_assert_eq!(pi.len(), sigma.len() + 2);
        prop_assert_eq!(pi.fixed_point_count(), sigma.fixed_point_count());
        prop_assert_eq!(PatternMatcher::new(&[1, 3, 2]).count(pi.values()), 1);
        prop_assert_eq!(psi(&pi).unwrap(), sigma);
    }

    #[test]
    fn composition_code_round_trip(w in primitive_word(16)) {
        let inv = phi_inv(&w).unwrap();
        prop_assume!(!PatternMatcher::new(&[2, 1, 3]).occurs_in(inv.values()));
        let code = code_213(&inv).unwrap();
        prop_assert_eq!(decode_213(&code, inv.len()).unwrap(), inv);
    }

    #[test]
    fn matcher_agrees_with_subset_scan(p in permutation(9), tau in permutation(4)) {
        let m = PatternMatcher::new(&tau);
        let exact = brute_occurrences(&p, &tau);
        prop_assert_eq!(m.count(&p), exact);
        prop_assert_eq!(m.occurs_in(&p), exact > 0);
        for cap in 0..3 {
            prop_assert_eq!(m.count_capped(&p, cap), exact.min(cap + 1));
        }
    }

    #[test]
    fn inverse_is_an_involution_check(p in permutation(10)) {
        let perm = Permutation::new(p).unwrap();
        let inv = perm.inverse();
        prop_assert_eq!(inv.inverse(), perm.clone());
        prop_assert_eq!(perm.is_involution(), inv == perm);
        prop_assert_eq!(Involution::new(perm.clone()).is_ok(), perm.is_involution());
    }

    #[test]
    fn reciprocal_is_inverse(a in unit_series(12)) {
        prop_assert_eq!(&a * &a.reciprocal().unwrap(), TruncatedSeries::one(12));
    }

    #[test]
    fn rational_expansion_solves_the_quotient(
        num in prop::collection::vec(-5i64..=5, 1..6),
        den_tail in prop::collection::vec(-5i64..=5, 0..5),
        shift in 0i64..4,
    ) {
        let mut den = vec![1i64];
        den.extend(den_tail);
        let f = RationalGF::new(Poly::from_i64(&num), Poly::from_i64(&den), shift);
        let s = f.expand(15).unwrap();
        let lhs = &s * &Poly::from_i64(&den).to_series(15);
        let rhs = Poly::from_i64(&num).to_series(15).shift(shift as usize);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(s.coeff(0) == &BigInt::from(0), shift > 0 || num[0] == 0);
    }
}
