use proptest::prelude::*;
use supertask::analysis::{
    cesaro_mean, deviation, elapsed_after, epsilon_witness, grouped_sum, harmonic_term,
    harmonic_witness, jab_time, position_at_time, ExactRational, Grouping, StepPosition,
};

#[test]
fn elapsed_plus_remaining_is_two() {
    for n in 0..=64u64 {
        let remaining = ExactRational::pow2(1 - n as i64);
        assert_eq!(
            elapsed_after(n) + remaining,
            ExactRational::integer(2),
            "n = {n}"
        );
        if n >= 1 {
            assert_eq!(jab_time(n).unwrap(), ExactRational::pow2(1 - n as i64));
        }
    }
}

#[test]
fn position_inverts_schedule() {
    for n in 0..=64u64 {
        assert_eq!(
            position_at_time(&elapsed_after(n)).unwrap(),
            StepPosition::Step(n)
        );
    }
    assert_eq!(
        position_at_time(&ExactRational::integer(2)).unwrap(),
        StepPosition::Omega
    );
}

/// Least N by direct search: the first N whose successor's deviation is
/// already below ε.
fn witness_by_search(eps: &ExactRational) -> u64 {
    (0..).find(|&n| deviation(n + 1) < *eps).unwrap()
}

#[test]
fn epsilon_witness_minimal_for_powers_of_two() {
    for j in 0..=20i64 {
        let eps = ExactRational::pow2(-j);
        let n = epsilon_witness(&eps).unwrap();
        assert_eq!(n, witness_by_search(&eps), "eps = {eps}");
        for m in n + 1..=n + 64 {
            assert!(deviation(m) < eps);
        }
        if n > 0 {
            assert!(deviation(n) >= eps);
        }
    }
}

#[test]
fn cesaro_bound() {
    let half = ExactRational::new(1, 2);
    for n in 1..=10_000u64 {
        let mean = cesaro_mean(n as usize).unwrap();
        // closed form: ⌈n/2⌉ ones among the partial sums
        assert_eq!(mean, ExactRational::new(n.div_ceil(2), n));
        assert!((&mean - &half).abs() <= ExactRational::new(1, 2 * n));
    }
}

#[test]
fn grouping_is_independent_of_length() {
    for pairs in 0..=100 {
        assert_eq!(grouped_sum(pairs, Grouping::LeadingUnpaired), 1);
        assert_eq!(grouped_sum(pairs, Grouping::FullyPaired), 0);
    }
}

fn arb_positive_rational() -> impl Strategy<Value = ExactRational> {
    (1i64..5000, 1i64..5000).prop_map(|(p, q)| ExactRational::new(p, q))
}

proptest! {
    #[test]
    fn epsilon_witness_matches_search(eps in arb_positive_rational()) {
        prop_assert_eq!(epsilon_witness(&eps).unwrap(), witness_by_search(&eps));
    }

    #[test]
    fn position_is_monotone(a in 0i64..=2000, b in 0i64..=2000) {
        let (lo, hi) = (a.min(b), a.max(b));
        let pl = position_at_time(&ExactRational::new(lo, 1000)).unwrap();
        let ph = position_at_time(&ExactRational::new(hi, 1000)).unwrap();
        prop_assert!(pl <= ph);
        if let StepPosition::Step(n) = pl {
            let t = ExactRational::new(lo, 1000);
            prop_assert!(elapsed_after(n) <= t);
            prop_assert!(elapsed_after(n + 1) > t);
        }
    }

    #[test]
    fn harmonic_witness_is_least(eps in arb_positive_rational()) {
        let n: u64 = harmonic_witness(&eps).unwrap().try_into().unwrap();
        prop_assert!(harmonic_term(n + 1).unwrap() < eps);
        if n > 0 {
            prop_assert!(harmonic_term(n).unwrap() >= eps);
        }
    }
}
