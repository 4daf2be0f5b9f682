mod common;

use proptest::prelude::*;
use wm_core::setcore::{correlation, normality_test, word_frequency, NormalityParams};
use wm_core::{IntegerSet, Seed};

fn set_from_bits(bits: &[bool]) -> IntegerSet {
    IntegerSet::from_predicate(bits.len(), |n| bits[n - 1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bit_parallel_matches_word_frequencies(
        bits in proptest::collection::vec(any::<bool>(), 20..1000),
        raw in proptest::collection::btree_set(1usize..10, 0..4),
    ) {
        let shifts: Vec<usize> = raw.into_iter().collect();
        let a = set_from_bits(&bits);
        let max = shifts.last().copied().unwrap_or(0);
        prop_assume!(bits.len() > max);
        let n = bits.len() - max;
        let fast = correlation(&a, &shifts, n).unwrap().value;
        let via_sign = a.char_seq().correlation(&shifts, n).unwrap();
        let via_words = common::correlation_from_words(&a, &shifts, n);
        prop_assert_eq!(&fast, &via_words);
        prop_assert_eq!(&via_sign, &via_words);
    }

    #[test]
    fn word_frequencies_sum_to_one(bits in proptest::collection::vec(any::<bool>(), 10..300), len in 1usize..4) {
        let a = set_from_bits(&bits);
        let n = bits.len() - len;
        let mut total = num_rational::BigRational::from_integer(0.into());
        for w in 0..1u32 << len {
            let word: Vec<bool> = (0..len).map(|j| w >> j & 1 == 1).collect();
            total += word_frequency(&a, &word, n).unwrap();
        }
        prop_assert_eq!(total, num_rational::BigRational::from_integer(1.into()));
    }
}

#[test]
fn fair_coin_sets_pass_and_periodic_sets_fail() {
    let n = 200_000;
    let coin = wm_core::generators::fair_coin(n + 8, Seed::new(21));
    assert!(normality_test(&coin, &NormalityParams::new(3, 8, n)).unwrap().pass);
    let periodic = wm_core::generators::periodic_set(n + 8, 3, &[0]).unwrap();
    let report = normality_test(&periodic, &NormalityParams::new(3, 8, n)).unwrap();
    assert!(!report.pass);
    assert!(report.failures > 0);
}
