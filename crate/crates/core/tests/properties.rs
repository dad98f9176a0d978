//! Property tests for the invariants that cut across modules.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use rpsent_core::belief::{
    enumerate_pes, parse_document, serialize_bpa, serialize_pmf, Bpa, Frame, MassAssignment,
    PermutationEvent, Pmf, SubsetEvent, SumPolicy,
};
use rpsent_core::combinatorics::{factorial, permutations, s_envelope, sa};
use rpsent_core::log2::log2_of;

fn rational(numer: u64, denom: u64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom.max(1)))
}

/// Random positive big integer with up to `words * 64` bits.
fn arb_biguint(words: usize) -> impl Strategy<Value = BigUint> {
    prop::collection::vec(any::<u64>(), 1..=words)
        .prop_map(|digits| BigUint::new(digits.iter().flat_map(|d| [(d & 0xffff_ffff) as u32, (d >> 32) as u32]).collect()))
        .prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn log2_is_additive_over_products(x in arb_biguint(6), y in arb_biguint(6)) {
        let lx = log2_of(&x, 12).unwrap();
        let ly = log2_of(&y, 12).unwrap();
        let lxy = log2_of(&(&x * &y), 12).unwrap();
        // each term is certified to 1e-12 absolute
        prop_assert!((lxy - (lx + ly)).abs() <= 2e-12);
    }

    #[test]
    fn permutation_recurrence(n in 1u32..60, k_seed in 0u32..60) {
        let k = 1 + k_seed % n;
        let expected = permutations(n, k - 1).unwrap() * BigUint::from(n - k + 1);
        prop_assert_eq!(permutations(n, k).unwrap(), expected);
    }

    #[test]
    fn envelope_rearrangement(n in 1u32..50) {
        let mut alt = BigUint::zero();
        for u in 1..=n {
            alt += permutations(n, u).unwrap() * sa(u);
        }
        alt = alt - (sa(n) - BigUint::one());
        prop_assert_eq!(s_envelope(n), alt);
    }

    #[test]
    fn bpa_documents_round_trip(
        frame_size in 1usize..5,
        picks in prop::collection::vec((0u8..32, 1u64..50, 1u64..50), 1..6),
    ) {
        let frame = Frame::with_size(frame_size).unwrap();
        let all_events = rpsent_core::belief::enumerate_power_set(&frame).unwrap();
        let mut masses: BTreeMap<SubsetEvent, BigRational> = BTreeMap::new();
        for (which, p, q) in picks {
            let event = all_events[1 + (which as usize) % (all_events.len() - 1)].clone();
            masses.insert(event, rational(p, q));
        }
        // normalize to unit sum so the document is canonical and valid
        let total: BigRational = masses.values().sum();
        for mass in masses.values_mut() {
            *mass /= total.clone();
        }
        let bpa = Bpa::new(frame, masses, SumPolicy::Exact);
        prop_assert!(bpa.validate().is_valid());

        let text = serialize_bpa(&bpa);
        let MassAssignment::Bpa(parsed) = parse_document(&text).unwrap() else {
            return Err(TestCaseError::fail("expected a bpa"));
        };
        prop_assert_eq!(parsed, bpa);
    }

    #[test]
    fn pmf_documents_round_trip_and_projection_preserves_mass(
        frame_size in 1usize..4,
        picks in prop::collection::vec((0u16..4096, 1u64..50, 1u64..50), 1..8),
    ) {
        let frame = Frame::with_size(frame_size).unwrap();
        let all_events = enumerate_pes(&frame).unwrap();
        let mut masses: BTreeMap<PermutationEvent, BigRational> = BTreeMap::new();
        for (which, p, q) in picks {
            let event = all_events[1 + (which as usize) % (all_events.len() - 1)].clone();
            masses.insert(event, rational(p, q));
        }
        let total: BigRational = masses.values().sum();
        for mass in masses.values_mut() {
            *mass /= total.clone();
        }
        let pmf = Pmf::new(frame, masses, SumPolicy::Exact);
        prop_assert!(pmf.validate().is_valid());

        let text = serialize_pmf(&pmf);
        let MassAssignment::Pmf(parsed) = parse_document(&text).unwrap() else {
            return Err(TestCaseError::fail("expected a pmf"));
        };
        prop_assert_eq!(&parsed, &pmf);

        // order collapse keeps the total exactly 1
        let bpa = pmf.project_to_bpa().unwrap();
        let total: BigRational = bpa.masses.values().sum();
        prop_assert!(total.is_one());
    }

    #[test]
    fn factorial_ratio_is_a_permutation_count(n in 0u32..80, k_seed in 0u32..80) {
        let k = k_seed % (n + 1);
        prop_assert_eq!(
            permutations(n, k).unwrap(),
            factorial(n) / factorial(n - k)
        );
    }
}
