mod common;

use common::*;
use fieldmaps::map::interpolate;
use fieldmaps::spectra::{DifferentialProfile, PreimageProfile};
use fieldmaps::theorems::{self, Status};
use fieldmaps::walsh::WalshProfile;
use fieldmaps::FieldSpec;
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![(Just(2u32), 1u32..=6), (Just(3u32), 1u32..=3), (Just(5u32), 1u32..=2)]
}

fn map_strategy() -> impl Strategy<Value = fieldmaps::MapTable> {
    field_strategy().prop_flat_map(|(p, n)| {
        let field = FieldSpec::build(p, n, None).unwrap();
        let q = field.order();
        proptest::collection::vec(any::<u32>(), q).prop_map(move |v| random_table(&field, &v))
    })
}

fn binary_map_strategy(max_n: u32) -> impl Strategy<Value = fieldmaps::MapTable> {
    (1..=max_n).prop_flat_map(|n| {
        let field = bin(n);
        proptest::collection::vec(any::<u32>(), 1usize << n).prop_map(move |v| random_table(&field, &v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn preimage_profile_matches_counting(f in map_strategy()) {
        let pp = PreimageProfile::new(&f);
        prop_assert!(pp.identities_hold());
        prop_assert_eq!(pp.image_size(), naive_image(&f));
        prop_assert_eq!(pp.collisions(), naive_collisions(&f));
        prop_assert_eq!(pp.m_counts().iter().filter(|(_, &c)| c > 0).map(|(&r, &c)| (r, c)).collect::<Vec<_>>(),
            naive_m(&f).into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn streamed_ddt_matches_naive(f in map_strategy()) {
        prop_assert_eq!(DifferentialProfile::new(&f).uniformity(), naive_uniformity(&f));
    }

    #[test]
    fn interpolation_round_trips(f in map_strategy()) {
        prop_assert_eq!(interpolate(&f).to_table(), f);
    }

    #[test]
    fn fwht_matches_definition(f in binary_map_strategy(5)) {
        let wp = WalshProfile::full(&f).unwrap();
        let naive = naive_walsh(&f);
        for b in 1..f.field().order() as u32 {
            prop_assert_eq!(fieldmaps::walsh::component_spectrum(&f, b).unwrap(), naive[b as usize - 1].clone());
            prop_assert_eq!(wp.w_zero(b), naive[b as usize - 1][0]);
        }
        let zero = WalshProfile::zero_only(&f).unwrap();
        prop_assert_eq!(zero.w_zero_all(), wp.w_zero_all());
    }

    #[test]
    fn no_theorem_fails_on_random_maps(f in map_strategy()) {
        for r in theorems::run_all(&f).unwrap() {
            prop_assert!(!r.failed(), "{:?}", r);
        }
    }

    #[test]
    fn profiles_invariant_under_shifts(f in binary_map_strategy(5), c in any::<u32>(), d in any::<u32>()) {
        let q = f.field().order() as u32;
        let g = f.shift_normalize(c % q, d % q);
        let (pf, pg) = (PreimageProfile::new(&f), PreimageProfile::new(&g));
        prop_assert_eq!(pf.m_counts(), pg.m_counts());
        prop_assert_eq!(pf.collisions(), pg.collisions());
        prop_assert_eq!(DifferentialProfile::new(&f).uniformity(), DifferentialProfile::new(&g).uniformity());
        let (wf, wg) = (WalshProfile::full(&f).unwrap(), WalshProfile::full(&g).unwrap());
        prop_assert_eq!(wf.spectrum().unwrap(), wg.spectrum().unwrap());
    }

    #[test]
    fn upper_bounds_are_sound_on_random_maps(f in binary_map_strategy(6)) {
        let ctx = theorems::Context::new(&f, &Default::default()).unwrap();
        for r in theorems::run_suite(&ctx, "ub.*") {
            if r.status == Status::Pass || r.status == Status::Fail {
                prop_assert!(r.witnesses["bound"].as_u64().unwrap() >= r.witnesses["image_size"].as_u64().unwrap());
            }
        }
    }
}

#[test]
fn monomial_gcd_corollary_up_to_ten() {
    for n in 2..=10u32 {
        let field = bin(n);
        let q = field.order() as u64;
        let expected = if n % 2 == 0 { 3 } else { 1 };
        for k in fieldmaps::search::apn_monomial_exponents(&field) {
            assert_eq!(gcd(k, q - 1), expected, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn odd_minimum_not_attained_by_catalog() {
    use fieldmaps::families::FamilySpec;
    for (spec, n) in [(FamilySpec::Min7, 7u32), (FamilySpec::Min11, 11)] {
        let f = spec.build().unwrap().0.into_univariate().unwrap();
        let pp = PreimageProfile::new(&f);
        assert!(pp.image_size() > ((1u64 << n) + 1) / 3);
    }
}
