use proptest::prelude::*;
use twogroups::census::{cyclic_census, cyclic_census_bruteforce};
use twogroups::formulas;
use twogroups::group::check_axioms;
use twogroups::shape::AbelianShape;
use twogroups::{AlphaValue, Descriptor};

fn leaf() -> impl Strategy<Value = Descriptor> {
    prop_oneof![
        (1u64..100).prop_map(Descriptor::Cyclic),
        (2u64..20, 1u32..5).prop_map(|(m, k)| Descriptor::CyclicPower(m, k)),
        (2u64..40).prop_map(|h| Descriptor::Dihedral(2 * h)),
        (3u32..9).prop_map(|n| Descriptor::Quaternion(1 << n)),
        (4u32..9).prop_map(|n| Descriptor::QuasiDihedral(1 << n)),
        (4u32..9).prop_map(|n| Descriptor::Modular(1 << n)),
        (1u32..4).prop_map(|r| Descriptor::ExtraspecialPlus(1 << (2 * r + 1))),
        (1u32..4).prop_map(|r| Descriptor::ExtraspecialMinus(1 << (2 * r + 1))),
        (1u32..4).prop_map(|r| Descriptor::AlmostExtraspecial(1 << (2 * r + 2))),
    ]
}

fn descriptor() -> impl Strategy<Value = Descriptor> {
    leaf().prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            inner
                .clone()
                .prop_map(|d| Descriptor::GenDihedral(Box::new(d))),
            (inner.clone(), proptest::option::of(0usize..8))
                .prop_map(|(d, z)| Descriptor::GenDicyclic(Box::new(d), z)),
            proptest::collection::vec(inner.clone(), 2..4).prop_map(Descriptor::Direct),
            proptest::collection::vec(inner, 2..4).prop_map(Descriptor::Central),
        ]
    })
}

fn small_two_group() -> impl Strategy<Value = Descriptor> {
    prop_oneof![
        (1u32..6).prop_map(|n| Descriptor::Cyclic(1 << n)),
        (1u32..4).prop_map(|k| Descriptor::CyclicPower(2, k)),
        (2u32..6).prop_map(|n| Descriptor::Dihedral(1 << n)),
        (3u32..6).prop_map(|n| Descriptor::Quaternion(1 << n)),
        (4u32..6).prop_map(|n| Descriptor::QuasiDihedral(1 << n)),
        (4u32..6).prop_map(|n| Descriptor::Modular(1 << n)),
        Just(Descriptor::AlmostExtraspecial(16)),
    ]
}

fn abelian_shape() -> impl Strategy<Value = AbelianShape> {
    (
        prop_oneof![Just(2u64), Just(3), Just(5)],
        proptest::collection::vec(1u32..4, 1..5),
    )
        .prop_filter("order within the enumeration cap", |(p, parts)| {
            (*p as u128).pow(parts.iter().sum()) <= 1 << 10
        })
        .prop_map(|(p, mut parts)| {
            parts.sort();
            AbelianShape::new(p, parts).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn descriptor_round_trip(d in descriptor()) {
        let text = d.to_string();
        let back: Descriptor = text.parse().unwrap();
        prop_assert_eq!(back.canonical(), d.canonical());
        prop_assert_eq!(back.canonical_string(), d.canonical_string());
        prop_assert_eq!(back.predicted_order(), d.predicted_order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn abelian_closed_form_matches_census(shape in abelian_shape()) {
        let g = shape.build().unwrap();
        let brute = cyclic_census_bruteforce(&g).unwrap();
        prop_assert_eq!(formulas::alpha_abelian(&shape).unwrap(), brute.alpha.clone());
        prop_assert_eq!(cyclic_census(&g).unwrap(), brute);
    }

    #[test]
    fn products_of_small_groups_are_groups(a in small_two_group(), b in small_two_group()) {
        let d = Descriptor::Direct(vec![a.clone(), b.clone()]);
        prop_assume!(d.predicted_order() <= 256);
        let g = d.build().unwrap();
        prop_assert_eq!(g.order() as u128, d.predicted_order());
        if g.order() <= 64 {
            prop_assert!(check_axioms(&g).is_ok());
        }
        let fast = cyclic_census(&g).unwrap();
        prop_assert_eq!(&fast, &cyclic_census_bruteforce(&g).unwrap());
        // an elementary abelian factor never changes the ratio
        let ga = cyclic_census(&a.build().unwrap()).unwrap().alpha;
        let gb = cyclic_census(&b.build().unwrap()).unwrap().alpha;
        if gb.is_one() {
            prop_assert_eq!(&fast.alpha, &ga);
        }
        prop_assert!(fast.alpha <= AlphaValue::one());
    }

    #[test]
    fn central_products_are_groups_with_consistent_census(a in small_two_group(), b in small_two_group()) {
        let d = Descriptor::Central(vec![a, b]);
        prop_assume!(d.predicted_order() <= 128);
        let g = match d.build() {
            Ok(g) => g,
            Err(_) => return Ok(()), // a factor without a central involution
        };
        prop_assert_eq!(g.order() as u128, d.predicted_order());
        if g.order() <= 32 {
            prop_assert!(check_axioms(&g).is_ok());
        }
        prop_assert_eq!(cyclic_census(&g).unwrap(), cyclic_census_bruteforce(&g).unwrap());
    }
}
