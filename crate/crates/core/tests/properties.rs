//! Randomized algebraic laws on small ideals.

use proptest::prelude::*;

use monofilt_core::{integral_closure, newton, ExponentVector, MonomialIdeal};

fn arb_ideal(dim: usize, max_exp: u64) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, dim), 1..=5)
        .prop_filter_map("nonzero proper ideal", move |gens| {
            let gens: Vec<ExponentVector> = gens
                .into_iter()
                .filter(|g| g.iter().any(|&e| e > 0))
                .map(ExponentVector::new)
                .collect();
            if gens.is_empty() {
                return None;
            }
            MonomialIdeal::minimalize(gens, dim).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimalize_is_idempotent(i in arb_ideal(3, 5)) {
        let again = MonomialIdeal::minimalize(i.gens().iter().cloned(), 3).unwrap();
        prop_assert_eq!(again, i);
    }

    #[test]
    fn product_commutes(i in arb_ideal(2, 4), j in arb_ideal(2, 4)) {
        prop_assert_eq!(i.product(&j).unwrap(), j.product(&i).unwrap());
    }

    #[test]
    fn powers_are_additive(i in arb_ideal(2, 4), a in 1u64..4, b in 1u64..4) {
        let lhs = i.power(a).unwrap().product(&i.power(b).unwrap()).unwrap();
        prop_assert_eq!(lhs, i.power(a + b).unwrap());
    }

    #[test]
    fn colon_membership_matches_definition(i in arb_ideal(2, 4), j in arb_ideal(2, 4)) {
        let colon = i.colon(&j).unwrap();
        // Every colon generator multiplies all of J into I; and no
        // monomial strictly below a colon generator does.
        for g in colon.gens() {
            for h in j.gens() {
                prop_assert!(i.contains(&g.add(h).unwrap()).unwrap());
            }
        }
        // Spot-check the definition over a small box.
        for a in 0..6u64 {
            for b in 0..6u64 {
                let p = ExponentVector::new(vec![a, b]);
                let by_def = j.gens().iter().all(|h| i.contains(&p.add(h).unwrap()).unwrap());
                prop_assert_eq!(colon.contains(&p).unwrap(), by_def);
            }
        }
    }

    #[test]
    fn decomposition_intersects_back(i in arb_ideal(2, 4)) {
        let parts = i.irreducible_decomposition().unwrap();
        let mut meet = MonomialIdeal::unit(2);
        for part in &parts {
            meet = meet.intersect(part).unwrap();
        }
        prop_assert_eq!(meet, i);
    }

    #[test]
    fn closure_contains_and_is_idempotent(i in arb_ideal(2, 4)) {
        let closed = integral_closure(&i).unwrap();
        prop_assert!(i.is_subideal_of(&closed).unwrap());
        prop_assert_eq!(integral_closure(&closed).unwrap(), closed.clone());
        // Degrees never drop below the smallest generator degree.
        let min_deg = i.gens().iter().map(|g| g.total_degree().unwrap()).min().unwrap();
        for g in closed.gens() {
            prop_assert!(g.total_degree().unwrap() >= min_deg);
        }
    }

    #[test]
    fn closure_power_matches_power_closure(i in arb_ideal(2, 3), n in 1u64..4) {
        let scaled = newton::integral_closure_power(&i, n).unwrap();
        let direct = integral_closure(&i.power(n).unwrap()).unwrap();
        prop_assert_eq!(scaled, direct);
    }
}
