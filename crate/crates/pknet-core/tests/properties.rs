//! Randomized algebra laws. Sizes stay small — the point is the law, the
//! exhaustive batteries live elsewhere.

use std::sync::Arc;

use proptest::prelude::*;

use pknet_core::category::PosetCategory;
use pknet_core::functor_groupoid::{homset, ChordClass};
use pknet_core::group::{ti_group, FiniteGroup, Permutation, TiElement, WreathElement};
use pknet_core::music::pitch_classes;
use pknet_core::net::{solve_transport, PKNet};

fn ti_element() -> impl Strategy<Value = TiElement> {
    (0..24usize).prop_map(TiElement::from_index)
}

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    let orders: usize = (1..=degree).product();
    (0..orders).prop_map(move |rank| Permutation::from_rank(degree, rank))
}

fn wreath_element(z_order: usize, copies: usize) -> impl Strategy<Value = WreathElement> {
    let size = z_order.pow(copies as u32) * (1..=copies).product::<usize>();
    (0..size).prop_map(move |ix| WreathElement::from_canonical_index(ix, z_order, copies))
}

proptest! {
    #[test]
    fn ti_composition_matches_pointwise_application(
        a in ti_element(), b in ti_element(), x in 0u8..12,
    ) {
        prop_assert_eq!(a.compose(b).apply(x), a.apply(b.apply(x)));
    }

    #[test]
    fn ti_inverses_cancel(a in ti_element(), x in 0u8..12) {
        prop_assert_eq!(a.inverse().apply(a.apply(x)), x);
        prop_assert_eq!(a.compose(a.inverse()).index(), TiElement::transposition(0).index());
    }

    #[test]
    fn ti_round_trips_through_its_label(a in ti_element()) {
        prop_assert_eq!(TiElement::parse(&a.to_string()).unwrap().index(), a.index());
    }

    #[test]
    fn permutation_composition_is_associative(
        a in permutation(5), b in permutation(5), c in permutation(5),
    ) {
        let left = a.compose(&b).compose(&c);
        let right = a.compose(&b.compose(&c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn permutation_inverse_cancels(a in permutation(5), x in 0usize..5) {
        prop_assert_eq!(a.inverse().apply(a.apply(x)), x);
    }

    #[test]
    fn permutation_rank_round_trips(a in permutation(5)) {
        prop_assert_eq!(Permutation::from_rank(5, a.rank()), a);
    }

    #[test]
    fn wreath_multiplication_is_associative(
        a in wreath_element(4, 3), b in wreath_element(4, 3), c in wreath_element(4, 3),
    ) {
        let z = FiniteGroup::cyclic(4).unwrap();
        let left = a.multiply(&b, &z).multiply(&c, &z);
        let right = a.multiply(&b.multiply(&c, &z), &z);
        prop_assert_eq!(left.canonical_index(4), right.canonical_index(4));
    }

    #[test]
    fn wreath_inverses_cancel(a in wreath_element(3, 3)) {
        let z = FiniteGroup::cyclic(3).unwrap();
        let identity = WreathElement::identity(&z, 3);
        prop_assert_eq!(
            a.multiply(&a.inverse(&z), &z).canonical_index(3),
            identity.canonical_index(3)
        );
    }

    #[test]
    fn wreath_canonical_index_round_trips(a in wreath_element(5, 2)) {
        let back = WreathElement::from_canonical_index(a.canonical_index(5), 5, 2);
        prop_assert_eq!(back.canonical_index(5), a.canonical_index(5));
    }

    #[test]
    fn class_morphism_composition_is_associative(
        p in 0usize..24, q in 0usize..24, r in 0usize..24,
    ) {
        let delta = Arc::clone(PosetCategory::span().category());
        let group = Arc::new(ti_group());
        let u = Arc::new(ChordClass::from_labels(
            "U", Arc::clone(&delta), Arc::clone(&group), &[("f", "T4"), ("g", "T7")],
        ).unwrap());
        let v = Arc::new(ChordClass::from_labels(
            "V", delta, group, &[("f", "T2"), ("g", "T5")],
        ).unwrap());
        // U → V → U → U, composed both ways around.
        let first = &homset(&u, &v).unwrap()[p];
        let second = &homset(&v, &u).unwrap()[q];
        let third = &homset(&u, &u).unwrap()[r];
        let left = third.compose(&second.compose(first).unwrap()).unwrap();
        let right = third.compose(second).unwrap().compose(first).unwrap();
        prop_assert_eq!(left.components(), right.components());
    }

    #[test]
    fn transports_found_by_search_really_transport(s in 0usize..12, d in 0usize..12) {
        let delta = Arc::clone(PosetCategory::span().category());
        let group = Arc::new(ti_group());
        let u = Arc::new(ChordClass::from_labels(
            "U", delta, group, &[("f", "T4"), ("g", "T7")],
        ).unwrap());
        let context = pitch_classes();
        let from = PKNet::singleton(
            Arc::clone(&context), Arc::clone(&u),
            &[s, (s + 4) % 12, (s + 7) % 12],
        ).unwrap();
        let to = PKNet::singleton(
            context, u,
            &[d, (d + 4) % 12, (d + 7) % 12],
        ).unwrap();
        let transports = solve_transport(&from, &to).unwrap();
        prop_assert!(!transports.is_empty());
        for eta in &transports {
            prop_assert!(from.act(eta).unwrap() == to);
        }
    }
}
