//! Property tests for the permutation algebra.

use proptest::prelude::*;
use sylosync::perm::Permutation;

fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #[test]
    fn conjugation_is_a_right_action(
        p in arb_perm(8),
        g in arb_perm(8),
        h in arb_perm(8),
    ) {
        // (p^g)^h = p^(gh)
        let lhs = p.conjugate(&g).conjugate(&h);
        let rhs = p.conjugate(&g.compose(&h));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_associative(
        a in arb_perm(7),
        b in arb_perm(7),
        c in arb_perm(7),
    ) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn inverse_is_two_sided(p in arb_perm(9)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn conjugation_preserves_cycle_type(p in arb_perm(9), g in arb_perm(9)) {
        prop_assert_eq!(p.conjugate(&g).cycle_type(), p.cycle_type());
    }

    #[test]
    fn cycle_notation_round_trips(p in arb_perm(10)) {
        let text = p.to_string();
        let back = Permutation::from_cycles(10, &text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn serde_round_trips(p in arb_perm(6)) {
        let json = serde_json::to_string(&p).unwrap();
        let back: Permutation = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn order_annihilates(p in arb_perm(8)) {
        let ord = p.order();
        let mut acc = Permutation::identity(8);
        for _ in 0..ord {
            acc = acc.compose(&p);
        }
        prop_assert!(acc.is_identity());
        // and no smaller positive power does, for the primes dividing ord
        for d in 2..=ord {
            if ord % d == 0 {
                let mut partial = Permutation::identity(8);
                for _ in 0..(ord / d) {
                    partial = partial.compose(&p);
                }
                prop_assert!(ord / d == 0 || !partial.is_identity() || ord / d == ord);
            }
        }
    }

    #[test]
    fn parity_is_a_homomorphism(a in arb_perm(8), b in arb_perm(8)) {
        prop_assert_eq!(a.compose(&b).is_even(), a.is_even() == b.is_even());
    }
}
