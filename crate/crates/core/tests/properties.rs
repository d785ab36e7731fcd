use permsort::patterns::{contains_barred, contains_classical};
use permsort::polyalg::{default_width, real_roots};
use permsort::trees::{duality_f, g_map, tree_of};
use permsort::zigzag::{find_uninterrupted_zigzag, find_zigzag, max_zigzag_degree};
use permsort::{IntPolynomial, PatternSpec, Permutation, Sorter};
use proptest::prelude::*;

fn perm(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

proptest! {
    #[test]
    fn text_round_trip(pi in perm(14)) {
        let back: Permutation = pi.to_string().parse().unwrap();
        prop_assert_eq!(back, pi.clone());
        let json = serde_json::to_string(&pi).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), pi);
    }

    #[test]
    fn revstack_is_stack_of_reverse(pi in perm(14)) {
        prop_assert_eq!(pi.revstack_sort(), pi.reverse().stack_sort());
        prop_assert_eq!(pi.stack_sort(), pi.stack_sort_sim());
        let d = pi.deg(Sorter::Revstack).value();
        prop_assert!(pi.iterate_revstack(d).is_identity());
        prop_assert!(d == 0 || !pi.iterate_revstack(d - 1).is_identity());
        prop_assert!(d < pi.len().max(1));
    }

    #[test]
    fn traversals_give_both_sorts(pi in perm(14)) {
        let tree = tree_of(&pi).unwrap();
        prop_assert_eq!(tree.in_order(), pi.clone());
        prop_assert_eq!(tree.post_order(), pi.stack_sort());
        prop_assert_eq!(tree.rpostorder(), pi.revstack_sort());
        prop_assert_eq!(tree.right_edges(), pi.descents().unwrap());
    }

    #[test]
    fn duality_complements_descents(pi in perm(14)) {
        let f = duality_f(&pi);
        prop_assert_eq!(duality_f(&f), pi.clone());
        prop_assert_eq!(pi.descents().unwrap() + f.descents().unwrap() + 1, pi.len());
        prop_assert_eq!(f.stack_sort(), pi.stack_sort());
        prop_assert_eq!(f.revstack_sort(), pi.revstack_sort());
        prop_assert_eq!(g_map(&pi), duality_f(&pi.reverse()));
    }

    #[test]
    fn no_zigzag_bounds_degree(pi in perm(12)) {
        let d = pi.deg(Sorter::Revstack).value();
        let next = max_zigzag_degree(&pi).map_or(0, |m| m + 1);
        prop_assert!(find_zigzag(&pi, next).is_none());
        prop_assert!(d <= next);
        if let Some(z) = find_uninterrupted_zigzag(&pi, 1) {
            prop_assert!(!z.interrupted);
            prop_assert!(d >= 1);
        }
    }

    #[test]
    fn one_pass_iff_132_free(pi in perm(12)) {
        let p132 = PatternSpec::classical(vec![1, 3, 2]).unwrap();
        let avoids = contains_classical(&pi, &p132).unwrap().is_none();
        prop_assert_eq!(pi.deg(Sorter::Revstack).value() <= 1, avoids);
        prop_assert_eq!(contains_barred(&pi, &p132).is_none(), avoids);
    }

    #[test]
    fn roots_of_products_of_linear_factors(roots in prop::collection::vec(0i64..40, 1..7)) {
        let p = roots.iter().fold(IntPolynomial::one(), |acc, &r| &acc * &IntPolynomial::from_i64s(&[r, 1]));
        let rep = real_roots(&p, &default_width());
        prop_assert!(rep.all_real && rep.nonpositive);
        let mut want: Vec<i64> = roots.iter().map(|r| -r).collect();
        want.sort_unstable();
        want.dedup();
        let got: Vec<f64> = rep.roots.iter().map(|r| r.approx()).collect();
        prop_assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - *w as f64).abs() < 1e-6);
        }
        let total: usize = rep.roots.iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(total, roots.len());
    }
}
