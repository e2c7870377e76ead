use proptest::prelude::*;
use qtsg_core::{unify, FeatureSet};

fn feature_set() -> impl Strategy<Value = FeatureSet> {
    prop::collection::btree_map(
        prop::sample::select(vec!["case", "num", "def", "acc"]),
        prop::sample::select(vec!["1", "2", "+", "-"]),
        0..4,
    )
    .prop_map(|m| FeatureSet::from_pairs(m.iter().map(|(a, v)| (*a, *v))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn commutative(a in feature_set(), b in feature_set()) {
        prop_assert_eq!(unify(&a, &b).ok(), unify(&b, &a).ok());
    }

    #[test]
    fn associative(a in feature_set(), b in feature_set(), c in feature_set()) {
        let left = unify(&a, &b).and_then(|ab| unify(&ab, &c)).ok();
        let right = unify(&b, &c).and_then(|bc| unify(&a, &bc)).ok();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn idempotent(a in feature_set()) {
        prop_assert_eq!(unify(&a, &a), Ok(a.clone()));
    }

    #[test]
    fn empty_is_identity(a in feature_set()) {
        prop_assert_eq!(unify(&a, &FeatureSet::new()), Ok(a.clone()));
        prop_assert_eq!(unify(&FeatureSet::new(), &a), Ok(a.clone()));
    }

    #[test]
    fn result_extends_both(a in feature_set(), b in feature_set()) {
        if let Ok(u) = unify(&a, &b) {
            for (k, v) in a.iter().chain(b.iter()) {
                prop_assert_eq!(u.get(k), Some(v));
            }
            prop_assert!(a.compatible(&b));
        } else {
            prop_assert!(!a.compatible(&b));
        }
    }
}
