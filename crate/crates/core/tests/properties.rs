//! Cross-module properties tying the closed-form walk machinery to the
//! scan-based reference path and to the topology layer built on top.

use std::collections::BTreeSet;

use ordwalk_core::csequence::{fund_seq, min_above};
use ordwalk_core::ladder::{pair, unpair};
use ordwalk_core::naive;
use ordwalk_core::topology::{
    alpha1_merge, frechet_extract, gdelta_separate, member, member_descriptor, BasicOpen,
    NeighborhoodDescriptor, Point,
};
use ordwalk_core::walks::{rho2, stabilizer, trace};
use ordwalk_core::Ordinal;
use proptest::prelude::*;

const SCAN_GUARD: u64 = 1_000_000;

fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
    let exp = prop_oneof![
        (0u64..4).prop_map(Ordinal::from_nat),
        (0u64..3).prop_map(|n| Ordinal::omega().add(&Ordinal::from_nat(n))),
    ];
    proptest::collection::vec((exp, 1u64..6), 0..5).prop_map(|parts| {
        parts.into_iter().fold(Ordinal::zero(), |acc, (e, c)| {
            acc.add(&Ordinal::omega_pow_mul(e, c))
        })
    })
}

/// Nearest limit at or above the sample; never zero.
fn arb_limit() -> impl Strategy<Value = Ordinal> {
    arb_ordinal().prop_map(|o| {
        let stripped = o
            .terms()
            .iter()
            .filter(|(e, _)| !e.is_zero())
            .fold(Ordinal::zero(), |acc, (e, c)| {
                acc.add(&Ordinal::omega_pow_mul(e.clone(), *c))
            });
        if stripped.is_zero() {
            Ordinal::omega()
        } else {
            stripped
        }
    })
}

fn arb_pair() -> impl Strategy<Value = (Ordinal, Ordinal)> {
    (arb_ordinal(), arb_ordinal()).prop_map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(192)
    })]

    #[test]
    fn closed_form_min_above_matches_the_scan((alpha, beta) in arb_pair()) {
        prop_assume!(alpha < beta);
        let fast = min_above(&beta, &alpha).unwrap();
        let slow = naive::min_above(&beta, &alpha, SCAN_GUARD).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn rho2_matches_the_reference_evaluator((alpha, beta) in arb_pair()) {
        prop_assert_eq!(rho2(&alpha, &beta).unwrap(), naive::rho2(&alpha, &beta).unwrap());
    }

    #[test]
    fn walks_satisfy_the_step_recursion((alpha, beta) in arb_pair()) {
        prop_assume!(alpha < beta);
        let step = min_above(&beta, &alpha).unwrap();
        let total = rho2(&alpha, &beta).unwrap();
        if step == alpha {
            prop_assert_eq!(total, 1);
        } else {
            prop_assert_eq!(total, 1 + rho2(&alpha, &step).unwrap());
        }
    }

    #[test]
    fn traces_descend_strictly_between_their_endpoints((alpha, beta) in arb_pair()) {
        prop_assume!(alpha < beta);
        let walk = trace(&alpha, &beta).unwrap();
        let points = walk.points();
        prop_assert_eq!(points.first().unwrap(), &beta);
        prop_assert_eq!(points.last().unwrap(), &alpha);
        prop_assert_eq!(points.len() as u64, walk.rho2() + 1);
        for window in points.windows(2) {
            prop_assert!(window[1] < window[0]);
        }
    }

    #[test]
    fn stabilizers_pin_the_walk_prefix((alpha, beta) in arb_pair()) {
        prop_assume!(alpha < beta && !alpha.is_zero());
        let eta = stabilizer(&alpha, &beta).unwrap();
        prop_assert!(eta < alpha);
        // One probe strictly between eta and alpha, when the gap is open.
        let xi = eta.successor();
        if xi < alpha {
            prop_assert!(rho2(&xi, &beta).unwrap() >= rho2(&alpha, &beta).unwrap());
        }
    }

    #[test]
    fn basic_opens_shrink_as_the_level_rises(
        anchor in arb_limit(),
        xi in arb_ordinal(),
        level in 0u64..6,
    ) {
        let tight = BasicOpen::new(anchor.clone(), level + 1).unwrap();
        let loose = BasicOpen::new(anchor, level).unwrap();
        let point = Point::Ord(xi);
        if member(&point, &tight).unwrap() {
            prop_assert!(member(&point, &loose).unwrap());
        }
        prop_assert!(member(&Point::Apex, &tight).unwrap());
    }

    #[test]
    fn descriptor_union_agrees_with_entrywise_membership_below_anchors(
        anchors in proptest::collection::btree_map(arb_limit(), 0u64..4, 1..4),
        xi in arb_ordinal(),
    ) {
        let descriptor = NeighborhoodDescriptor::new(anchors.into_iter().collect()).unwrap();
        let point = Point::Ord(xi.clone());
        // Only the below-anchor part of each entry contributes to the union.
        let mut expected = false;
        for open in descriptor.entries() {
            if xi < *open.anchor() {
                expected |= member(&point, open).unwrap();
            }
        }
        prop_assert_eq!(member_descriptor(&point, &descriptor).unwrap(), expected);
    }

    #[test]
    fn separation_certificates_are_exact(
        set in proptest::collection::btree_set(arb_ordinal(), 1..6),
    ) {
        let separation = gdelta_separate(&set).unwrap();
        for xi in &set {
            prop_assert!(*xi < separation.beta);
            let level = separation.certificate[xi];
            let point = Point::Ord(xi.clone());
            prop_assert!(!member(&point, &separation.open(level)).unwrap());
            if level > 0 {
                prop_assert!(member(&point, &separation.open(level - 1)).unwrap());
            }
            prop_assert!(member(&Point::Apex, &separation.open(level)).unwrap());
        }
    }

    #[test]
    fn extraction_picks_distinct_points_clearing_each_level(
        pool in proptest::collection::btree_set(arb_ordinal(), 0..8),
        anchor in arb_limit(),
        max_index in 0u64..5,
    ) {
        let picked = frechet_extract(&pool, &anchor, max_index).unwrap();
        prop_assert!(picked.len() as u64 <= max_index + 1);
        let distinct: BTreeSet<_> = picked.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), picked.len());
        for (n, xi) in picked.iter().enumerate() {
            prop_assert!(pool.contains(xi));
            prop_assert!(*xi < anchor);
            prop_assert!(rho2(xi, &anchor).unwrap() >= n as u64);
        }
    }

    #[test]
    fn merge_output_is_squeezed_between_the_dominance_bounds(
        families in proptest::collection::vec(
            proptest::collection::btree_set(arb_ordinal(), 0..5),
            0..4,
        ),
        anchor in arb_limit(),
    ) {
        let mut trimmed = families;
        for family in &mut trimmed {
            family.retain(|xi| xi < &anchor);
        }
        let merged = alpha1_merge(&trimmed, &anchor).unwrap();
        for xi in &merged {
            prop_assert!(trimmed.iter().any(|family| family.contains(xi)));
        }
        for (n, family) in trimmed.iter().enumerate() {
            for xi in family {
                if rho2(xi, &anchor).unwrap() > n as u64 {
                    prop_assert!(merged.contains(xi));
                }
            }
        }
    }

    #[test]
    fn pairing_is_a_bijection_on_small_values(a in 0u64..512, b in 0u64..512) {
        let n = pair(a, b).unwrap();
        prop_assert_eq!(unpair(n), (a, b));
    }

    #[test]
    fn ladders_feed_the_min_above_closed_form(beta in arb_limit(), i in 0u64..5) {
        // Walk steps land exactly on fundamental-sequence members.
        let value = fund_seq(&beta, i).unwrap();
        let hit = min_above(&beta, &value).unwrap();
        prop_assert_eq!(hit, value);
    }
}
