mod common;

use common::*;
use dubins_core::*;
use proptest::prelude::*;
use std::f64::consts::TAU;

fn k1() -> CurvatureBound {
    CurvatureBound::unit()
}

#[test]
fn collinear_is_in_o3_o4_o5() {
    let c = classify(&OrientedPose::new(0.0, 0.0, 0.0), &OrientedPose::new(10.0, 0.0, 0.0), k1()).unwrap();
    for o in [OSet::O3, OSet::O4, OSet::O5] {
        assert!(c.has(o));
    }
    assert!(!c.in_nabla_o);
}

#[test]
fn table_cases_classify() {
    let (x, y) = case_pairs(1)[1];
    assert!(classify(&x, &y, k1()).unwrap().in_nabla_o);
    let (x, y) = case_pairs(0)[0];
    assert!(!classify(&x, &y, k1()).unwrap().in_nabla_o);
    let (x, y) = case_pairs(0)[2];
    let c = classify(&x, &y, k1()).unwrap();
    assert!(c.ccc_shortest && c.o_memberships.is_empty() && !c.in_nabla_o);
}

#[test]
fn gap_bounds_of_table_cases() {
    let (x, y) = case_pairs(1)[1];
    let g = gap_bounds(&x, &y, k1()).unwrap();
    assert!((g.l1 - 2.7219).abs() < 5e-4 && (g.l2 - 8.7279).abs() < 5e-4);
    assert!(matches!(g.l2_source, L2Source::Csc(_)));
    let (x, y) = case_pairs(2)[3];
    let g = gap_bounds(&x, &y, k1()).unwrap();
    assert!((g.l1 - 3.6783).abs() < 5e-4 && (g.l2 - 7.8609).abs() < 5e-4);
    assert!(matches!(g.l2_source, L2Source::RlrLong | L2Source::LrlLong));
    assert!((g.l2_path.length() - g.l2).abs() < 1e-12);
}

#[test]
fn gap_bounds_requires_nabla_o() {
    let (x, y) = case_pairs(0)[0];
    assert_eq!(gap_bounds(&x, &y, k1()).err(), Some(DubinsError::NotInNablaO));
}

#[test]
fn feasible_sets_of_examples() {
    let (x, y) = case_pairs(0)[4];
    let s = feasible_set(&x, &y, k1()).unwrap();
    assert!((s.l_m - 9.7219).abs() < 5e-4 && s.gap.is_none());
    let (x, y) = case_pairs(1)[1];
    let s = feasible_set(&x, &y, k1()).unwrap();
    let (l1, l2) = s.gap.unwrap();
    assert!((s.l_m - 2.4540).abs() < 5e-4 && (l1 - 2.7219).abs() < 5e-4 && (l2 - 8.7279).abs() < 5e-4);
    let s = feasible_set(&OrientedPose::new(0.0, 0.0, 0.0), &OrientedPose::new(10.0, 0.0, 0.0), k1()).unwrap();
    assert_eq!(s, FeasibleLengthSet { l_m: 10.0, gap: None });
}

#[test]
fn contains_examples() {
    let s = FeasibleLengthSet {
        l_m: 2.4540,
        gap: Some((2.7219, 8.7279)),
    };
    assert!(contains(&s, 2.7219));
    assert!(contains(&s, 8.7279));
    assert!(!contains(&s, 5.0));
    assert!(!contains(&s, 2.0));
    assert!(!contains(&s, f64::NAN));
    assert!(contains(&s, 1e9));
}

#[test]
fn ordering_holds_where_a_gap_is_reported() {
    for a in gap_instances(31, 300, 5.0) {
        let (l1, l2) = a.set.gap.unwrap();
        assert!(a.l_m() < l1 && l1 < l2);
        assert!(l1 < TAU);
        assert!(l2 <= a.l_m() + TAU + 1e-12);
    }
}

#[test]
fn short_roots_exceed_shortest_on_nabla_o() {
    for a in nabla_instances(32, 300, 5.0) {
        let b = a.bounds.as_ref().unwrap();
        assert!(a.l_m() < b.l1);
    }
}

/// On some nabla-O pairs the short CCC roots are longer than the cheapest
/// alternative; such a pair has no gap and every length above l_m is reachable.
#[test]
fn out_of_order_bounds_leave_no_gap() {
    let a = nabla_instances(33, 400, 5.0)
        .into_iter()
        .find(|a| a.bounds.as_ref().is_some_and(|b| b.l1 > b.l2 + 0.1))
        .expect("an out-of-order nabla-O pair");
    assert!(a.set.gap.is_none());
    let b = a.bounds.as_ref().unwrap();
    let cfg = OracleConfig::default();
    for s in [b.l2, 0.5 * (b.l1 + b.l2), b.l1] {
        assert!(oracle_exists_length(&a.start, &a.goal, a.bound, s, &cfg), "length {s}");
        let e = elongate_with(&a, &ElongationRequest::new(a.start, a.goal, a.bound, s)).unwrap();
        assert!((e.path.length() - s).abs() <= 1e-9);
    }
}

#[test]
fn word_lengths_avoid_the_gap() {
    for a in gap_instances(34, 300, 5.0) {
        let (l1, l2) = a.set.gap.unwrap();
        for key in CandidateKey::ALL {
            let l = a.table.length(key);
            assert!(!(l > l1 && l < l2), "{key:?} {l} in ({l1}, {l2})");
        }
    }
}

fn pose_strategy() -> impl Strategy<Value = OrientedPose> {
    (-5.0..5.0f64, -5.0..5.0f64, 0.0..TAU).prop_map(|(x, y, t)| OrientedPose::new(x, y, t))
}

fn moved(p: &OrientedPose, phi: f64, tx: f64, ty: f64, c: f64) -> OrientedPose {
    let (s, co) = phi.sin_cos();
    OrientedPose::new(c * (co * p.x - s * p.y) + tx, c * (s * p.x + co * p.y) + ty, p.theta + phi)
}

proptest! {
    #[test]
    fn membership_is_closed_on_both_pieces(x in pose_strategy(), y in pose_strategy(), u in 0.0..1.0f64, v in 0.0..50.0f64) {
        let s = feasible_set(&x, &y, k1()).unwrap();
        match s.gap {
            Some((l1, l2)) => {
                prop_assert!(s.contains(s.l_m + u * (l1 - s.l_m)));
                prop_assert!(s.contains(l2 + v));
                prop_assert!(!s.contains(l1 + u * (l2 - l1)) || u == 0.0);
            }
            None => prop_assert!(s.contains(s.l_m + v)),
        }
    }

    #[test]
    fn classification_is_invariant_under_similarity(
        x in pose_strategy(), y in pose_strategy(), phi in 0.0..TAU, tx in -3.0..3.0f64, ty in -3.0..3.0f64, c in 0.3..3.0f64
    ) {
        let a = classify(&x, &y, k1()).unwrap();
        let k = CurvatureBound::new(1.0 / c).unwrap();
        let b = classify(&moved(&x, phi, tx, ty, c), &moved(&y, phi, tx, ty, c), k).unwrap();
        let sa = feasible_set(&x, &y, k1()).unwrap();
        let sb = feasible_set(&moved(&x, phi, tx, ty, c), &moved(&y, phi, tx, ty, c), k).unwrap();
        prop_assert!((sb.l_m - c * sa.l_m).abs() <= 1e-8 * c * sa.l_m);
        // a tie between two word lengths may resolve differently after rounding
        if a.shortest_word == b.shortest_word {
            prop_assert_eq!(a.in_nabla_o, b.in_nabla_o);
            prop_assert_eq!(a.o_memberships, b.o_memberships);
        }
    }
}
