mod common;

use common::*;
use dubins_core::*;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn k1() -> CurvatureBound {
    CurvatureBound::unit()
}

fn pose(x: f64, y: f64, t: f64) -> OrientedPose {
    OrientedPose::new(x, y, t)
}

fn ends_at(p: &CurvaturePath, y: &OrientedPose) -> bool {
    validate(p, &p.start, y, 1e-9).passes(1e-9)
}

#[test]
fn csc_collinear() {
    let (x, y) = (pose(0.0, 0.0, 0.0), pose(10.0, 0.0, 0.0));
    let p = solve_csc(&x, &y, k1(), Word::RSR).unwrap();
    let m: Vec<f64> = p.segments.iter().map(|s| s.magnitude).collect();
    assert_eq!(m, vec![0.0, 10.0, 0.0]);
    assert_eq!(p.length(), 10.0);
}

#[test]
fn csc_semicircle() {
    let (x, y) = (pose(0.0, 0.0, 0.0), pose(0.0, 2.0, PI));
    let p = solve_csc(&x, &y, k1(), Word::LSL).unwrap();
    assert!((p.segments[0].magnitude - PI).abs() < 1e-12);
    assert_eq!(p.segments[1].magnitude, 0.0);
    assert_eq!(p.segments[2].magnitude, 0.0);
    assert!((p.length() - PI).abs() < 1e-12);
}

#[test]
fn csc_inner_tangent_missing() {
    // right center (0,-1), left center (1,-1)
    assert!(solve_csc(&pose(0.0, 0.0, 0.0), &pose(1.0, -2.0, 0.0), k1(), Word::RSL).is_none());
    // centers sqrt(5) apart, so the inner tangent exists here
    assert!(solve_csc(&pose(0.0, 0.0, 0.0), &pose(1.0, 0.0, 0.0), k1(), Word::RSL).is_some());
}

#[test]
fn ccc_two_roots_for_reversal() {
    let (x, y) = (pose(0.0, 0.0, 0.0), pose(0.0, 0.0, PI));
    let roots = solve_ccc_roots(&x, &y, k1(), Word::LRL);
    assert_eq!(roots.len(), 2);
    assert!(roots[0].length() < roots[1].length());
    for r in &roots {
        assert!(ends_at(r, &y));
        assert!(oracle_exists_length(&x, &y, k1(), r.length(), &OracleConfig::default()));
    }
}

#[test]
fn ccc_absent_when_far() {
    assert!(solve_ccc_roots(&pose(0.0, 0.0, 0.0), &pose(10.0, 0.0, 0.0), k1(), Word::RLR).is_empty());
}

#[test]
fn case_b_vehicle_2_short_roots() {
    let (x, y) = case_pairs(1)[1];
    let t = candidate_table(&x, &y, k1()).unwrap();
    let l1 = t.length(CandidateKey::RlrShort).max(t.length(CandidateKey::LrlShort));
    assert!((l1 - 2.7219).abs() < 5e-4);
    let best = CandidateKey::ALL.iter().map(|k| t.length(*k)).fold(f64::INFINITY, f64::min);
    assert!((best - 2.4540).abs() < 5e-4);
}

#[test]
fn collinear_table() {
    let t = candidate_table(&pose(0.0, 0.0, 0.0), &pose(10.0, 0.0, 0.0), k1()).unwrap();
    assert_eq!(t.length(CandidateKey::Rsr), 10.0);
    for k in [CandidateKey::RlrShort, CandidateKey::RlrLong, CandidateKey::LrlShort, CandidateKey::LrlLong] {
        assert_eq!(t.length(k), f64::INFINITY);
    }
}

#[test]
fn case_a_shortest_lengths() {
    for (j, (x, y)) in case_pairs(0).into_iter().enumerate() {
        let p = shortest(&x, &y, k1()).unwrap();
        assert!((p.length() - L_M[0][j]).abs() < 5e-4, "vehicle {}", j + 1);
        assert!(ends_at(&p, &y));
    }
}

#[test]
fn ties_follow_word_order() {
    let (w, p) = shortest_with_word(&pose(0.0, 0.0, 0.0), &pose(10.0, 0.0, 0.0), k1()).unwrap();
    assert_eq!(w, Word::LSL);
    assert_eq!(p.length(), 10.0);
}

#[test]
fn identical_poses_are_degenerate() {
    let x = pose(1.0, 2.0, 0.3);
    assert_eq!(shortest(&x, &x, k1()), Err(DubinsError::DegenerateInput));
    assert_eq!(candidate_table(&x, &x, k1()).err(), Some(DubinsError::DegenerateInput));
}

#[test]
fn finite_entries_match_brute_force() {
    let mut r = rng(7);
    let cfg = OracleConfig::default();
    for _ in 0..100 {
        let (x, y) = random_pair(&mut r, 5.0);
        let t = candidate_table(&x, &y, k1()).unwrap();
        for key in CandidateKey::ALL {
            if let Some(p) = t.get(key) {
                assert!(ends_at(p, &y), "{key:?}");
                let found = search_path_with_length(&x, &y, k1(), p.length(), &cfg)
                    .expect("brute force finds a path of the entry length");
                assert!((found.length() - p.length()).abs() < 1e-6);
            }
        }
    }
}

fn pose_strategy() -> impl Strategy<Value = OrientedPose> {
    (-5.0..5.0f64, -5.0..5.0f64, 0.0..TAU).prop_map(|(x, y, t)| OrientedPose::new(x, y, t))
}

proptest! {
    #[test]
    fn every_candidate_reaches_the_goal(x in pose_strategy(), y in pose_strategy(), kappa in 0.2..3.0f64) {
        let k = CurvatureBound::new(kappa).unwrap();
        let t = candidate_table(&x, &y, k).unwrap();
        let m = shortest(&x, &y, k).unwrap();
        prop_assert!(validate(&m, &x, &y, 1e-9).passes(1e-9));
        for key in CandidateKey::ALL {
            if let Some(p) = t.get(key) {
                prop_assert!(validate(p, &x, &y, 1e-9).passes(1e-9));
                prop_assert!(m.length() <= p.length());
            }
        }
        if let (Some(s), Some(l)) = (t.get(CandidateKey::RlrShort), t.get(CandidateKey::RlrLong)) {
            prop_assert!(s.length() <= l.length());
        }
    }

    #[test]
    fn root_middle_arcs_are_complementary(x in pose_strategy(), y in pose_strategy()) {
        let t = candidate_table(&x, &y, CurvatureBound::unit()).unwrap();
        for (s, l) in [(CandidateKey::RlrShort, CandidateKey::RlrLong), (CandidateKey::LrlShort, CandidateKey::LrlLong)] {
            if let (Some(a), Some(b)) = (t.middle_arc(s), t.middle_arc(l)) {
                prop_assert!((a + b - TAU).abs() < 1e-9 || (a + b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn lengths_scale_with_radius(x in pose_strategy(), y in pose_strategy(), c in 0.2..5.0f64) {
        let t = candidate_table(&x, &y, CurvatureBound::unit()).unwrap();
        let xs = OrientedPose::new(c * x.x, c * x.y, x.theta);
        let ys = OrientedPose::new(c * y.x, c * y.y, y.theta);
        let ts = candidate_table(&xs, &ys, CurvatureBound::new(1.0 / c).unwrap()).unwrap();
        for key in CandidateKey::ALL {
            let (a, b) = (t.length(key), ts.length(key));
            if a.is_finite() && b.is_finite() {
                prop_assert!((b - c * a).abs() <= 1e-9 * c * a.max(1.0));
            }
        }
        let a = shortest(&x, &y, CurvatureBound::unit()).unwrap().length();
        let b = shortest(&xs, &ys, CurvatureBound::new(1.0 / c).unwrap()).unwrap().length();
        prop_assert!((b - c * a).abs() <= 1e-9 * c * a.max(1.0));
    }
}

#[test]
fn long_root_is_major_on_nabla_o() {
    for a in nabla_instances(17, 500, 5.0) {
        for key in [CandidateKey::RlrLong, CandidateKey::LrlLong] {
            if let Some(m) = a.table.middle_arc(key) {
                assert!(m >= PI - 1e-9);
            }
        }
    }
}
