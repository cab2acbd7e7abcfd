mod common;

use common::*;
use dubins_core::*;
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn formation_times_of_the_three_cases() {
    for c in 0..3 {
        let plan = plan_formation(&fleet(c), 1e-9).unwrap();
        assert!((plan.t_m - T_M[c]).abs() < 5e-4, "case {c}: {}", plan.t_m);
        for row in arrival_report(&plan, &fleet(c)) {
            assert!((row.length - plan.t_m).abs() <= 1e-9);
            assert!(row.max_endpoint_error <= 1e-9);
        }
    }
}

#[test]
fn case_b_vehicle_2_starts_from_its_upper_bound() {
    let plan = plan_formation(&fleet(1), 1e-9).unwrap();
    let v = &plan.vehicles[1];
    assert!((v.base_length - 8.7279).abs() < 5e-4);
    assert_eq!(v.strategy, StrategyTag::ParallelInsert);
    assert!((v.path.length() - 8.7279).abs() < 5e-4);
}

#[test]
fn case_c_vehicle_4_grows_from_the_long_root() {
    let plan = plan_formation(&fleet(2), 1e-9).unwrap();
    assert!((plan.vehicles[3].base_length - 7.8609).abs() < 5e-4);
}

#[test]
fn single_vehicle_keeps_its_shortest_path() {
    let mut p = fleet(0);
    p.vehicles.truncate(1);
    let plan = plan_formation(&p, 1e-9).unwrap();
    assert!((plan.t_m - L_M[0][0]).abs() < 5e-4);
    assert_eq!(arrival_report(&plan, &p).len(), 1);
}

#[test]
fn empty_fleet_is_rejected() {
    let p = FleetProblem {
        bound: CurvatureBound::unit(),
        vehicles: vec![],
    };
    assert!(plan_formation(&p, 1e-9).is_err());
}

fn random_problem(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> FleetProblem {
    FleetProblem {
        bound: CurvatureBound::unit(),
        vehicles: (0..n)
            .map(|i| {
                let (s, g) = random_pair(r, 5.0);
                Vehicle {
                    id: format!("v{i}"),
                    start: s,
                    goal: g,
                }
            })
            .collect(),
    }
}

#[test]
fn order_does_not_matter() {
    let mut r = rng(61);
    for _ in 0..10 {
        let p = random_problem(&mut r, 6);
        let mut q = p.clone();
        q.vehicles.shuffle(&mut r);
        assert_eq!(plan_formation(&p, 1e-9).unwrap().t_m, plan_formation(&q, 1e-9).unwrap().t_m);
    }
}

#[test]
fn breakpoint_minimum_matches_a_grid_scan() {
    let mut r = rng(62);
    let mut tried = 0;
    while tried < 30 {
        // mix gap-bearing pairs in so the sweep has something to skip
        let mut sets: Vec<FeasibleLengthSet> = gap_instances(r.gen(), 2, 5.0).iter().map(|a| a.set).collect();
        for _ in 0..3 {
            let (x, y) = random_pair(&mut r, 2.0);
            sets.push(feasible_set(&x, &y, CurvatureBound::unit()).unwrap());
        }
        tried += 1;
        let t = dubins_core::fleet::common_minimum(&sets).unwrap();
        let lo = sets.iter().map(|s| s.l_m).fold(0.0, f64::max);
        let step = 1e-4;
        let mut g = lo;
        while !sets.iter().all(|s| s.contains(g)) {
            g += step;
        }
        assert!(g >= t - 1e-12 && g - t <= step + 1e-12, "{t} {g}");
        assert!(t >= lo);
    }
}

#[test]
fn ten_vehicles_arrive_together() {
    let mut r = rng(63);
    for _ in 0..5 {
        let p = random_problem(&mut r, 10);
        let plan = plan_formation(&p, 1e-9).unwrap();
        let rows = arrival_report(&plan, &p);
        let lo = rows.iter().map(|r| r.length).fold(f64::INFINITY, f64::min);
        let hi = rows.iter().map(|r| r.length).fold(0.0, f64::max);
        assert!(hi - lo <= 2e-9);
        assert!(rows.iter().all(|r| r.max_endpoint_error <= 1e-9));
        for v in &plan.vehicles {
            assert!(v.set.contains(plan.t_m));
        }
    }
}
