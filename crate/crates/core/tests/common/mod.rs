#![allow(dead_code)]

use dubins_core::{analyze, Analysis, CurvatureBound, FleetProblem, OrientedPose, Vehicle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Start poses of the three six-vehicle formation cases: (x, y, theta).
pub const CASE_A: [(f64, f64, f64); 6] = [
    (3.5313, -0.8619, 0.5305),
    (1.2238, 0.9698, 4.8689),
    (-3.5775, 1.3472, 1.6328),
    (1.6878, 0.9028, 2.5119),
    (2.9336, 0.0854, 5.4582),
    (1.1577, -0.0281, 5.1353),
];
pub const CASE_B: [(f64, f64, f64); 6] = [
    (4.3627, -1.0457, 6.0141),
    (-2.3376, 0.2700, 0.2919),
    (2.1806, 3.3248, 5.0283),
    (-0.8038, 3.4410, 0.8915),
    (-4.5537, -1.3816, 2.6500),
    (1.5350, -0.2869, 5.7537),
];
pub const CASE_C: [(f64, f64, f64); 6] = [
    (1.8829, 4.4956, 0.7477),
    (-0.9264, 0.0596, 3.1313),
    (-3.1202, 1.1104, 6.0302),
    (-4.4641, 1.4021, 0.5136),
    (1.6253, -3.9714, 3.9600),
    (-0.7889, -2.7028, 1.4063),
];

/// Shortest lengths per case and vehicle.
pub const L_M: [[f64; 6]; 3] = [
    [7.3871, 5.7164, 7.0162, 6.7435, 9.7219, 6.7160],
    [8.5854, 2.4540, 8.6103, 8.4646, 6.3674, 7.0891],
    [8.0845, 5.9104, 7.8796, 3.3402, 6.6030, 7.6161],
];

pub const T_M: [f64; 3] = [9.7219, 8.7279, 8.0845];

pub fn goals() -> [OrientedPose; 6] {
    let s3 = 3f64.sqrt();
    [
        OrientedPose::new(s3, 0.0, 0.0),
        OrientedPose::new(0.0, 1.0, 0.0),
        OrientedPose::new(-s3, 2.0, 0.0),
        OrientedPose::new(-s3, 0.0, 0.0),
        OrientedPose::new(-s3, -2.0, 0.0),
        OrientedPose::new(0.0, -1.0, 0.0),
    ]
}

pub fn case(i: usize) -> [(f64, f64, f64); 6] {
    [CASE_A, CASE_B, CASE_C][i]
}

pub fn case_pairs(i: usize) -> Vec<(OrientedPose, OrientedPose)> {
    case(i)
        .iter()
        .zip(goals())
        .map(|(&(x, y, t), g)| (OrientedPose::new(x, y, t), g))
        .collect()
}

pub fn fleet(i: usize) -> FleetProblem {
    FleetProblem {
        bound: CurvatureBound::unit(),
        vehicles: case_pairs(i)
            .into_iter()
            .enumerate()
            .map(|(j, (s, g))| Vehicle {
                id: format!("{}", j + 1),
                start: s,
                goal: g,
            })
            .collect(),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_pose(r: &mut ChaCha8Rng, half: f64) -> OrientedPose {
    OrientedPose::new(
        r.gen_range(-half..half),
        r.gen_range(-half..half),
        r.gen_range(0.0..std::f64::consts::TAU),
    )
}

pub fn random_pair(r: &mut ChaCha8Rng, half: f64) -> (OrientedPose, OrientedPose) {
    (random_pose(r, half), random_pose(r, half))
}

/// Random pairs whose computed feasible set has a gap.
pub fn gap_instances(seed: u64, n: usize, half: f64) -> Vec<Analysis> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let (x, y) = random_pair(&mut r, half);
        let a = analyze(&x, &y, CurvatureBound::unit()).expect("distinct poses");
        if a.set.gap.is_some() {
            out.push(a);
        }
    }
    out
}

/// Random nabla-O pairs, gap or not.
pub fn nabla_instances(seed: u64, n: usize, half: f64) -> Vec<Analysis> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let (x, y) = random_pair(&mut r, half);
        let a = analyze(&x, &y, CurvatureBound::unit()).expect("distinct poses");
        if a.classification.in_nabla_o {
            out.push(a);
        }
    }
    out
}
