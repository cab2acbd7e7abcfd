//! Browser bindings. Every entry point takes and returns a JSON string; the
//! `*_json` functions hold the logic and are usable without a JS host.

use dubins_core::{
    analyze, elongate_with, plan_formation, sample, CurvatureBound, CurvaturePath, DubinsError, ElongationRequest,
    FeasibleLengthSet, FleetProblem, OrientedPose, SegmentKind, Vehicle,
};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Pose {
    fn pose(self) -> OrientedPose {
        OrientedPose::new(self.x, self.y, self.theta)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInput {
    pub kappa: f64,
    pub start: Pose,
    pub goal: Pose,
    #[serde(default)]
    pub target: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FleetVehicle {
    pub id: String,
    pub start: Pose,
    pub goal: Pose,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FleetInput {
    pub kappa: f64,
    pub vehicles: Vec<FleetVehicle>,
}

#[derive(Debug, Serialize)]
pub struct SetOut {
    pub l_m: f64,
    /// null when there is no gap
    pub l1: Option<f64>,
    pub l2: Option<f64>,
    pub text: String,
}

impl From<&FeasibleLengthSet> for SetOut {
    fn from(s: &FeasibleLengthSet) -> Self {
        SetOut {
            l_m: s.l_m,
            l1: s.gap.map(|g| g.0),
            l2: s.gap.map(|g| g.1),
            text: s.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PathOut {
    pub word: String,
    pub length: f64,
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct PlanOut {
    pub shortest: PathOut,
    pub set: SetOut,
    pub memberships: Vec<String>,
    pub in_nabla_o: bool,
}

#[derive(Debug, Serialize)]
pub struct ElongateOut {
    pub path: PathOut,
    pub strategy: String,
    pub base_length: f64,
    pub set: SetOut,
}

#[derive(Debug, Serialize)]
pub struct FleetVehicleOut {
    pub id: String,
    pub set: SetOut,
    pub strategy: String,
    pub path: PathOut,
}

#[derive(Debug, Serialize)]
pub struct FleetOut {
    pub t_m: f64,
    pub vehicles: Vec<FleetVehicleOut>,
}

fn bound(kappa: f64) -> Result<CurvatureBound, String> {
    CurvatureBound::new(kappa).map_err(|e| e.to_string())
}

fn parse<'a, T: Deserialize<'a>>(input: &'a str) -> Result<T, String> {
    serde_json::from_str(input).map_err(|e| format!("bad input: {e}"))
}

fn path_out(p: &CurvaturePath) -> Result<PathOut, String> {
    let p = p.simplified();
    let pts = sample(&p, 0.02 * p.bound.radius()).map_err(|e| e.to_string())?;
    Ok(PathOut {
        word: p
            .segments
            .iter()
            .map(|s| match s.kind {
                SegmentKind::LeftArc => 'L',
                SegmentKind::RightArc => 'R',
                SegmentKind::Straight => 'S',
            })
            .collect(),
        length: p.length(),
        points: pts.iter().map(|s| [s.pose.x, s.pose.y]).collect(),
    })
}

fn message(e: DubinsError) -> String {
    match e {
        DubinsError::InfeasibleLength { target, set } => {
            format!("length {target:.4} is not achievable; feasible lengths: {set}")
        }
        DubinsError::DegenerateInput => "start and goal coincide".into(),
        e => e.to_string(),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Shortest path, feasible length set and classification of one pose pair.
pub fn plan_json(input: &str) -> Result<String, String> {
    let inp: PairInput = parse(input)?;
    let an = analyze(&inp.start.pose(), &inp.goal.pose(), bound(inp.kappa)?).map_err(message)?;
    to_json(&PlanOut {
        shortest: path_out(&an.shortest)?,
        set: (&an.set).into(),
        memberships: an.classification.o_memberships.iter().map(|o| format!("{o:?}")).collect(),
        in_nabla_o: an.classification.in_nabla_o,
    })
}

/// Path of length `target` for one pose pair.
pub fn elongate_json(input: &str) -> Result<String, String> {
    let inp: PairInput = parse(input)?;
    let target = inp.target.ok_or("missing target")?;
    let k = bound(inp.kappa)?;
    let an = analyze(&inp.start.pose(), &inp.goal.pose(), k).map_err(message)?;
    let e = elongate_with(&an, &ElongationRequest::new(an.start, an.goal, k, target)).map_err(message)?;
    to_json(&ElongateOut {
        path: path_out(&e.path)?,
        strategy: format!("{:?}", e.strategy),
        base_length: e.base_length,
        set: (&an.set).into(),
    })
}

/// Common arrival length and paths for a fleet.
pub fn fleet_json(input: &str) -> Result<String, String> {
    let inp: FleetInput = parse(input)?;
    let problem = FleetProblem {
        bound: bound(inp.kappa)?,
        vehicles: inp
            .vehicles
            .into_iter()
            .map(|v| Vehicle {
                id: v.id,
                start: v.start.pose(),
                goal: v.goal.pose(),
            })
            .collect(),
    };
    let plan = plan_formation(&problem, 1e-9).map_err(message)?;
    let vehicles = plan
        .vehicles
        .iter()
        .map(|v| {
            Ok(FleetVehicleOut {
                id: v.id.clone(),
                set: (&v.set).into(),
                strategy: format!("{:?}", v.strategy),
                path: path_out(&v.path)?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    to_json(&FleetOut { t_m: plan.t_m, vehicles })
}

#[wasm_bindgen]
pub fn plan(input: &str) -> Result<String, JsValue> {
    plan_json(input).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn elongate(input: &str) -> Result<String, JsValue> {
    elongate_json(input).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fleet(input: &str) -> Result<String, JsValue> {
    fleet_json(input).map_err(|e| JsValue::from_str(&e))
}
