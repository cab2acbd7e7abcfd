//! Common arrival length for several vehicles.

use serde::{Deserialize, Serialize};

use crate::elongation::{elongate_with, ElongationRequest, StrategyTag};
use crate::error::{DubinsError, Result};
use crate::feasibility::{analyze, FeasibleLengthSet};
use crate::geometry::{validate, CurvatureBound, CurvaturePath, OrientedPose, POSE_TOL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vehicle {
    pub id: String,
    pub start: OrientedPose,
    pub goal: OrientedPose,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FleetProblem {
    pub bound: CurvatureBound,
    pub vehicles: Vec<Vehicle>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VehiclePlan {
    pub id: String,
    pub set: FeasibleLengthSet,
    pub path: CurvaturePath,
    pub strategy: StrategyTag,
    pub base_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FleetPlan {
    pub t_m: f64,
    pub vehicles: Vec<VehiclePlan>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrivalRow {
    pub id: String,
    pub length: f64,
    pub max_endpoint_error: f64,
}

/// Least length contained in every set. The intersection is a finite union of
/// closed intervals, so its minimum is one of the breakpoints.
pub fn common_minimum(sets: &[FeasibleLengthSet]) -> Option<f64> {
    let mut pts: Vec<f64> = sets
        .iter()
        .flat_map(|s| {
            let mut v = vec![s.l_m];
            if let Some((a, b)) = s.gap {
                v.push(a);
                v.push(b);
            }
            v
        })
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.into_iter().find(|t| sets.iter().all(|s| s.contains(*t)))
}

pub fn plan_formation(p: &FleetProblem, tol: f64) -> Result<FleetPlan> {
    if p.vehicles.is_empty() {
        return Err(DubinsError::InvalidParameter("fleet has no vehicles".into()));
    }
    let analyses = p
        .vehicles
        .iter()
        .map(|v| analyze(&v.start, &v.goal, p.bound))
        .collect::<Result<Vec<_>>>()?;
    let sets: Vec<FeasibleLengthSet> = analyses.iter().map(|a| a.set).collect();
    let t_m = common_minimum(&sets).ok_or_else(|| DubinsError::NoSolutionFound("empty intersection".into()))?;
    let jobs: Vec<_> = p.vehicles.iter().zip(&analyses).collect();
    let plans = crate::par::map(&jobs, |&(v, an)| {
        let mut req = ElongationRequest::new(v.start, v.goal, p.bound, t_m);
        req.tol = tol;
        elongate_with(an, &req).map(|e| VehiclePlan {
            id: v.id.clone(),
            set: an.set,
            path: e.path,
            strategy: e.strategy,
            base_length: e.base_length,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(FleetPlan { t_m, vehicles: plans })
}

pub fn arrival_report(plan: &FleetPlan, problem: &FleetProblem) -> Vec<ArrivalRow> {
    plan.vehicles
        .iter()
        .map(|vp| {
            let v = problem.vehicles.iter().find(|v| v.id == vp.id);
            let (len, err) = match v {
                Some(v) => {
                    let r = validate(&vp.path, &v.start, &v.goal, POSE_TOL);
                    (r.length, r.endpoint_position_error.max(r.endpoint_heading_error))
                }
                None => (vp.path.length(), f64::INFINITY),
            };
            ArrivalRow {
                id: vp.id.clone(),
                length: len,
                max_endpoint_error: err,
            }
        })
        .collect()
}
