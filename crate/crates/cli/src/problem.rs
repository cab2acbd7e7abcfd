//! Problem files: strict JSON, unknown fields rejected.

use dubins_core::{CurvatureBound, FleetProblem, OrientedPose, Vehicle};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoseSpec {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl PoseSpec {
    pub fn pose(&self) -> OrientedPose {
        OrientedPose::new(self.x, self.y, self.theta)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleSpec {
    pub id: String,
    pub start: PoseSpec,
    pub goal: PoseSpec,
    #[serde(default)]
    pub target_length: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub kappa: f64,
    pub vehicles: Vec<VehicleSpec>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, String> {
        let p: ProblemFile = serde_json::from_str(text)
            .map_err(|e| e.to_string())?;
        if !(p.kappa > 0.0 && p.kappa.is_finite()) {
            return Err(format!("kappa must be positive and finite, got {}", p.kappa));
        }
        if p.vehicles.is_empty() {
            return Err("no vehicles".into());
        }
        for v in &p.vehicles {
            let nums = [v.start.x, v.start.y, v.start.theta, v.goal.x, v.goal.y, v.goal.theta];
            if nums.iter().any(|n| !n.is_finite()) {
                return Err(format!("vehicle {}: non-finite pose", v.id));
            }
        }
        let mut ids: Vec<&str> = p.vehicles.iter().map(|v| v.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(format!("duplicate vehicle id {}", w[0]));
        }
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<ProblemFile, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn bound(&self) -> CurvatureBound {
        CurvatureBound::new(self.kappa).expect("checked at parse time")
    }

    pub fn fleet(&self) -> FleetProblem {
        FleetProblem {
            bound: self.bound(),
            vehicles: self
                .vehicles
                .iter()
                .map(|v| Vehicle {
                    id: v.id.clone(),
                    start: v.start.pose(),
                    goal: v.goal.pose(),
                })
                .collect(),
        }
    }
}
