use thiserror::Error;

/// Every failure the library reports. Absence of a word solution is not an error.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DubinsError {
    #[error("start and goal poses coincide")]
    DegenerateInput,
    #[error("pose pair is not in the nabla-O class")]
    NotInNablaO,
    #[error("path has no arc of at least pi radians")]
    NoParallelTangents,
    #[error("straight of length {length} is shorter than the required chord {required}")]
    SegmentTooShort { length: f64, required: f64 },
    #[error("segment {index} is not a straight")]
    NotAStraight { index: usize },
    #[error("length {target} is not achievable (feasible set {set})")]
    InfeasibleLength { target: f64, set: String },
    #[error("tolerance not met: achieved length {achieved} for target {target}")]
    ToleranceNotMet { target: f64, achieved: f64 },
    #[error("no solution found: {0}")]
    NoSolutionFound(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, DubinsError>;
