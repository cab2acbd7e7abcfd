//! Curvature-bounded (Dubins) paths between oriented points: shortest paths,
//! the exact set of achievable lengths, synthesis of a path of any achievable
//! length, and common arrival planning for fleets.

pub mod circles;
pub mod elongation;
pub mod error;
mod families;
pub mod feasibility;
pub mod fleet;
pub mod geometry;
pub mod oracle;
mod par;
pub mod words;

pub use elongation::{
    disk_push_family, elongate_to, elongate_with, full_loop_insert, insert_parallel_extension, wave_deform,
    wave_elongation, DiskPush, Elongation, ElongationRequest, StrategyTag,
};
pub use error::{DubinsError, Result};
pub use feasibility::{
    analyze, classify, contains, feasible_set, gap_bounds, Analysis, Classification, FeasibleLengthSet, GapBounds,
    L2Source, OSet,
};
pub use fleet::{arrival_report, plan_formation, ArrivalRow, FleetPlan, FleetProblem, Vehicle};
pub use geometry::{
    end_pose, path_length, propagate, sample, turn_centers, validate, CurvatureBound, CurvaturePath, OrientedPose,
    PathSegment, Point, Sample, SegmentKind, Turn, ValidationReport,
};
pub use oracle::{oracle_exists_length, oracle_shortest, search_path_with_length, OracleConfig};
pub use words::{candidate_table, shortest, shortest_with_word, solve_ccc_roots, solve_csc, CandidateKey, CandidateTable, Word};
