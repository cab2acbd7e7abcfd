//! Poses, segments and symbolic paths.
//!
//! A path is a start pose plus a list of arcs and straights. Arcs always have
//! radius `1/kappa`, so a path is curvature bounded by construction and only its
//! endpoints need checking.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{DubinsError, Result};

/// Default tolerance for pose comparisons.
pub const POSE_TOL: f64 = 1e-9;
/// Default tolerance for length comparisons.
pub const LENGTH_TOL: f64 = 1e-9;
/// Segment magnitudes below this are treated as zero.
pub const SNAP_EPS: f64 = 1e-12;

/// Wrap an angle into `[0, 2pi)`.
pub fn mod_tau(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    // rem_euclid can return TAU itself for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed angular difference wrapped into `(-pi, pi]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = mod_tau(a - b);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, o: Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    /// Direction angle of `o - self`.
    pub fn angle_to(self, o: Point) -> f64 {
        (o.y - self.y).atan2(o.x - self.x)
    }

    pub fn offset(self, angle: f64, r: f64) -> Point {
        Point::new(self.x + r * angle.cos(), self.y + r * angle.sin())
    }

    /// Point reflection of `self` through `c`.
    pub fn reflect_through(self, c: Point) -> Point {
        Point::new(2.0 * c.x - self.x, 2.0 * c.y - self.y)
    }
}

/// Position plus heading. Heading is counterclockwise from the x axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedPose {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl OrientedPose {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        OrientedPose {
            x,
            y,
            theta: mod_tau(theta),
        }
    }

    pub fn point(&self) -> Point {
        Point::new(self.x, self.y)
    }

    pub fn tangent(&self) -> (f64, f64) {
        (self.theta.cos(), self.theta.sin())
    }

    pub fn position_error(&self, o: &OrientedPose) -> f64 {
        self.point().dist(o.point())
    }

    pub fn heading_error(&self, o: &OrientedPose) -> f64 {
        angle_diff(self.theta, o.theta).abs()
    }

    /// Exact equality as oriented points, with headings compared after wrapping.
    pub fn same_as(&self, o: &OrientedPose) -> bool {
        self.x == o.x && self.y == o.y && mod_tau(self.theta) == mod_tau(o.theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureBound {
    pub kappa: f64,
}

impl CurvatureBound {
    pub fn new(kappa: f64) -> Result<Self> {
        if kappa.is_finite() && kappa > 0.0 {
            Ok(CurvatureBound { kappa })
        } else {
            Err(DubinsError::InvalidParameter(format!(
                "kappa must be positive, got {kappa}"
            )))
        }
    }

    pub fn unit() -> Self {
        CurvatureBound { kappa: 1.0 }
    }

    pub fn radius(&self) -> f64 {
        1.0 / self.kappa
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentKind {
    LeftArc,
    RightArc,
    Straight,
}

/// Turn direction of an arc or turn circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Turn {
    L,
    R,
}

impl Turn {
    pub fn opposite(self) -> Turn {
        match self {
            Turn::L => Turn::R,
            Turn::R => Turn::L,
        }
    }

    /// +1 for left (counterclockwise), -1 for right.
    pub fn sign(self) -> f64 {
        match self {
            Turn::L => 1.0,
            Turn::R => -1.0,
        }
    }

    pub fn kind(self) -> SegmentKind {
        match self {
            Turn::L => SegmentKind::LeftArc,
            Turn::R => SegmentKind::RightArc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathSegment {
    pub kind: SegmentKind,
    /// Radians for arcs, length units for straights.
    pub magnitude: f64,
}

impl PathSegment {
    pub fn left(m: f64) -> Self {
        PathSegment {
            kind: SegmentKind::LeftArc,
            magnitude: m,
        }
    }

    pub fn right(m: f64) -> Self {
        PathSegment {
            kind: SegmentKind::RightArc,
            magnitude: m,
        }
    }

    pub fn straight(d: f64) -> Self {
        PathSegment {
            kind: SegmentKind::Straight,
            magnitude: d,
        }
    }

    pub fn arc(turn: Turn, m: f64) -> Self {
        PathSegment {
            kind: turn.kind(),
            magnitude: m,
        }
    }

    pub fn turn(&self) -> Option<Turn> {
        match self.kind {
            SegmentKind::LeftArc => Some(Turn::L),
            SegmentKind::RightArc => Some(Turn::R),
            SegmentKind::Straight => None,
        }
    }

    pub fn is_arc(&self) -> bool {
        self.kind != SegmentKind::Straight
    }

    pub fn length(&self, k: CurvatureBound) -> f64 {
        match self.kind {
            SegmentKind::Straight => self.magnitude,
            _ => self.magnitude / k.kappa,
        }
    }

    pub fn snapped(mut self) -> Self {
        if self.magnitude.abs() < SNAP_EPS {
            self.magnitude = 0.0;
        }
        self
    }
}

/// Returns `(right_center, left_center)`.
pub fn turn_centers(p: &OrientedPose, k: CurvatureBound) -> (Point, Point) {
    let r = k.radius();
    let (s, c) = p.theta.sin_cos();
    (
        Point::new(p.x + r * s, p.y - r * c),
        Point::new(p.x - r * s, p.y + r * c),
    )
}

pub fn turn_center(p: &OrientedPose, k: CurvatureBound, t: Turn) -> Point {
    let (rc, lc) = turn_centers(p, k);
    match t {
        Turn::L => lc,
        Turn::R => rc,
    }
}

pub fn propagate(p: &OrientedPose, seg: &PathSegment, k: CurvatureBound) -> OrientedPose {
    let m = seg.magnitude;
    match seg.kind {
        SegmentKind::Straight => {
            let (s, c) = p.theta.sin_cos();
            OrientedPose {
                x: p.x + m * c,
                y: p.y + m * s,
                theta: p.theta,
            }
        }
        SegmentKind::LeftArc | SegmentKind::RightArc => {
            let r = k.radius();
            let sg = if seg.kind == SegmentKind::LeftArc { 1.0 } else { -1.0 };
            // chord form avoids going through the center and back
            let half = 0.5 * m;
            let chord = 2.0 * r * half.sin();
            let dir = p.theta + sg * half;
            OrientedPose {
                x: p.x + chord * dir.cos(),
                y: p.y + chord * dir.sin(),
                theta: mod_tau(p.theta + sg * m),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvaturePath {
    pub start: OrientedPose,
    pub segments: Vec<PathSegment>,
    pub bound: CurvatureBound,
}

impl CurvaturePath {
    pub fn new(start: OrientedPose, segments: Vec<PathSegment>, bound: CurvatureBound) -> Self {
        CurvaturePath {
            start,
            segments,
            bound,
        }
    }

    pub fn length(&self) -> f64 {
        path_length(self)
    }

    pub fn end_pose(&self) -> OrientedPose {
        end_pose(self)
    }

    /// Pose at the start of each segment, plus the final pose.
    pub fn waypoints(&self) -> Vec<OrientedPose> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut p = self.start;
        out.push(p);
        for s in &self.segments {
            p = propagate(&p, s, self.bound);
            out.push(p);
        }
        out
    }

    /// Index and magnitude of the first arc of at least `pi`.
    pub fn major_arc(&self) -> Option<usize> {
        self.segments
            .iter()
            .position(|s| s.is_arc() && s.magnitude >= PI)
    }

    /// Drops zero segments and merges neighbours of the same kind.
    pub fn simplified(&self) -> CurvaturePath {
        let mut segs: Vec<PathSegment> = Vec::with_capacity(self.segments.len());
        for s in &self.segments {
            if s.magnitude == 0.0 {
                continue;
            }
            match segs.last_mut() {
                Some(last) if last.kind == s.kind => last.magnitude += s.magnitude,
                _ => segs.push(*s),
            }
        }
        CurvaturePath::new(self.start, segs, self.bound)
    }

    /// Word string such as "LSR", one letter per segment.
    pub fn word_string(&self) -> String {
        self.segments
            .iter()
            .map(|s| match s.kind {
                SegmentKind::LeftArc => 'L',
                SegmentKind::RightArc => 'R',
                SegmentKind::Straight => 'S',
            })
            .collect()
    }
}

pub fn end_pose(path: &CurvaturePath) -> OrientedPose {
    path.segments
        .iter()
        .fold(path.start, |p, s| propagate(&p, s, path.bound))
}

pub fn path_length(path: &CurvaturePath) -> f64 {
    path.segments.iter().map(|s| s.length(path.bound)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub arclength: f64,
    pub pose: OrientedPose,
    pub segment_index: usize,
}

/// Poses every `step` of arclength, always ending exactly at the path length.
pub fn sample(path: &CurvaturePath, step: f64) -> Result<Vec<Sample>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(DubinsError::InvalidParameter(format!(
            "sample step must be positive, got {step}"
        )));
    }
    let total = path_length(path);
    let k = path.bound;
    let n = (total / step).floor() as usize;
    let mut out = Vec::with_capacity(n + 2);
    let mut seg_start = 0.0;
    let mut seg_pose = path.start;
    let mut idx = 0usize;
    let last_seg = path.segments.len().saturating_sub(1);
    let mut i = 0usize;
    loop {
        let s = if i <= n { i as f64 * step } else { total };
        let s = s.min(total);
        // advance to the segment containing s
        while idx < path.segments.len() {
            let len = path.segments[idx].length(k);
            if s <= seg_start + len || idx == last_seg {
                break;
            }
            seg_pose = propagate(&seg_pose, &path.segments[idx], k);
            seg_start += len;
            idx += 1;
        }
        let pose = if path.segments.is_empty() {
            path.start
        } else {
            let seg = path.segments[idx];
            let local = (s - seg_start).max(0.0);
            let mag = match seg.kind {
                SegmentKind::Straight => local,
                _ => local * k.kappa,
            };
            propagate(
                &seg_pose,
                &PathSegment {
                    kind: seg.kind,
                    magnitude: mag.min(seg.magnitude),
                },
                k,
            )
        };
        out.push(Sample {
            arclength: s,
            pose,
            segment_index: idx.min(last_seg),
        });
        if s >= total {
            break;
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub endpoint_position_error: f64,
    pub endpoint_heading_error: f64,
    pub curvature_ok: bool,
    pub length: f64,
}

impl ValidationReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.curvature_ok && self.endpoint_position_error <= tol && self.endpoint_heading_error <= tol
    }
}

/// Checks that `path` starts at `x` and ends at `y`.
pub fn validate(path: &CurvaturePath, x: &OrientedPose, y: &OrientedPose, _tol: f64) -> ValidationReport {
    let end = end_pose(path);
    let start_err = path.start.position_error(x).max(path.start.heading_error(x));
    let curvature_ok = path
        .segments
        .iter()
        .all(|s| s.magnitude >= 0.0 && s.magnitude.is_finite())
        && path.bound.kappa > 0.0;
    ValidationReport {
        endpoint_position_error: end.position_error(y).max(start_err),
        endpoint_heading_error: end.heading_error(y),
        curvature_ok,
        length: path_length(path),
    }
}

/// Heading of a vehicle circling center `c` in direction `t` when at point `p`.
pub fn heading_on_circle(c: Point, t: Turn, p: Point) -> f64 {
    c.angle_to(p) + t.sign() * FRAC_PI_2
}
