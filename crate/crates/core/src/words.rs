//! Closed-form solvers for the six Dubins words.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{DubinsError, Result};
use crate::geometry::{
    mod_tau, path_length, turn_center, CurvatureBound, CurvaturePath, OrientedPose, PathSegment,
    Point, Turn, SNAP_EPS,
};

/// Geometric slack for tangent existence tests.
pub const TANGENCY_SLACK: f64 = 1e-9;
// arcs this close to a full turn are numerical images of zero
const FULL_TURN_EPS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Word {
    LSL,
    RSR,
    LSR,
    RSL,
    RLR,
    LRL,
}

impl Word {
    /// Tie-break order.
    pub const ALL: [Word; 6] = [Word::LSL, Word::RSR, Word::LSR, Word::RSL, Word::RLR, Word::LRL];
    pub const CSC: [Word; 4] = [Word::LSL, Word::RSR, Word::LSR, Word::RSL];

    pub fn is_csc(self) -> bool {
        !matches!(self, Word::RLR | Word::LRL)
    }

    pub fn first(self) -> Turn {
        match self {
            Word::LSL | Word::LSR | Word::LRL => Turn::L,
            _ => Turn::R,
        }
    }

    pub fn last(self) -> Turn {
        match self {
            Word::LSL | Word::RSL | Word::LRL => Turn::L,
            _ => Turn::R,
        }
    }

    pub fn csc(first: Turn, last: Turn) -> Word {
        match (first, last) {
            (Turn::L, Turn::L) => Word::LSL,
            (Turn::R, Turn::R) => Word::RSR,
            (Turn::L, Turn::R) => Word::LSR,
            (Turn::R, Turn::L) => Word::RSL,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Word::LSL => "LSL",
            Word::RSR => "RSR",
            Word::LSR => "LSR",
            Word::RSL => "RSL",
            Word::RLR => "RLR",
            Word::LRL => "LRL",
        }
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn snap_arc(a: f64) -> f64 {
    if a < SNAP_EPS || TAU - a < FULL_TURN_EPS {
        0.0
    } else {
        a
    }
}

fn snap_len(d: f64) -> f64 {
    if d < SNAP_EPS {
        0.0
    } else {
        d
    }
}

fn check_distinct(x: &OrientedPose, y: &OrientedPose) -> Result<()> {
    if x.same_as(y) {
        Err(DubinsError::DegenerateInput)
    } else {
        Ok(())
    }
}

/// CSC word through the common tangent of the end circles, if it exists.
pub fn solve_csc(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound, w: Word) -> Option<CurvaturePath> {
    if !w.is_csc() {
        return None;
    }
    let r = k.radius();
    let (a, b) = (w.first(), w.last());
    let c1 = turn_center(x, k, a);
    let c2 = turn_center(y, k, b);
    let dist = c1.dist(c2);
    let ang = c1.angle_to(c2);
    let (phi, d) = if a == b {
        (if dist > SNAP_EPS { ang } else { y.theta }, dist)
    } else {
        if dist < 2.0 * r - TANGENCY_SLACK {
            return None;
        }
        let d = (dist * dist - 4.0 * r * r).max(0.0).sqrt();
        let off = (2.0 * r).atan2(d);
        (if a == Turn::L { ang + off } else { ang - off }, d)
    };
    let e1 = match a {
        Turn::L => mod_tau(phi - x.theta),
        Turn::R => mod_tau(x.theta - phi),
    };
    let e2 = match b {
        Turn::L => mod_tau(y.theta - phi),
        Turn::R => mod_tau(phi - y.theta),
    };
    Some(CurvaturePath::new(
        *x,
        vec![
            PathSegment::arc(a, snap_arc(e1)),
            PathSegment::straight(snap_len(d)),
            PathSegment::arc(b, snap_arc(e2)),
        ],
        k,
    ))
}

/// Both placements of the middle circle of a CCC word, shortest first.
pub fn solve_ccc_roots(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound, w: Word) -> Vec<CurvaturePath> {
    if w.is_csc() {
        return Vec::new();
    }
    let r = k.radius();
    let a = w.first();
    let c1 = turn_center(x, k, a);
    let c3 = turn_center(y, k, a);
    let (vx, vy) = (c3.x - c1.x, c3.y - c1.y);
    let dist = vx.hypot(vy);
    if dist > 4.0 * r + TANGENCY_SLACK {
        return Vec::new();
    }
    let h = (4.0 * r * r - dist * dist / 4.0).max(0.0).sqrt();
    let (px, py) = if dist > SNAP_EPS { (-vy / dist, vx / dist) } else { (1.0, 0.0) };
    let mut out = Vec::with_capacity(2);
    for sg in [1.0, -1.0] {
        let c2 = Point::new(c1.x + vx / 2.0 + sg * h * px, c1.y + vy / 2.0 + sg * h * py);
        let a12 = c1.angle_to(c2);
        let a23 = c2.angle_to(c3);
        let segs = match a {
            Turn::L => {
                let p1 = a12 + FRAC_PI_2;
                let p2 = a23 - FRAC_PI_2;
                vec![
                    PathSegment::left(snap_arc(mod_tau(p1 - x.theta))),
                    PathSegment::right(snap_arc(mod_tau(p1 - p2))),
                    PathSegment::left(snap_arc(mod_tau(y.theta - p2))),
                ]
            }
            Turn::R => {
                let p1 = a12 - FRAC_PI_2;
                let p2 = a23 + FRAC_PI_2;
                vec![
                    PathSegment::right(snap_arc(mod_tau(x.theta - p1))),
                    PathSegment::left(snap_arc(mod_tau(p2 - p1))),
                    PathSegment::right(snap_arc(mod_tau(p2 - y.theta))),
                ]
            }
        };
        out.push(CurvaturePath::new(*x, segs, k));
        if h == 0.0 {
            break;
        }
    }
    out.sort_by(|p, q| path_length(p).total_cmp(&path_length(q)));
    out
}

/// Names the eight entries of a candidate table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CandidateKey {
    Lsl,
    Rsr,
    Lsr,
    Rsl,
    RlrShort,
    RlrLong,
    LrlShort,
    LrlLong,
}

impl CandidateKey {
    pub const ALL: [CandidateKey; 8] = [
        CandidateKey::Lsl,
        CandidateKey::Rsr,
        CandidateKey::Lsr,
        CandidateKey::Rsl,
        CandidateKey::RlrShort,
        CandidateKey::RlrLong,
        CandidateKey::LrlShort,
        CandidateKey::LrlLong,
    ];

    pub fn word(self) -> Word {
        match self {
            CandidateKey::Lsl => Word::LSL,
            CandidateKey::Rsr => Word::RSR,
            CandidateKey::Lsr => Word::LSR,
            CandidateKey::Rsl => Word::RSL,
            CandidateKey::RlrShort | CandidateKey::RlrLong => Word::RLR,
            CandidateKey::LrlShort | CandidateKey::LrlLong => Word::LRL,
        }
    }

    pub fn of_csc(w: Word) -> Option<CandidateKey> {
        match w {
            Word::LSL => Some(CandidateKey::Lsl),
            Word::RSR => Some(CandidateKey::Rsr),
            Word::LSR => Some(CandidateKey::Lsr),
            Word::RSL => Some(CandidateKey::Rsl),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CandidateKey::Lsl => "LSL",
            CandidateKey::Rsr => "RSR",
            CandidateKey::Lsr => "LSR",
            CandidateKey::Rsl => "RSL",
            CandidateKey::RlrShort => "RLR_s",
            CandidateKey::RlrLong => "RLR_l",
            CandidateKey::LrlShort => "LRL_s",
            CandidateKey::LrlLong => "LRL_l",
        }
    }
}

/// All eight word candidates between a pose pair. Missing entries have length `+inf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateTable {
    pub lsl: Option<CurvaturePath>,
    pub rsr: Option<CurvaturePath>,
    pub lsr: Option<CurvaturePath>,
    pub rsl: Option<CurvaturePath>,
    pub rlr_short: Option<CurvaturePath>,
    pub rlr_long: Option<CurvaturePath>,
    pub lrl_short: Option<CurvaturePath>,
    pub lrl_long: Option<CurvaturePath>,
}

impl CandidateTable {
    pub fn get(&self, key: CandidateKey) -> Option<&CurvaturePath> {
        match key {
            CandidateKey::Lsl => self.lsl.as_ref(),
            CandidateKey::Rsr => self.rsr.as_ref(),
            CandidateKey::Lsr => self.lsr.as_ref(),
            CandidateKey::Rsl => self.rsl.as_ref(),
            CandidateKey::RlrShort => self.rlr_short.as_ref(),
            CandidateKey::RlrLong => self.rlr_long.as_ref(),
            CandidateKey::LrlShort => self.lrl_short.as_ref(),
            CandidateKey::LrlLong => self.lrl_long.as_ref(),
        }
    }

    pub fn length(&self, key: CandidateKey) -> f64 {
        self.get(key).map_or(f64::INFINITY, path_length)
    }

    /// Middle arc of a CCC entry, in radians.
    pub fn middle_arc(&self, key: CandidateKey) -> Option<f64> {
        match key.word() {
            Word::RLR | Word::LRL => self.get(key).map(|p| p.segments[1].magnitude),
            _ => None,
        }
    }

    /// Minimal entry, ties broken by word order.
    pub fn best(&self) -> (CandidateKey, &CurvaturePath) {
        let mut best: Option<(CandidateKey, &CurvaturePath, f64)> = None;
        for key in CandidateKey::ALL {
            if let Some(p) = self.get(key) {
                let l = path_length(p);
                if best.as_ref().is_none_or(|b| l < b.2) {
                    best = Some((key, p, l));
                }
            }
        }
        // LSL and RSR always exist, so the table is never empty
        let (k, p, _) = best.expect("candidate table has no entries");
        (k, p)
    }
}

pub fn candidate_table(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound) -> Result<CandidateTable> {
    check_distinct(x, y)?;
    let mut rlr = solve_ccc_roots(x, y, k, Word::RLR).into_iter();
    let mut lrl = solve_ccc_roots(x, y, k, Word::LRL).into_iter();
    Ok(CandidateTable {
        lsl: solve_csc(x, y, k, Word::LSL),
        rsr: solve_csc(x, y, k, Word::RSR),
        lsr: solve_csc(x, y, k, Word::LSR),
        rsl: solve_csc(x, y, k, Word::RSL),
        rlr_short: rlr.next(),
        rlr_long: rlr.next(),
        lrl_short: lrl.next(),
        lrl_long: lrl.next(),
    })
}

/// Shortest curvature-bounded path together with its word.
pub fn shortest_with_word(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound) -> Result<(Word, CurvaturePath)> {
    let t = candidate_table(x, y, k)?;
    let (key, p) = t.best();
    Ok((key.word(), p.clone()))
}

pub fn shortest(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound) -> Result<CurvaturePath> {
    shortest_with_word(x, y, k).map(|(_, p)| p)
}
