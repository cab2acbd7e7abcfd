//! One-parameter path families used to hit a target length by bisection.
//!
//! Every family member is a chain of turn circles joined by common tangents,
//! so each evaluation is an exact curvature-bounded path from X to Y.

use std::f64::consts::TAU;

use crate::circles::{chain_path, circle_intersections};
use crate::geometry::{
    mod_tau, path_length, propagate, turn_center, CurvatureBound, CurvaturePath, OrientedPose,
    Point, Turn, POSE_TOL,
};

/// Largest length change between neighbouring scan samples still treated as continuous.
pub(crate) const JUMP_LIMIT: f64 = 0.05;
pub(crate) const SCAN_STEPS: usize = 2000;
const BISECT_ITERS: usize = 200;

#[derive(Debug, Clone)]
pub(crate) enum Shape {
    /// Middle circle slides along the bisector of two same-handed centers.
    Push {
        p: Point,
        e: Point,
        a: Turn,
        mid: Point,
        n: Point,
        h: f64,
    },
    /// Middle circle rolls around `pivot`, staying tangent to it.
    Roll {
        f: (Point, Turn),
        g: (Point, Turn),
        m: Turn,
        pivot: Point,
        a0: f64,
        span: f64,
    },
    /// Four circles; A rolls around `p`, B keeps tangent to A and `e`.
    Swap {
        p: Point,
        e: Point,
        dirs: [Turn; 4],
        a0: f64,
        span: f64,
        b0: Point,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Family {
    pub x: OrientedPose,
    pub y: OrientedPose,
    pub k: CurvatureBound,
    pub shape: Shape,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ScanSample {
    pub lam: f64,
    pub len: f64,
    pub hint: Point,
    pub major: bool,
}

fn ok_endpoint(p: &CurvaturePath, y: &OrientedPose) -> bool {
    let e = p.end_pose();
    e.position_error(y) <= POSE_TOL && e.heading_error(y) <= POSE_TOL
}

impl Family {
    pub fn initial_hint(&self) -> Point {
        match self.shape {
            Shape::Swap { b0, .. } => b0,
            _ => Point::default(),
        }
    }

    /// Evaluates the member at `lam`. `hint` carries branch state for swaps.
    pub fn eval(&self, lam: f64, hint: &mut Point) -> Option<CurvaturePath> {
        let r = self.k.radius();
        match &self.shape {
            Shape::Push { p, e, a, mid, n, h } => {
                let off = 2.0 * r + lam * (h - 2.0 * r);
                let m = Point::new(mid.x + off * n.x, mid.y + off * n.y);
                chain_path(&self.x, &self.y, &[(*p, *a), (m, a.opposite()), (*e, *a)], self.k)
            }
            Shape::Roll {
                f,
                g,
                m,
                pivot,
                a0,
                span,
            } => {
                let mc = pivot.offset(a0 + lam * span, 2.0 * r);
                chain_path(&self.x, &self.y, &[*f, (mc, *m), *g], self.k)
            }
            Shape::Swap {
                p,
                e,
                dirs,
                a0,
                span,
                ..
            } => {
                let a = p.offset(a0 + lam * span, 2.0 * r);
                let cands = circle_intersections(a, *e, 2.0 * r);
                let b = cands
                    .into_iter()
                    .min_by(|u, v| u.dist(*hint).total_cmp(&v.dist(*hint)))?;
                *hint = b;
                chain_path(
                    &self.x,
                    &self.y,
                    &[(*p, dirs[0]), (a, dirs[1]), (b, dirs[2]), (*e, dirs[3])],
                    self.k,
                )
            }
        }
    }

    /// Samples `lam = i/n` for `i` in `from..=to` and splits them into
    /// continuous stretches of valid members.
    pub fn scan(&self, n: usize, from: usize, to: usize) -> Vec<Vec<ScanSample>> {
        let mut out: Vec<Vec<ScanSample>> = Vec::new();
        let mut cur: Vec<ScanSample> = Vec::new();
        let mut hint = self.initial_hint();
        for i in from..=to {
            let lam = i as f64 / n as f64;
            let mut h = hint;
            let sample = self.eval(lam, &mut h).filter(|p| ok_endpoint(p, &self.y)).map(|p| ScanSample {
                lam,
                len: path_length(&p),
                hint: h,
                major: p.major_arc().is_some(),
            });
            // a failed swap evaluation must not move the branch tracker
            if sample.is_some() {
                hint = h;
            }
            match sample {
                Some(s) if cur.last().is_none_or(|l| (s.len - l.len).abs() < JUMP_LIMIT) => cur.push(s),
                Some(s) => {
                    out.push(std::mem::take(&mut cur));
                    cur.push(s);
                }
                None => {
                    if !cur.is_empty() {
                        out.push(std::mem::take(&mut cur));
                    }
                }
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
        out
    }

    /// Bisection between two neighbouring samples whose lengths straddle `s`.
    pub fn bisect(&self, lo: &ScanSample, hi: &ScanSample, s: f64, tol: f64) -> Result<CurvaturePath, f64> {
        let (mut a, mut b) = (lo.lam, hi.lam);
        let rising = hi.len >= lo.len;
        let mut best: Option<(f64, CurvaturePath)> = None;
        for _ in 0..BISECT_ITERS {
            let mid = 0.5 * (a + b);
            let mut h = lo.hint;
            let Some(p) = self.eval(mid, &mut h) else { break };
            let l = path_length(&p);
            let err = (l - s).abs();
            if best.as_ref().is_none_or(|(e, _)| err < *e) {
                best = Some((err, p.clone()));
            }
            if err <= 0.5 * tol && ok_endpoint(&p, &self.y) {
                return Ok(p);
            }
            if (l < s) == rising {
                a = mid;
            } else {
                b = mid;
            }
            if b - a <= f64::EPSILON {
                break;
            }
        }
        for (lam, len) in [(lo.lam, lo.len), (hi.lam, hi.len)] {
            if (len - s).abs() <= tol {
                let mut h = lo.hint;
                if let Some(p) = self.eval(lam, &mut h) {
                    if (path_length(&p) - s).abs() <= tol && ok_endpoint(&p, &self.y) {
                        return Ok(p);
                    }
                }
            }
        }
        Err(best.map_or(f64::NAN, |(_, p)| path_length(&p)))
    }

    /// Tries every bracketing pair of neighbouring samples in `stretches`.
    pub fn solve(&self, stretches: &[Vec<ScanSample>], s: f64, tol: f64) -> Result<CurvaturePath, Option<f64>> {
        let mut achieved = None;
        for st in stretches {
            for w in st.windows(2) {
                let (lo, hi) = (&w[0], &w[1]);
                if (lo.len - s) * (hi.len - s) <= 0.0 {
                    match self.bisect(lo, hi, s, tol) {
                        Ok(p) => return Ok(p),
                        Err(l) => achieved = Some(l),
                    }
                }
            }
        }
        Err(achieved)
    }

    /// Member with a major arc of least length among the samples.
    pub fn shortest_major(&self, stretches: &[Vec<ScanSample>]) -> Option<CurvaturePath> {
        let best = stretches
            .iter()
            .flatten()
            .filter(|s| s.major)
            .min_by(|a, b| a.len.total_cmp(&b.len))?;
        let mut h = best.hint;
        self.eval(best.lam, &mut h)
    }
}

/// Pose where the arc at `index` of `p` starts.
fn pose_before(p: &CurvaturePath, index: usize) -> OrientedPose {
    p.segments[..index]
        .iter()
        .fold(p.start, |q, s| propagate(&q, s, p.bound))
}

/// Bisector push for a same-handed CSC path `gm`. Needs the end centers within 4/kappa.
pub(crate) fn push_family(gm: &CurvaturePath, y: &OrientedPose) -> Option<Family> {
    let k = gm.bound;
    let r = k.radius();
    let a = gm.segments[0].turn()?;
    if gm.segments[2].turn()? != a {
        return None;
    }
    let x = gm.start;
    let p = turn_center(&x, k, a);
    let e = turn_center(y, k, a);
    let d = p.dist(e);
    if d > 4.0 * r || d < 1e-12 {
        return None;
    }
    let (vx, vy) = ((e.x - p.x) / d, (e.y - p.y) / d);
    // the straight lies left of the center line for right turns
    let n = match a {
        Turn::R => Point::new(-vy, vx),
        Turn::L => Point::new(vy, -vx),
    };
    let h = (4.0 * r * r - d * d / 4.0).max(0.0).sqrt();
    Some(Family {
        x,
        y: *y,
        k,
        shape: Shape::Push {
            p,
            e,
            a,
            mid: Point::new(0.5 * (p.x + e.x), 0.5 * (p.y + e.y)),
            n,
            h,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Pivot {
    Start,
    Goal,
}

/// Rolls a middle circle of direction `c.opposite()` around a pivot circle of
/// direction `c` at one end of the CSC path `gm`. At `lam = 0` the member is
/// `gm` itself; `span` is the signed total rotation.
pub(crate) fn roll_family(gm: &CurvaturePath, y: &OrientedPose, pivot: Pivot, c: Turn, span: f64) -> Option<Family> {
    let k = gm.bound;
    let x = gm.start;
    let a = gm.segments[0].turn()?;
    let b = gm.segments[2].turn()?;
    let (f, g, cn, m0) = match pivot {
        Pivot::Goal => {
            let g = turn_center(y, k, c);
            let m0 = if c != b {
                turn_center(y, k, b)
            } else {
                g.reflect_through(pose_before(gm, 2).point())
            };
            ((turn_center(&x, k, a), a), (g, c), g, m0)
        }
        Pivot::Start => {
            let f = turn_center(&x, k, c);
            let m0 = if c != a {
                turn_center(&x, k, a)
            } else {
                f.reflect_through(pose_before(gm, 1).point())
            };
            ((f, c), (turn_center(y, k, b), b), f, m0)
        }
    };
    Some(Family {
        x,
        y: *y,
        k,
        shape: Shape::Roll {
            f,
            g,
            m: c.opposite(),
            pivot: cn,
            a0: cn.angle_to(m0),
            span,
        },
    })
}

/// Signed rotation from `m0` around `cn` to the first point where the rolling
/// circle also touches the circle centered at `other`.
pub(crate) fn roll_span_to_contact(cn: Point, m0: Point, other: Point, r: f64, sg: f64) -> Option<f64> {
    let a0 = cn.angle_to(m0);
    circle_intersections(cn, other, 2.0 * r)
        .into_iter()
        .map(|q| mod_tau(sg * (cn.angle_to(q) - a0)))
        .min_by(|u, v| u.total_cmp(v))
        .map(|t| sg * t)
}

/// Four-circle family that starts at the short root of `first`-handed CCC.
pub(crate) fn swap_family(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound, short_root: &CurvaturePath) -> Option<Family> {
    let r = k.radius();
    let first = short_root.segments[0].turn()?;
    let (p, e, bstart, target, sg) = match first {
        Turn::R => (
            turn_center(x, k, Turn::R),
            turn_center(y, k, Turn::L),
            turn_center(y, k, Turn::R),
            turn_center(x, k, Turn::L),
            1.0,
        ),
        Turn::L => (
            turn_center(x, k, Turn::L),
            turn_center(y, k, Turn::R),
            turn_center(y, k, Turn::L),
            turn_center(x, k, Turn::R),
            -1.0,
        ),
    };
    let second = first.opposite();
    let m1 = turn_center(&pose_before(short_root, 1), k, second);
    let a0 = p.angle_to(m1);
    let span = sg * mod_tau(sg * (p.angle_to(target) - a0));
    let _ = r;
    Some(Family {
        x: *x,
        y: *y,
        k,
        shape: Shape::Swap {
            p,
            e,
            dirs: [first, second, first, second],
            a0,
            span,
            b0: bstart,
        },
    })
}

/// The eight full-turn rolls from a CSC path.
pub(crate) fn full_rolls(gm: &CurvaturePath, y: &OrientedPose) -> Vec<Family> {
    let mut out = Vec::new();
    for pivot in [Pivot::Goal, Pivot::Start] {
        for c in [Turn::L, Turn::R] {
            for sg in [1.0, -1.0] {
                if let Some(f) = roll_family(gm, y, pivot, c, sg * TAU) {
                    out.push(f);
                }
            }
        }
    }
    out
}
