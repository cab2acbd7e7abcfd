//! Tangent constructions between turn circles of equal radius.

use crate::geometry::{
    heading_on_circle, mod_tau, CurvatureBound, CurvaturePath, OrientedPose, PathSegment, Point,
    Turn, SNAP_EPS,
};

/// Arc swept turning `t` from heading `h0` to heading `h1`, in `[0, 2pi)`.
pub fn arc_between(t: Turn, h0: f64, h1: f64) -> f64 {
    match t {
        Turn::L => mod_tau(h1 - h0),
        Turn::R => mod_tau(h0 - h1),
    }
}

/// Common tangent leaving circle `(c1, d1)` and joining circle `(c2, d2)`.
/// Returns the straight's heading and length.
pub fn tangent(c1: Point, d1: Turn, c2: Point, d2: Turn, r: f64, slack: f64) -> Option<(f64, f64)> {
    let dist = c1.dist(c2);
    let ang = c1.angle_to(c2);
    if d1 == d2 {
        if dist <= SNAP_EPS {
            return None;
        }
        Some((ang, dist))
    } else {
        if dist < 2.0 * r - slack {
            return None;
        }
        let d = (dist * dist - 4.0 * r * r).max(0.0).sqrt();
        let off = (2.0 * r).atan2(d);
        let h = match d1 {
            Turn::L => ang + off,
            Turn::R => ang - off,
        };
        Some((h, d))
    }
}

/// Path from `x` to `y` that follows each circle in turn, joined by common
/// tangents. The first circle must pass through `x`, the last through `y`.
pub fn chain_path(
    x: &OrientedPose,
    y: &OrientedPose,
    circles: &[(Point, Turn)],
    k: CurvatureBound,
) -> Option<CurvaturePath> {
    let r = k.radius();
    let mut segs = Vec::with_capacity(2 * circles.len());
    let mut h = x.theta;
    for w in circles.windows(2) {
        let (c1, d1) = w[0];
        let (c2, d2) = w[1];
        let (th, len) = tangent(c1, d1, c2, d2, r, SNAP_EPS)?;
        segs.push(PathSegment::arc(d1, arc_between(d1, h, th)));
        h = th;
        if len > SNAP_EPS {
            segs.push(PathSegment::straight(len));
        }
    }
    let (_, dl) = *circles.last()?;
    segs.push(PathSegment::arc(dl, arc_between(dl, h, y.theta)));
    Some(CurvaturePath::new(*x, segs, k))
}

/// Intersections of two circles of radius `rad`.
pub fn circle_intersections(c1: Point, c2: Point, rad: f64) -> Vec<Point> {
    let vx = c2.x - c1.x;
    let vy = c2.y - c1.y;
    let d = vx.hypot(vy);
    if d > 2.0 * rad || d < SNAP_EPS {
        return Vec::new();
    }
    let h = (rad * rad - d * d / 4.0).max(0.0).sqrt();
    let mx = c1.x + vx / 2.0;
    let my = c1.y + vy / 2.0;
    let (px, py) = (-vy / d, vx / d);
    vec![
        Point::new(mx + h * px, my + h * py),
        Point::new(mx - h * px, my - h * py),
    ]
}

/// Heading at `p` when it is traversed on circle `c` in direction `t`.
pub fn heading_at(c: Point, t: Turn, p: Point) -> f64 {
    mod_tau(heading_on_circle(c, t, p))
}
