//! Number formatting, CSV traces and SVG plots.

use dubins_core::{sample, CurvaturePath, OrientedPose, Result, SegmentKind};
use std::fmt::Write as _;

/// Trace sampling step in units of the turn radius.
pub const TRACE_STEP: f64 = 1e-3;

/// `x` with 12 significant digits; plain decimals unless tiny.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x.is_infinite() { if x > 0.0 { "+inf".into() } else { "-inf".into() } } else { "0".into() };
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if exp < -4 {
        return sci;
    }
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Rounds to 12 significant digits so JSON reports do not depend on last-bit noise.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap();
    if r == 0.0 { 0.0 } else { r }
}

pub fn kind_letter(k: SegmentKind) -> &'static str {
    match k {
        SegmentKind::LeftArc => "L",
        SegmentKind::RightArc => "R",
        SegmentKind::Straight => "S",
    }
}

pub fn trace_csv(path: &CurvaturePath) -> Result<String> {
    let step = TRACE_STEP * path.bound.radius();
    let mut out = String::from("arclength,x,y,theta,segment_index,segment_kind\n");
    for s in sample(path, step)? {
        let kind = path.segments.get(s.segment_index).map_or("S", |seg| kind_letter(seg.kind));
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            sig12(s.arclength),
            sig12(s.pose.x),
            sig12(s.pose.y),
            sig12(s.pose.theta),
            s.segment_index,
            kind
        );
    }
    Ok(out)
}

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Polyline plot of paths with start and goal markers. Y grows upward.
pub fn svg(paths: &[(String, CurvaturePath, OrientedPose)]) -> Result<String> {
    let mut polylines = Vec::new();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (_, p, _) in paths {
        let pts: Vec<(f64, f64)> = sample(p, 0.02 * p.bound.radius())?.iter().map(|s| (s.pose.x, s.pose.y)).collect();
        for &(x, y) in &pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        polylines.push(pts);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1.0);
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let stroke = 0.004 * w.max(h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="640" height="{}">"#,
        sig12(x0 - pad),
        sig12(-(y1 + pad)),
        sig12(w),
        sig12(h),
        (640.0 * h / w).round()
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" fill="none" stroke-width="{}">"#, sig12(stroke));
    for (i, ((id, p, goal), pts)) in paths.iter().zip(&polylines).enumerate() {
        let c = COLORS[i % COLORS.len()];
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", sig12(*x), sig12(*y))).collect();
        let _ = writeln!(out, r#"<polyline stroke="{c}" points="{}"><title>{id}</title></polyline>"#, coords.join(" "));
        for (pose, fill) in [(&p.start, "none"), (goal, c)] {
            let (tx, ty) = pose.tangent();
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}" stroke="{c}" fill="{fill}"/><line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{c}"/>"#,
                sig12(pose.x),
                sig12(pose.y),
                sig12(3.0 * stroke),
                sig12(pose.x),
                sig12(pose.y),
                sig12(pose.x + 12.0 * stroke * tx),
                sig12(pose.y + 12.0 * stroke * ty)
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(9.72186135343199), "9.72186135343");
        assert_eq!(sig12(-0.5), "-0.500000000000");
        assert_eq!(sig12(1234.5), "1234.50000000");
        assert_eq!(sig12(1.5e-16), "1.50000000000e-16");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(f64::INFINITY), "+inf");
    }

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round12(0.1 + 0.2), 0.3);
        assert_eq!(round12(-0.0), 0.0);
    }
}
