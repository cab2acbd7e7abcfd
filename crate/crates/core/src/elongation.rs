//! Synthesis of a path of any feasible length.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{DubinsError, Result};
use crate::families::{
    full_rolls, push_family, roll_family, roll_span_to_contact, swap_family, Family, Pivot, ScanSample,
    JUMP_LIMIT, SCAN_STEPS,
};
use crate::feasibility::{analyze, Analysis, L2Source};
use crate::geometry::{
    path_length, propagate, turn_center, validate, CurvatureBound, CurvaturePath, OrientedPose,
    PathSegment, Point, SegmentKind, Turn, LENGTH_TOL, POSE_TOL,
};
use crate::oracle::{search_path_with_length, OracleConfig};
use crate::words::{CandidateKey, Word};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElongationRequest {
    pub start: OrientedPose,
    pub goal: OrientedPose,
    pub bound: CurvatureBound,
    pub target_length: f64,
    pub tol: f64,
}

impl ElongationRequest {
    pub fn new(start: OrientedPose, goal: OrientedPose, bound: CurvatureBound, target_length: f64) -> Self {
        ElongationRequest {
            start,
            goal,
            bound,
            target_length,
            tol: LENGTH_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrategyTag {
    ParallelInsert,
    WaveDeform,
    DiskPush,
    LoopThenParallel,
    Composite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Elongation {
    pub path: CurvaturePath,
    pub strategy: StrategyTag,
    /// Length of the path the strategy started from.
    pub base_length: f64,
}

/// Adds `delta` of straight on both sides of a semicircle inside the first
/// arc of at least pi. Endpoints stay put and the length grows by `2 delta`.
pub fn insert_parallel_extension(path: &CurvaturePath, delta: f64) -> Result<CurvaturePath> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(DubinsError::InvalidParameter(format!("delta must be >= 0, got {delta}")));
    }
    let i = path.major_arc().ok_or(DubinsError::NoParallelTangents)?;
    if delta == 0.0 {
        return Ok(path.clone());
    }
    let arc = path.segments[i];
    let turn = arc.turn().expect("major arc");
    let mut segs = Vec::with_capacity(path.segments.len() + 3);
    segs.extend_from_slice(&path.segments[..i]);
    segs.push(PathSegment::straight(delta));
    segs.push(PathSegment::arc(turn, PI));
    segs.push(PathSegment::straight(delta));
    if arc.magnitude > PI {
        segs.push(PathSegment::arc(turn, arc.magnitude - PI));
    }
    segs.extend_from_slice(&path.segments[i + 1..]);
    Ok(CurvaturePath::new(path.start, segs, path.bound))
}

/// Extra length of a wave of half-angle `alpha`.
pub fn wave_elongation(alpha: f64, k: CurvatureBound) -> f64 {
    4.0 * (alpha - alpha.sin()) / k.kappa
}

/// Replaces the first `4 sin(alpha)/kappa` of the straight at `straight_index`
/// by the arcs `L alpha, R 2alpha, L alpha`.
pub fn wave_deform(path: &CurvaturePath, straight_index: usize, alpha: f64) -> Result<CurvaturePath> {
    let seg = path
        .segments
        .get(straight_index)
        .filter(|s| s.kind == SegmentKind::Straight)
        .ok_or(DubinsError::NotAStraight { index: straight_index })?;
    if !(alpha > 0.0 && alpha <= FRAC_PI_2) {
        return Err(DubinsError::InvalidParameter(format!(
            "wave angle must lie in (0, pi/2], got {alpha}"
        )));
    }
    let chord = 4.0 * alpha.sin() / path.bound.kappa;
    if seg.magnitude < chord - 1e-12 {
        return Err(DubinsError::SegmentTooShort {
            length: seg.magnitude,
            required: chord,
        });
    }
    let rest = (seg.magnitude - chord).max(0.0);
    let mut segs = Vec::with_capacity(path.segments.len() + 3);
    segs.extend_from_slice(&path.segments[..straight_index]);
    segs.push(PathSegment::left(alpha));
    segs.push(PathSegment::right(2.0 * alpha));
    segs.push(PathSegment::left(alpha));
    segs.push(PathSegment::straight(rest));
    segs.extend_from_slice(&path.segments[straight_index + 1..]);
    Ok(CurvaturePath::new(path.start, segs, path.bound))
}

/// Prepends a full turn on the side of the first arc (left if the path starts straight).
pub fn full_loop_insert(path: &CurvaturePath) -> CurvaturePath {
    let turn = path
        .segments
        .iter()
        .find(|s| s.magnitude > 0.0)
        .and_then(|s| s.turn())
        .unwrap_or(Turn::L);
    let mut segs = Vec::with_capacity(path.segments.len() + 1);
    segs.push(PathSegment::arc(turn, TAU));
    segs.extend_from_slice(&path.segments);
    CurvaturePath::new(path.start, segs, path.bound)
}

// resolution of the branch table kept for swap stages
const HINT_STEPS: usize = 4096;

#[derive(Debug, Clone)]
struct Stage {
    family: Family,
    hints: Vec<Point>,
    scan: Vec<ScanSample>,
    start: CurvaturePath,
    end: CurvaturePath,
}

impl Stage {
    fn build(family: Family, start: CurvaturePath, end: CurvaturePath) -> Option<Stage> {
        let stretches = family.scan(SCAN_STEPS, 1, SCAN_STEPS - 1);
        if stretches.len() != 1 || stretches[0].len() != SCAN_STEPS - 1 {
            return None;
        }
        let scan = stretches.into_iter().next()?;
        let (l0, l1) = (path_length(&start), path_length(&end));
        if (scan[0].len - l0).abs() > JUMP_LIMIT || (scan[scan.len() - 1].len - l1).abs() > JUMP_LIMIT {
            return None;
        }
        let hints = match family.shape {
            crate::families::Shape::Swap { .. } => {
                let mut h = family.initial_hint();
                let mut out = Vec::with_capacity(HINT_STEPS + 1);
                out.push(h);
                for i in 1..=HINT_STEPS {
                    let mut hh = h;
                    if family.eval(i as f64 / HINT_STEPS as f64, &mut hh).is_some() {
                        h = hh;
                    }
                    out.push(h);
                }
                out
            }
            _ => Vec::new(),
        };
        let mut full = Vec::with_capacity(scan.len() + 2);
        full.push(ScanSample {
            lam: 0.0,
            len: l0,
            hint: family.initial_hint(),
            major: start.major_arc().is_some(),
        });
        full.extend(scan);
        full.push(ScanSample {
            lam: 1.0,
            len: l1,
            hint: hints.last().copied().unwrap_or_default(),
            major: end.major_arc().is_some(),
        });
        Some(Stage {
            family,
            hints,
            scan: full,
            start,
            end,
        })
    }

    fn eval(&self, mu: f64) -> Option<CurvaturePath> {
        if mu <= 0.0 {
            return Some(self.start.clone());
        }
        if mu >= 1.0 {
            return Some(self.end.clone());
        }
        let mut h = if self.hints.is_empty() {
            Point::default()
        } else {
            self.hints[((mu * HINT_STEPS as f64) as usize).min(HINT_STEPS)]
        };
        self.family.eval(mu, &mut h)
    }

    fn solve(&self, s: f64, tol: f64) -> std::result::Result<CurvaturePath, Option<f64>> {
        for end in [&self.start, &self.end] {
            if (path_length(end) - s).abs() <= tol {
                return Ok(end.clone());
            }
        }
        // the exact endpoints carry no branch hint, so bracket on interior samples first
        let n = self.scan.len();
        let interior = &self.scan[1..n - 1];
        match self.family.solve(&[interior.to_vec()], s, tol) {
            Ok(p) => Ok(p),
            Err(a) => {
                let edges = [self.scan[..2].to_vec(), self.scan[n - 2..].to_vec()];
                self.family.solve(&edges, s, tol).map_err(|b| b.or(a))
            }
        }
    }
}

/// Continuous deformation of the shortest path of a nabla-O pair into the
/// short CCC root of length `l1`. A disk pressed on the straight (or rolled
/// around an end circle for mixed words) reaches a short root; if that is not
/// the longer one, a four-circle swap carries it over.
#[derive(Debug, Clone)]
pub struct DiskPush {
    stages: Vec<Stage>,
}

impl DiskPush {
    pub fn new(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound) -> Result<DiskPush> {
        let a = analyze(x, y, k)?;
        Self::from_analysis(&a)
    }

    pub fn from_analysis(an: &Analysis) -> Result<DiskPush> {
        if !an.classification.in_nabla_o {
            return Err(DubinsError::NotInNablaO);
        }
        let (x, y, k) = (&an.start, &an.goal, an.bound);
        let r = k.radius();
        let gm = &an.shortest;
        let t = &an.table;
        let l1_key = if t.length(CandidateKey::RlrShort) >= t.length(CandidateKey::LrlShort) {
            CandidateKey::RlrShort
        } else {
            CandidateKey::LrlShort
        };
        let a = gm.segments[0].turn().expect("csc");
        let b = gm.segments[2].turn().expect("csc");
        let mut firsts: Vec<Family> = Vec::new();
        if a == b {
            firsts.extend(push_family(gm, y));
        } else {
            for (pivot, c, other) in [
                (Pivot::Goal, a, turn_center(x, k, a)),
                (Pivot::Start, b, turn_center(y, k, b)),
            ] {
                for sg in [1.0, -1.0] {
                    let Some(probe) = roll_family(gm, y, pivot, c, 0.0) else { continue };
                    let crate::families::Shape::Roll { pivot: cn, a0, .. } = probe.shape else { continue };
                    let m0 = cn.offset(a0, 2.0 * r);
                    if let Some(span) = roll_span_to_contact(cn, m0, other, r, sg) {
                        firsts.extend(roll_family(gm, y, pivot, c, span));
                    }
                }
            }
        }
        for fam in firsts {
            let Some(root_key) = reached_root(&fam, an) else { continue };
            if !matches!(root_key, CandidateKey::RlrShort | CandidateKey::LrlShort) {
                continue;
            }
            let root = t.get(root_key).expect("root exists").clone();
            let Some(first) = Stage::build(fam, gm.clone(), root.clone()) else { continue };
            if root_key == l1_key || (path_length(&root) - t.length(l1_key)).abs() <= 1e-12 {
                return Ok(DiskPush { stages: vec![first] });
            }
            let target = t.get(l1_key).expect("l1 root").clone();
            if let Some(sw) = swap_family(x, y, k, &root) {
                if let Some(second) = Stage::build(sw, root, target) {
                    return Ok(DiskPush {
                        stages: vec![first, second],
                    });
                }
            }
        }
        Err(DubinsError::NoSolutionFound(
            "no continuous disk push reaches the l1 root".into(),
        ))
    }

    fn locate(&self, lam: f64) -> (usize, f64) {
        let n = self.stages.len() as f64;
        let lam = lam.clamp(0.0, 1.0);
        let i = ((lam * n) as usize).min(self.stages.len() - 1);
        (i, lam * n - i as f64)
    }

    pub fn eval(&self, lam: f64) -> Option<CurvaturePath> {
        let (i, mu) = self.locate(lam);
        self.stages[i].eval(mu)
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    /// Member of length `s`, for `s` in the range the family sweeps.
    pub fn solve(&self, s: f64, tol: f64) -> std::result::Result<CurvaturePath, Option<f64>> {
        let mut achieved = None;
        for st in &self.stages {
            match st.solve(s, tol) {
                Ok(p) => return Ok(p),
                Err(a) => achieved = achieved.or(a),
            }
        }
        Err(achieved)
    }
}

/// Which CCC root the family reaches at `lam = 1`, matched by middle circle.
fn reached_root(fam: &Family, an: &Analysis) -> Option<CandidateKey> {
    let r = an.bound.radius();
    let crate::families::Shape::Roll { pivot, a0, span, m, .. } = fam.shape else {
        // the push ends at the root on its side of the center line
        let crate::families::Shape::Push { mid, n, h, a, .. } = fam.shape else { return None };
        let mc = Point::new(mid.x + h * n.x, mid.y + h * n.y);
        return match_root(an, if a == Turn::R { Word::RLR } else { Word::LRL }, mc, r);
    };
    let mc = pivot.offset(a0 + span, 2.0 * r);
    let word = if m == Turn::L { Word::RLR } else { Word::LRL };
    match_root(an, word, mc, r)
}

fn match_root(an: &Analysis, w: Word, mc: Point, r: f64) -> Option<CandidateKey> {
    let keys = match w {
        Word::RLR => [CandidateKey::RlrShort, CandidateKey::RlrLong],
        _ => [CandidateKey::LrlShort, CandidateKey::LrlLong],
    };
    keys.into_iter()
        .filter_map(|key| {
            let p = an.table.get(key)?;
            let first = propagate(&p.start, &p.segments[0], p.bound);
            let c = turn_center(&first, p.bound, w.first().opposite());
            Some((key, c.dist(mc)))
        })
        .filter(|(_, d)| *d < 1e-6 * r.max(1.0))
        .min_by(|u, v| u.1.total_cmp(&v.1))
        .map(|(key, _)| key)
}

/// Member `lam` of the disk-push family of a nabla-O pair.
pub fn disk_push_family(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound, lambda: f64) -> Result<CurvaturePath> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(DubinsError::InvalidParameter(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    let fam = DiskPush::new(x, y, k)?;
    fam.eval(lambda)
        .ok_or_else(|| DubinsError::NoSolutionFound(format!("tangency lost at lambda {lambda}")))
}

fn checked(path: CurvaturePath, req: &ElongationRequest) -> Option<CurvaturePath> {
    let rep = validate(&path, &req.start, &req.goal, POSE_TOL);
    (rep.passes(POSE_TOL) && (rep.length - req.target_length).abs() <= req.tol).then_some(path)
}

fn parallel_to(base: &CurvaturePath, s: f64) -> Option<CurvaturePath> {
    let l = path_length(base);
    if s < l {
        return None;
    }
    insert_parallel_extension(base, 0.5 * (s - l)).ok()
}

fn wave_to(gm: &CurvaturePath, s: f64, tol: f64) -> Option<CurvaturePath> {
    let k = gm.bound;
    let l = path_length(gm);
    let need = s - l;
    let full = wave_elongation(FRAC_PI_2, k);
    if need >= full {
        let w = wave_deform(gm, 1, FRAC_PI_2).ok()?;
        return parallel_to(&w, s);
    }
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    let mut alpha = hi;
    for _ in 0..200 {
        alpha = 0.5 * (lo + hi);
        let d = wave_elongation(alpha, k) - need;
        if d.abs() <= 0.25 * tol {
            break;
        }
        if d < 0.0 {
            lo = alpha;
        } else {
            hi = alpha;
        }
    }
    wave_deform(gm, 1, alpha).ok()
}

/// Scans every generic family and keeps what is needed for `s`.
fn generic(an: &Analysis, req: &ElongationRequest) -> std::result::Result<CurvaturePath, Option<f64>> {
    let s = req.target_length;
    let gm = &an.shortest;
    let mut achieved = None;
    // cheapest closed-form bases first
    let mut bases: Vec<CurvaturePath> = CandidateKey::ALL
        .iter()
        .filter_map(|k| an.table.get(*k))
        .filter(|p| p.major_arc().is_some())
        .cloned()
        .collect();
    bases.push(full_loop_insert(gm));
    let mut fams: Vec<Family> = Vec::new();
    if gm.segments.len() == 3 && an.shortest_key.word().is_csc() {
        fams.extend(push_family(gm, &req.goal));
        fams.extend(full_rolls(gm, &req.goal));
    }
    for key in [CandidateKey::RlrShort, CandidateKey::LrlShort] {
        if let Some(root) = an.table.get(key) {
            fams.extend(swap_family(&req.start, &req.goal, req.bound, root));
        }
    }
    let scans: Vec<_> = fams.iter().map(|f| f.scan(SCAN_STEPS, 0, SCAN_STEPS)).collect();
    for (f, st) in fams.iter().zip(&scans) {
        if let Some(p) = f.shortest_major(st) {
            bases.push(p);
        }
    }
    bases.sort_by(|p, q| path_length(p).total_cmp(&path_length(q)));
    for b in &bases {
        if let Some(p) = parallel_to(b, s).and_then(|p| checked(p, req)) {
            return Ok(p);
        }
    }
    for (f, st) in fams.iter().zip(&scans) {
        match f.solve(st, s, req.tol) {
            Ok(p) => {
                if let Some(p) = checked(p, req) {
                    return Ok(p);
                }
            }
            Err(a) => achieved = achieved.or(a),
        }
    }
    Err(achieved)
}

fn numeric(req: &ElongationRequest) -> Option<CurvaturePath> {
    let cfg = OracleConfig::default();
    search_path_with_length(&req.start, &req.goal, req.bound, req.target_length, &cfg)
        .and_then(|p| checked(p, req))
}

/// Path from start to goal whose length is the requested target.
pub fn elongate_to(req: &ElongationRequest) -> Result<Elongation> {
    let an = analyze(&req.start, &req.goal, req.bound)?;
    elongate_with(&an, req)
}

/// As [`elongate_to`], reusing an existing analysis of the pose pair.
pub fn elongate_with(an: &Analysis, req: &ElongationRequest) -> Result<Elongation> {
    let s = req.target_length;
    if !(req.tol > 0.0) || !(s > 0.0) || !s.is_finite() {
        return Err(DubinsError::InvalidParameter(format!(
            "target {s} and tolerance {} must be positive",
            req.tol
        )));
    }
    let gm = &an.shortest;
    let l_m = an.l_m();
    if (s - l_m).abs() <= req.tol {
        return Ok(Elongation {
            path: gm.clone(),
            strategy: StrategyTag::ParallelInsert,
            base_length: l_m,
        });
    }
    if !an.set.contains(s) {
        return Err(DubinsError::InfeasibleLength {
            target: s,
            set: an.set.to_string(),
        });
    }
    let c = &an.classification;
    let done = |path: CurvaturePath, strategy: StrategyTag, base: f64| Elongation {
        path,
        strategy,
        base_length: base,
    };
    use crate::feasibility::OSet;
    if c.ccc_shortest || c.has(OSet::O1) || c.has(OSet::O2) {
        if let Some(p) = parallel_to(gm, s).and_then(|p| checked(p, req)) {
            return Ok(done(p, StrategyTag::ParallelInsert, l_m));
        }
    } else if c.has(OSet::O3) {
        if let Some(p) = wave_to(gm, s, req.tol).and_then(|p| checked(p, req)) {
            return Ok(done(p, StrategyTag::WaveDeform, l_m));
        }
    } else if let Some(g) = an.gap() {
        if s <= g.l1 {
            if let Ok(dp) = DiskPush::from_analysis(an) {
                if let Some(p) = dp.solve(s, req.tol).ok().and_then(|p| checked(p, req)) {
                    return Ok(done(p, StrategyTag::DiskPush, l_m));
                }
            }
        } else if let Some(p) = parallel_to(&g.l2_path, s).and_then(|p| checked(p, req)) {
            let tag = if g.l2_source == L2Source::FullLoop {
                StrategyTag::LoopThenParallel
            } else {
                StrategyTag::ParallelInsert
            };
            return Ok(done(p, tag, g.l2));
        }
    }
    let achieved = match generic(an, req) {
        Ok(p) => return Ok(done(p, StrategyTag::Composite, l_m)),
        Err(a) => a,
    };
    if let Some(p) = numeric(req) {
        return Ok(done(p, StrategyTag::Composite, l_m));
    }
    Err(match achieved {
        Some(a) if a.is_finite() => DubinsError::ToleranceNotMet { target: s, achieved: a },
        _ => DubinsError::NoSolutionFound(format!("no construction reached length {s}")),
    })
}
