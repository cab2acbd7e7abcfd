//! Brute-force boundary-value search used to cross-check the closed forms.
//!
//! Works on short words over {L, R, S}. The heading and length constraints
//! are linear in the segment magnitudes, so they eliminate two unknowns;
//! the rest are gridded and the best cells polished by damped Gauss-Newton.
//! Nothing here uses turn-circle geometry.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{DubinsError, Result};
use crate::geometry::{validate, CurvatureBound, CurvaturePath, OrientedPose, PathSegment, POSE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Grid step of the shortest-path search, radians (or radius units for
    /// straights). The fixed-length search uses four times this step.
    pub grid_resolution: f64,
    /// Segment count of the fixed-length search.
    pub families: usize,
    pub refine_iters: usize,
    /// Slack on the requested length when the exact value finds nothing.
    pub length_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            grid_resolution: TAU / 96.0,
            families: 5,
            refine_iters: 80,
            length_tol: 1e-7,
        }
    }
}

const EXIST_SEEDS: usize = 5;
const SEED_RESIDUAL: f64 = 0.8;
const ACCEPT: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Letter {
    L,
    R,
    S,
}

impl Letter {
    fn sign(self) -> f64 {
        match self {
            Letter::L => 1.0,
            Letter::R => -1.0,
            Letter::S => 0.0,
        }
    }
}

fn words(n: usize) -> Vec<Vec<Letter>> {
    let mut out: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &out {
            for l in [Letter::L, Letter::R, Letter::S] {
                if w.last() != Some(&l) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

/// Unit-radius problem: start at the origin with heading `th0`, reach `(gx, gy)`.
#[derive(Debug, Clone, Copy)]
struct Frame {
    th0: f64,
    gx: f64,
    gy: f64,
    dth: f64,
}

impl Frame {
    fn new(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound) -> Frame {
        Frame {
            th0: x.theta,
            gx: (y.x - x.x) * k.kappa,
            gy: (y.y - x.y) * k.kappa,
            dth: y.theta - x.theta,
        }
    }

    fn residual(&self, w: &[Letter], p: &[f64]) -> (f64, f64) {
        let (mut x, mut y, mut t) = (0.0, 0.0, self.th0);
        for (l, &m) in w.iter().zip(p) {
            match l {
                Letter::S => {
                    x += m * t.cos();
                    y += m * t.sin();
                }
                _ => {
                    let sg = l.sign();
                    let chord = 2.0 * (0.5 * m).sin();
                    let d = t + sg * 0.5 * m;
                    x += chord * d.cos();
                    y += chord * d.sin();
                    t += sg * m;
                }
            }
        }
        (x - self.gx, y - self.gy)
    }
}

fn to_path(x: &OrientedPose, k: CurvatureBound, w: &[Letter], p: &[f64]) -> CurvaturePath {
    let segs = w
        .iter()
        .zip(p)
        .map(|(l, &m)| {
            let m = m.max(0.0);
            match l {
                Letter::L => PathSegment::left(m),
                Letter::R => PathSegment::right(m),
                Letter::S => PathSegment::straight(m / k.kappa),
            }
        })
        .collect();
    CurvaturePath::new(*x, segs, k).simplified()
}

/// Elimination of two unknowns by the heading and length equations.
struct Setup {
    word: Vec<Letter>,
    ea: usize,
    el: usize,
    free: Vec<usize>,
}

impl Setup {
    fn new(word: Vec<Letter>) -> Option<Setup> {
        let ea = word.iter().rposition(|l| *l != Letter::S)?;
        let el = match word.iter().rposition(|l| *l == Letter::S) {
            Some(i) => i,
            None => word
                .iter()
                .rposition(|l| l.sign() == -word[ea].sign())?,
        };
        let free = (0..word.len()).filter(|i| *i != ea && *i != el).collect();
        Some(Setup { word, ea, el, free })
    }

    fn complete(&self, z: &[f64], heading: f64, s: f64, p: &mut [f64]) {
        let mut h = heading;
        let mut len = s;
        for (j, &i) in self.free.iter().enumerate() {
            p[i] = z[j];
            h -= self.word[i].sign() * z[j];
            len -= z[j];
        }
        let sa = self.word[self.ea].sign();
        if self.word[self.el] == Letter::S {
            p[self.ea] = sa * h;
            p[self.el] = len - p[self.ea];
        } else {
            p[self.ea] = 0.5 * (len + sa * h);
            p[self.el] = 0.5 * (len - sa * h);
        }
    }
}

fn residuals(f: &Frame, st: &Setup, z: &[f64], heading: f64, s: f64, p: &mut [f64], out: &mut Vec<f64>) {
    st.complete(z, heading, s, p);
    let (ex, ey) = f.residual(&st.word, p);
    out.clear();
    out.push(ex);
    out.push(ey);
    out.extend(p.iter().map(|v| 10.0 * v.min(0.0)));
}

/// Solves the small dense system `a x = b` in place. Returns false if singular.
fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> bool {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).max_by(|i, j| a[*i][c].abs().total_cmp(&a[*j][c].abs())).unwrap_or(c);
        if a[piv][c].abs() < 1e-300 {
            return false;
        }
        a.swap(c, piv);
        b.swap(c, piv);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for q in c..n {
                a[r][q] -= f * a[c][q];
            }
            b[r] -= f * b[c];
        }
    }
    for c in (0..n).rev() {
        let mut v = b[c];
        for q in c + 1..n {
            v -= a[c][q] * b[q];
        }
        b[c] = v / a[c][c];
    }
    true
}

/// Damped Gauss-Newton on the free magnitudes, kept nonnegative.
fn polish(f: &Frame, st: &Setup, z0: &[f64], heading: f64, s: f64, iters: usize) -> Option<Vec<f64>> {
    let n = st.word.len();
    let m = z0.len();
    let mut z = z0.to_vec();
    let mut p = vec![0.0; n];
    let mut r = Vec::new();
    residuals(f, st, &z, heading, s, &mut p, &mut r);
    let mut cost: f64 = r.iter().map(|v| v * v).sum();
    let mut mu = 1e-3;
    let mut rp = Vec::new();
    let mut rm = Vec::new();
    for _ in 0..iters {
        if cost < ACCEPT * ACCEPT {
            break;
        }
        let mut jac = vec![vec![0.0; m]; r.len()];
        for j in 0..m {
            let h = 1e-7;
            let mut zp = z.clone();
            zp[j] += h;
            let mut zm = z.clone();
            zm[j] -= h;
            residuals(f, st, &zp, heading, s, &mut p, &mut rp);
            residuals(f, st, &zm, heading, s, &mut p, &mut rm);
            for i in 0..r.len() {
                jac[i][j] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let mut improved = false;
        for _ in 0..12 {
            let mut a = vec![vec![0.0; m]; m];
            let mut g = vec![0.0; m];
            for i in 0..r.len() {
                for c in 0..m {
                    g[c] -= jac[i][c] * r[i];
                    for q in 0..m {
                        a[c][q] += jac[i][c] * jac[i][q];
                    }
                }
            }
            for c in 0..m {
                a[c][c] += mu * (1.0 + a[c][c]);
            }
            if !solve_dense(&mut a, &mut g) {
                mu *= 10.0;
                continue;
            }
            let zn: Vec<f64> = z.iter().zip(&g).map(|(v, d)| (v + d).max(0.0)).collect();
            residuals(f, st, &zn, heading, s, &mut p, &mut rp);
            let c2: f64 = rp.iter().map(|v| v * v).sum();
            if c2 < cost {
                z = zn;
                std::mem::swap(&mut r, &mut rp);
                cost = c2;
                mu = (mu * 0.3).max(1e-12);
                improved = true;
                break;
            }
            mu *= 10.0;
        }
        if !improved {
            break;
        }
    }
    residuals(f, st, &z, heading, s, &mut p, &mut r);
    let ok = r[0].hypot(r[1]) < ACCEPT && p.iter().all(|v| *v >= -1e-12);
    ok.then_some(p)
}

fn heading_offsets(dth: f64, budget: f64) -> Vec<f64> {
    let kmax = ((budget + dth.abs()) / TAU).ceil() as i64 + 1;
    (-kmax..=kmax)
        .map(|k| dth + TAU * k as f64)
        .filter(|h| h.abs() <= budget + 1e-9)
        .collect()
}

fn search_word(f: &Frame, st: &Setup, s: f64, cfg: &OracleConfig) -> Option<Vec<f64>> {
    let n = st.word.len();
    let m = st.free.len();
    let top = s.min(TAU);
    // the fixed-length search has one more free dimension, so it runs 4x coarser
    let g = ((TAU / (4.0 * cfg.grid_resolution)).ceil() as usize).max(8);
    let cells = g.pow(m as u32);
    let mut p = vec![0.0; n];
    let mut z = vec![0.0; m];
    for heading in heading_offsets(f.dth, s) {
        let mut seeds: Vec<(f64, Vec<f64>)> = Vec::new();
        for cell in 0..cells {
            let mut c = cell;
            for v in z.iter_mut() {
                *v = top * (c % g) as f64 / (g - 1) as f64;
                c /= g;
            }
            st.complete(&z, heading, s, &mut p);
            if p.iter().any(|v| *v < 0.0) {
                continue;
            }
            let (ex, ey) = f.residual(&st.word, &p);
            let res = ex.hypot(ey);
            if res < SEED_RESIDUAL {
                seeds.push((res, z.clone()));
            }
        }
        seeds.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (_, z0) in seeds.iter().take(EXIST_SEEDS) {
            if let Some(p) = polish(f, st, z0, heading, s, cfg.refine_iters) {
                return Some(p);
            }
        }
    }
    None
}

/// Witness path of exactly length `s` (to rounding), if the search finds one.
pub fn search_path_with_length(
    x: &OrientedPose,
    y: &OrientedPose,
    k: CurvatureBound,
    s: f64,
    cfg: &OracleConfig,
) -> Option<CurvaturePath> {
    if !(s > 0.0) || !s.is_finite() {
        return None;
    }
    let f = Frame::new(x, y, k);
    let sn = s * k.kappa;
    let setups: Vec<Setup> = words(cfg.families.max(3)).into_iter().filter_map(Setup::new).collect();
    let found = AtomicUsize::new(usize::MAX);
    let next = AtomicUsize::new(0);
    let results = crate::par::workers(crate::par::available(), || {
        let mut best: Option<(usize, Vec<f64>)> = None;
        loop {
            let i = next.fetch_add(1, Ordering::SeqCst);
            if i >= setups.len() || i > found.load(Ordering::SeqCst) {
                break;
            }
            if let Some(p) = search_word(&f, &setups[i], sn, cfg) {
                found.fetch_min(i, Ordering::SeqCst);
                if best.as_ref().is_none_or(|b| i < b.0) {
                    best = Some((i, p));
                }
                break;
            }
        }
        best
    });
    let (i, p) = results.into_iter().flatten().min_by_key(|(i, _)| *i)?;
    let path = to_path(x, k, &setups[i].word, &p);
    let rep = validate(&path, x, y, POSE_TOL);
    (rep.passes(POSE_TOL)).then_some(path)
}

/// Whether some path of length `s` joins the poses, by exhaustive search.
/// A false answer is evidence, not proof.
pub fn oracle_exists_length(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound, s: f64, cfg: &OracleConfig) -> bool {
    if search_path_with_length(x, y, k, s, cfg).is_some() {
        return true;
    }
    [s - cfg.length_tol, s + cfg.length_tol]
        .into_iter()
        .any(|v| search_path_with_length(x, y, k, v, cfg).is_some())
}

/// Newton solve of the two position equations for a three-letter word.
fn newton2(f: &Frame, w: &[Letter], idx: [usize; 2], elim: usize, heading: f64, z0: [f64; 2], iters: usize) -> Option<[f64; 3]> {
    let sa = w[elim].sign();
    let fill = |z: [f64; 2]| {
        let mut p = [0.0; 3];
        p[idx[0]] = z[0];
        p[idx[1]] = z[1];
        let h = heading - w[idx[0]].sign() * z[0] - w[idx[1]].sign() * z[1];
        p[elim] = sa * h;
        p
    };
    let mut z = z0;
    for _ in 0..iters {
        let p = fill(z);
        let (ex, ey) = f.residual(w, &p);
        if ex.hypot(ey) < ACCEPT {
            break;
        }
        let h = 1e-7;
        let mut jac = [[0.0; 2]; 2];
        for j in 0..2 {
            let mut zp = z;
            zp[j] += h;
            let mut zm = z;
            zm[j] -= h;
            let (ax, ay) = f.residual(w, &fill(zp));
            let (bx, by) = f.residual(w, &fill(zm));
            jac[0][j] = (ax - bx) / (2.0 * h);
            jac[1][j] = (ay - by) / (2.0 * h);
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det.abs() < 1e-14 {
            return None;
        }
        let dx = (-ex * jac[1][1] + ey * jac[0][1]) / det;
        let dy = (ex * jac[1][0] - ey * jac[0][0]) / det;
        z = [(z[0] + dx).max(0.0), (z[1] + dy).max(0.0)];
    }
    let p = fill(z);
    let (ex, ey) = f.residual(w, &p);
    (ex.hypot(ey) < ACCEPT && p.iter().all(|v| *v >= -1e-12) && p[elim] <= TAU).then_some(p)
}

/// Length of the shortest path found over all three-segment words.
pub fn oracle_shortest(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound, cfg: &OracleConfig) -> Result<f64> {
    if x.same_as(y) {
        return Err(DubinsError::DegenerateInput);
    }
    let f = Frame::new(x, y, k);
    let dmax = f.gx.hypot(f.gy) + 4.0;
    let g = ((TAU / cfg.grid_resolution).ceil() as usize).max(8);
    let mut best = f64::INFINITY;
    for w in words(3) {
        let Some(elim) = w.iter().rposition(|l| *l != Letter::S) else { continue };
        let idx: Vec<usize> = (0..3).filter(|i| *i != elim).collect();
        let idx = [idx[0], idx[1]];
        let top = |i: usize| if w[i] == Letter::S { dmax } else { TAU };
        for heading in heading_offsets(f.dth, 3.0 * TAU) {
            let mut cells: Vec<(f64, [f64; 2])> = Vec::new();
            let mut p = [0.0; 3];
            for a in 0..g {
                for b in 0..g {
                    let z = [top(idx[0]) * a as f64 / (g - 1) as f64, top(idx[1]) * b as f64 / (g - 1) as f64];
                    p[idx[0]] = z[0];
                    p[idx[1]] = z[1];
                    let h = heading - w[idx[0]].sign() * z[0] - w[idx[1]].sign() * z[1];
                    p[elim] = w[elim].sign() * h;
                    if p[elim] < -0.5 || p[elim] > TAU + 0.5 {
                        continue;
                    }
                    let (ex, ey) = f.residual(&w, &p);
                    cells.push((ex.hypot(ey), z));
                }
            }
            cells.sort_by(|a, b| a.0.total_cmp(&b.0));
            for (res, z0) in cells.iter().take(24) {
                if *res > 1.0 {
                    break;
                }
                if let Some(p) = newton2(&f, &w, idx, elim, heading, *z0, cfg.refine_iters.max(40)) {
                    best = best.min(p.iter().sum::<f64>());
                }
            }
        }
    }
    if best.is_finite() {
        Ok(best / k.kappa)
    } else {
        Err(DubinsError::NoSolutionFound("grid too coarse for this instance".into()))
    }
}
