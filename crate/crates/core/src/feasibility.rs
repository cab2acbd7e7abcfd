//! Classification of pose pairs and their exact feasible length sets.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::elongation::full_loop_insert;
use crate::error::{DubinsError, Result};
use crate::geometry::{path_length, turn_centers, CurvatureBound, CurvaturePath, OrientedPose};
use crate::words::{candidate_table, CandidateKey, CandidateTable, Word};

/// Slack toward membership for the O thresholds.
pub const MEMBERSHIP_SLACK: f64 = 1e-9;
/// A computed gap narrower than this is dropped.
pub const MIN_GAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OSet {
    /// First arc of the shortest path is at least pi.
    O1,
    /// Last arc is at least pi.
    O2,
    /// Straight is at least 4/kappa.
    O3,
    /// Right turn centers at least 4/kappa apart.
    O4,
    /// Left turn centers at least 4/kappa apart.
    O5,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub shortest_word: Word,
    pub o_memberships: Vec<OSet>,
    pub in_nabla_o: bool,
    pub ccc_shortest: bool,
}

impl Classification {
    pub fn has(&self, o: OSet) -> bool {
        self.o_memberships.contains(&o)
    }
}

/// Which candidate realizes the upper gap bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum L2Source {
    FullLoop,
    LrlLong,
    RlrLong,
    Csc(Word),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapBounds {
    pub l1: f64,
    pub l2: f64,
    pub l2_source: L2Source,
    pub l2_path: CurvaturePath,
}

/// `[l_m, inf)` or `[l_m, l1] U [l2, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibleLengthSet {
    pub l_m: f64,
    pub gap: Option<(f64, f64)>,
}

impl FeasibleLengthSet {
    pub fn contains(&self, s: f64) -> bool {
        contains(self, s)
    }

    /// Smallest element of the set that is at least `s`, if `s` is not below `l_m`.
    pub fn next_at_or_above(&self, s: f64) -> f64 {
        if s < self.l_m {
            return self.l_m;
        }
        match self.gap {
            Some((l1, l2)) if s > l1 && s < l2 => l2,
            _ => s,
        }
    }
}

impl std::fmt::Display for FeasibleLengthSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.gap {
            None => write!(f, "[{:.6}, inf)", self.l_m),
            Some((l1, l2)) => write!(f, "[{:.6}, {:.6}] U [{:.6}, inf)", self.l_m, l1, l2),
        }
    }
}

pub fn contains(set: &FeasibleLengthSet, s: f64) -> bool {
    if !(s >= set.l_m) {
        return false;
    }
    match set.gap {
        Some((l1, l2)) => s <= l1 || s >= l2,
        None => true,
    }
}

/// Everything the feasibility analysis derives for one pose pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub start: OrientedPose,
    pub goal: OrientedPose,
    pub bound: CurvatureBound,
    pub table: CandidateTable,
    pub shortest_key: CandidateKey,
    pub shortest: CurvaturePath,
    pub classification: Classification,
    /// Present for every nabla-O pair, even when the computed bounds are out of order.
    pub bounds: Option<GapBounds>,
    pub set: FeasibleLengthSet,
}

impl Analysis {
    pub fn l_m(&self) -> f64 {
        self.set.l_m
    }

    /// Bounds that actually delimit a gap.
    pub fn gap(&self) -> Option<&GapBounds> {
        self.set.gap.and(self.bounds.as_ref())
    }
}

fn classify_table(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound, t: &CandidateTable) -> Classification {
    let (key, p) = t.best();
    let word = key.word();
    let mut o = Vec::new();
    if word.is_csc() {
        let r = k.radius();
        let s = &p.segments;
        if s[0].magnitude >= PI - MEMBERSHIP_SLACK {
            o.push(OSet::O1);
        }
        if s[2].magnitude >= PI - MEMBERSHIP_SLACK {
            o.push(OSet::O2);
        }
        if s[1].magnitude >= 4.0 * r - MEMBERSHIP_SLACK {
            o.push(OSet::O3);
        }
        let (rx, lx) = turn_centers(x, k);
        let (ry, ly) = turn_centers(y, k);
        if rx.dist(ry) >= 4.0 * r - MEMBERSHIP_SLACK {
            o.push(OSet::O4);
        }
        if lx.dist(ly) >= 4.0 * r - MEMBERSHIP_SLACK {
            o.push(OSet::O5);
        }
    }
    Classification {
        shortest_word: word,
        in_nabla_o: word.is_csc() && o.is_empty(),
        ccc_shortest: !word.is_csc(),
        o_memberships: o,
    }
}

pub fn classify(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound) -> Result<Classification> {
    let t = candidate_table(x, y, k)?;
    Ok(classify_table(x, y, k, &t))
}

fn bounds_from_table(t: &CandidateTable, k: CurvatureBound) -> GapBounds {
    let (best_key, best) = t.best();
    let l_m = path_length(best);
    let l1 = t.length(CandidateKey::RlrShort).max(t.length(CandidateKey::LrlShort));
    // candidates in tie-break order; strict comparison keeps the earliest
    let mut l2 = l_m + TAU / k.kappa;
    let mut src = L2Source::FullLoop;
    let mut path: Option<&CurvaturePath> = None;
    let mut cands: Vec<(L2Source, CandidateKey)> = vec![
        (L2Source::LrlLong, CandidateKey::LrlLong),
        (L2Source::RlrLong, CandidateKey::RlrLong),
    ];
    for w in [Word::RSR, Word::RSL, Word::LSR, Word::LSL] {
        let key = CandidateKey::of_csc(w).expect("csc word");
        if key != best_key {
            cands.push((L2Source::Csc(w), key));
        }
    }
    for (s, key) in cands {
        let len = t.length(key);
        if len < l2 {
            l2 = len;
            src = s;
            path = t.get(key);
        }
    }
    let l2_path = match path {
        Some(p) => p.clone(),
        None => full_loop_insert(best),
    };
    GapBounds {
        l1,
        l2,
        l2_source: src,
        l2_path,
    }
}

pub fn gap_bounds(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound) -> Result<GapBounds> {
    let t = candidate_table(x, y, k)?;
    let c = classify_table(x, y, k, &t);
    if !c.in_nabla_o {
        return Err(DubinsError::NotInNablaO);
    }
    Ok(bounds_from_table(&t, k))
}

pub fn analyze(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound) -> Result<Analysis> {
    let table = candidate_table(x, y, k)?;
    let classification = classify_table(x, y, k, &table);
    let (key, best) = table.best();
    let shortest = best.clone();
    let l_m = path_length(&shortest);
    let bounds = classification
        .in_nabla_o
        .then(|| bounds_from_table(&table, k));
    let gap = bounds
        .as_ref()
        .filter(|b| b.l2 - b.l1 > MIN_GAP)
        .map(|b| (b.l1, b.l2));
    Ok(Analysis {
        start: *x,
        goal: *y,
        bound: k,
        shortest_key: key,
        shortest,
        classification,
        bounds,
        set: FeasibleLengthSet { l_m, gap },
        table,
    })
}

pub fn feasible_set(x: &OrientedPose, y: &OrientedPose, k: CurvatureBound) -> Result<FeasibleLengthSet> {
    analyze(x, y, k).map(|a| a.set)
}
