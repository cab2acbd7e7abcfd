//! Acceptance checks. One PASS/FAIL line per criterion; exits nonzero on any failure.

mod common;

use common::*;
use dubins_core::*;
use rand::Rng;
use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const SEED_ORACLE: u64 = 2024;
const SEED_ELONGATE: u64 = 2025;
const SEED_GAP_TARGETS: u64 = 2026;
const SEED_GAPS: u64 = 2027;
const SEED_STRUCTURE: u64 = 2028;

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 8 {
            self.failures.push(msg());
        }
    }
}

fn run(name: &str, limit: Duration, f: impl FnOnce(&mut Outcome)) -> bool {
    let t0 = Instant::now();
    let mut out = Outcome::new();
    f(&mut out);
    let dt = t0.elapsed();
    out.check(dt < limit, || format!("runtime {dt:.2?} over limit {limit:?}"));
    let ok = out.failures.is_empty();
    println!("{} {name} ({dt:.2?})", if ok { "PASS" } else { "FAIL" });
    for n in &out.notes {
        println!("    {n}");
    }
    for f in &out.failures {
        println!("    - {f}");
    }
    ok
}

fn table_reproduction(o: &mut Outcome) {
    let gaps = [(1, 1, 2.7219, 8.7279), (2, 3, 3.6783, 7.8609)];
    for c in 0..3 {
        for (v, (x, y)) in case_pairs(c).into_iter().enumerate() {
            let an = analyze(&x, &y, CurvatureBound::unit()).unwrap();
            o.check((an.l_m() - L_M[c][v]).abs() < 5e-4, || {
                format!("case {c} vehicle {}: l_m {:.4} vs {:.4}", v + 1, an.l_m(), L_M[c][v])
            });
            match (gaps.iter().find(|g| g.0 == c && g.1 == v), an.set.gap) {
                (Some(&(_, _, l1, l2)), Some((a, b))) => {
                    o.check((a - l1).abs() < 5e-4 && (b - l2).abs() < 5e-4, || {
                        format!("case {c} vehicle {}: gap ({a:.4}, {b:.4})", v + 1)
                    })
                }
                (None, None) => {}
                (want, got) => o.check(false, || {
                    format!("case {c} vehicle {}: expected gap {:?}, got {got:?}", v + 1, want.map(|g| (g.2, g.3)))
                }),
            }
        }
    }
}

fn formation_times(o: &mut Outcome) {
    for c in 0..3 {
        let p = fleet(c);
        let plan = match plan_formation(&p, 1e-9) {
            Ok(plan) => plan,
            Err(e) => return o.check(false, || format!("case {c}: {e}")),
        };
        o.check((plan.t_m - T_M[c]).abs() < 5e-4, || format!("case {c}: t_m {:.5}", plan.t_m));
        for row in arrival_report(&plan, &p) {
            o.check((row.length - plan.t_m).abs() <= 1e-9 && row.max_endpoint_error <= 1e-9, || {
                format!("case {c} vehicle {}: length {} error {:e}", row.id, row.length, row.max_endpoint_error)
            });
        }
        if c == 1 {
            let v = &plan.vehicles[1];
            o.check((v.base_length - 8.7279).abs() < 5e-4, || {
                format!("case B vehicle 2 grew from {:.4}", v.base_length)
            });
        }
        if c == 2 {
            let v = &plan.vehicles[3];
            o.check((v.base_length - 7.8609).abs() < 5e-4, || {
                format!("case C vehicle 4 grew from {:.4}", v.base_length)
            });
        }
    }
}

fn oracle_equivalence(o: &mut Outcome) {
    let mut r = rng(SEED_ORACLE);
    let cfg = OracleConfig::default();
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let (x, y) = random_pair(&mut r, 5.0);
        let a = shortest(&x, &y, CurvatureBound::unit()).unwrap().length();
        let b = oracle_shortest(&x, &y, CurvatureBound::unit(), &cfg).unwrap();
        worst = worst.max((a - b).abs());
        o.check((a - b).abs() <= 1e-4, || format!("instance {i}: analytic {a} oracle {b}"));
    }
    o.notes.push(format!("seed {SEED_ORACLE}, worst difference {worst:.2e}"));
}

fn elongation_suite(o: &mut Outcome) {
    let k = CurvatureBound::unit();
    let mut r = rng(SEED_ELONGATE);
    let mut worst_pose: f64 = 0.0;
    let mut worst_len: f64 = 0.0;
    for i in 0..1000 {
        let (x, y) = random_pair(&mut r, 5.0);
        let set = feasible_set(&x, &y, k).unwrap();
        let s = match set.gap {
            Some((l1, _)) if r.gen_bool(0.5) => r.gen_range(set.l_m..=l1),
            Some((_, l2)) => l2 + r.gen_range(0.0..2.0 * TAU),
            None => set.l_m + r.gen_range(0.0..2.0 * TAU),
        };
        match elongate_to(&ElongationRequest::new(x, y, k, s)) {
            Ok(e) => {
                let v = validate(&e.path, &x, &y, 1e-9);
                let pe = v.endpoint_position_error.max(v.endpoint_heading_error);
                worst_pose = worst_pose.max(pe);
                worst_len = worst_len.max((v.length - s).abs());
                o.check(v.passes(1e-9) && (v.length - s).abs() <= 1e-9, || {
                    format!("pair {i}: target {s}, length {}, pose error {pe:e}", v.length)
                });
            }
            Err(e) => o.check(false, || format!("pair {i}: target {s}: {e}")),
        }
    }
    let mut r = rng(SEED_GAP_TARGETS);
    for (i, an) in gap_instances(SEED_GAP_TARGETS, 200, 5.0).iter().enumerate() {
        let (l1, l2) = an.set.gap.unwrap();
        let s = l1 + (l2 - l1) * r.gen_range(0.001..0.999);
        let res = elongate_with(an, &ElongationRequest::new(an.start, an.goal, an.bound, s));
        o.check(matches!(res, Err(DubinsError::InfeasibleLength { .. })), || {
            format!("gap pair {i}: target {s} in ({l1}, {l2}) gave {:?}", res.map(|e| e.strategy))
        });
    }
    o.notes.push(format!(
        "seeds {SEED_ELONGATE}/{SEED_GAP_TARGETS}, worst pose error {worst_pose:.1e}, worst length error {worst_len:.1e}"
    ));
}

fn gap_evidence(o: &mut Outcome) {
    let k = CurvatureBound::unit();
    let cfg = OracleConfig::default();
    let mut r = rng(SEED_GAPS);
    let mut skipped = 0;
    let mut used = 0;
    while used < 50 {
        let (x, y) = random_pair(&mut r, 5.0);
        let an = analyze(&x, &y, k).unwrap();
        if !an.classification.in_nabla_o {
            continue;
        }
        let Some((l1, l2)) = an.set.gap else {
            skipped += 1;
            continue;
        };
        used += 1;
        for key in CandidateKey::ALL {
            let l = an.table.length(key);
            o.check(!(l > l1 + 1e-9 && l < l2 - 1e-9), || format!("{x:?} {y:?}: {} = {l} in gap", key.label()));
        }
        let mid = 0.5 * (l1 + l2);
        o.check(!oracle_exists_length(&x, &y, k, mid, &cfg), || format!("{x:?} {y:?}: oracle found {mid}"));
        o.check(oracle_exists_length(&x, &y, k, l1, &cfg), || format!("{x:?} {y:?}: oracle missed l1 {l1}"));
        o.check(oracle_exists_length(&x, &y, k, l2, &cfg), || format!("{x:?} {y:?}: oracle missed l2 {l2}"));
        match DiskPush::from_analysis(&an) {
            Ok(fam) => {
                for j in 0..1000 {
                    let lam = j as f64 / 999.0;
                    match fam.eval(lam) {
                        Some(p) => {
                            let l = p.length();
                            o.check(!(l > l1 + 1e-6 && l < l2 - 1e-6), || {
                                format!("{x:?} {y:?}: disk push at {lam} has length {l} in gap")
                            });
                        }
                        None => o.check(false, || format!("{x:?} {y:?}: disk push undefined at {lam}")),
                    }
                }
            }
            Err(e) => o.check(false, || format!("{x:?} {y:?}: disk push: {e}")),
        }
    }
    o.notes.push(format!(
        "seed {SEED_GAPS}, 50 gap-bearing nabla-O instances, {skipped} nabla-O instances without a gap skipped"
    ));
}

fn chord_length(path: &CurvaturePath, step: f64) -> f64 {
    let pts = sample(path, step).unwrap();
    pts.windows(2).map(|w| w[0].pose.point().dist(w[1].pose.point())).sum()
}

fn structural_invariants(o: &mut Outcome) {
    let k = CurvatureBound::unit();
    let nabla = nabla_instances(SEED_STRUCTURE, 500, 5.0);
    let mut order = 0;
    let mut l1_big = 0;
    let mut l2_big = 0;
    for an in &nabla {
        let b = an.bounds.as_ref().unwrap();
        let lm = an.l_m();
        if !(lm < b.l1 && b.l1 < b.l2) {
            order += 1;
            o.check(false, || format!("{:?} {:?}: l_m {lm:.6} l1 {:.6} l2 {:.6}", an.start, an.goal, b.l1, b.l2));
        }
        if b.l1 >= TAU {
            l1_big += 1;
            o.check(false, || format!("{:?} {:?}: l1 {:.6} >= 2 pi", an.start, an.goal, b.l1));
        }
        if b.l2 > lm + TAU + 1e-9 {
            l2_big += 1;
            o.check(false, || format!("{:?} {:?}: l2 {:.6} > l_m + 2 pi", an.start, an.goal, b.l2));
        }
    }
    o.notes.push(format!(
        "seed {SEED_STRUCTURE}, {} nabla-O instances: ordering violated {order}, l1 >= 2 pi {l1_big}, l2 > l_m + 2 pi {l2_big}",
        nabla.len()
    ));

    let mut r = rng(SEED_STRUCTURE);
    let mut waves = 0;
    let mut wave_err: f64 = 0.0;
    let mut loop_err: f64 = 0.0;
    while waves < 20 {
        let (x, y) = random_pair(&mut r, 5.0);
        let p = shortest(&x, &y, k).unwrap();
        let Some(si) = p.segments.iter().position(|s| s.kind == SegmentKind::Straight && s.magnitude > 0.5) else {
            continue;
        };
        waves += 1;
        // the wave spans a chord of 4 sin(alpha) along the straight
        let fit = (p.segments[si].magnitude / 4.0).min(1.0).asin();
        let alpha = r.gen_range(0.05..1.0f64).min(0.999 * fit);
        let w = wave_deform(&p, si, alpha).unwrap();
        let measured = chord_length(&w, 1e-5) - p.length();
        let delta = wave_elongation(alpha, k);
        wave_err = wave_err.max((measured - delta).abs());
        o.check((measured - delta).abs() <= 1e-9, || format!("wave alpha {alpha}: {measured} vs {delta}"));
        let v = validate(&w, &x, &y, 1e-9);
        o.check(v.passes(1e-9), || format!("wave alpha {alpha}: endpoint moved"));

        let lp = full_loop_insert(&p);
        loop_err = loop_err.max((lp.length() - p.length() - TAU).abs());
        o.check((lp.length() - p.length() - TAU).abs() <= 1e-12 && validate(&lp, &x, &y, 1e-9).passes(1e-9), || {
            format!("loop insert added {}", lp.length() - p.length())
        });
    }
    o.notes.push(format!("20 waves: worst length mismatch {wave_err:.1e}; loop insertion off 2 pi by at most {loop_err:.1e}"));
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= run("1 table reproduction", Duration::from_secs(1), table_reproduction);
    ok &= run("2 formation times", Duration::from_secs(5), formation_times);
    ok &= run("3 oracle equivalence", Duration::from_secs(120), oracle_equivalence);
    ok &= run("4 elongation soundness", Duration::from_secs(60), elongation_suite);
    ok &= run("5 gap evidence", Duration::from_secs(300), gap_evidence);
    ok &= run("6 structural invariants", Duration::from_secs(300), structural_invariants);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
