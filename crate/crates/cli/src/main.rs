//! `dubins`: shortest paths, feasible lengths, elongation and fleet arrival from JSON problem files.

mod output;
mod problem;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dubins_core::{
    analyze, arrival_report, elongate_with, oracle_exists_length, oracle_shortest, plan_formation, validate,
    CurvaturePath, DubinsError, ElongationRequest, FeasibleLengthSet, OracleConfig,
};
use output::{kind_letter, round12, sig12, svg, trace_csv};
use problem::ProblemFile;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dubins", version, about = "Curvature-bounded paths between oriented points")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON)
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Shortest path of every vehicle
    Shortest {
        #[command(flatten)]
        common: Common,
        /// Also report the brute-force oracle length
        #[arg(long)]
        oracle: bool,
    },
    /// Feasible length set of every vehicle
    Feasible {
        #[command(flatten)]
        common: Common,
        /// Audit the set with the brute-force oracle (sampling seeded by DUBINS_SEED)
        #[arg(long)]
        oracle: bool,
    },
    /// Path of a prescribed length for every vehicle
    Elongate {
        #[command(flatten)]
        common: Common,
        /// Target length; overrides per-vehicle target_length
        #[arg(long)]
        target: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// CSV trace; with several vehicles the id is appended to the file stem
        #[arg(long, value_name = "PATH")]
        trace_csv: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Common arrival length and paths for all vehicles
    Fleet {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Directory for one CSV trace per vehicle
        #[arg(long, value_name = "DIR")]
        trace_dir: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }

    fn core(id: &str, e: DubinsError) -> Self {
        let code = match e {
            DubinsError::DegenerateInput => 3,
            DubinsError::InfeasibleLength { .. } => 4,
            DubinsError::InvalidParameter(_) => 2,
            _ => 5,
        };
        let msg = match &e {
            DubinsError::InfeasibleLength { target, set } => {
                format!("vehicle {id}: length {target} is not achievable; feasible lengths: {set}")
            }
            _ => format!("vehicle {id}: {e}"),
        };
        Failure { code, msg }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Shortest { common, oracle } => cmd_shortest(&common, oracle),
        Cmd::Feasible { common, oracle } => cmd_feasible(&common, oracle),
        Cmd::Elongate {
            common,
            target,
            tol,
            trace_csv,
            svg,
        } => cmd_elongate(&common, target, tol, trace_csv.as_deref(), svg.as_deref()),
        Cmd::Fleet {
            common,
            tol,
            trace_dir,
            svg,
        } => cmd_fleet(&common, tol, trace_dir.as_deref(), svg.as_deref()),
    };
    match res {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn load(c: &Common) -> Result<ProblemFile, Failure> {
    ProblemFile::load(&c.input).map_err(Failure::usage)
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(round12(x))
    } else {
        Value::Null
    }
}

fn segments(p: &CurvaturePath) -> Value {
    p.segments
        .iter()
        .map(|s| json!({"kind": kind_letter(s.kind), "magnitude": round12(s.magnitude)}))
        .collect()
}

fn word_of(p: &CurvaturePath) -> String {
    p.segments.iter().map(|s| kind_letter(s.kind)).collect()
}

fn render(format: Format, rows: Vec<Value>, header: &[&str], extra: Option<(&str, Value)>) -> String {
    match format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            if let Some((k, v)) = extra {
                doc.insert(k.into(), v);
            }
            doc.insert("vehicles".into(), Value::Array(rows));
            serde_json::to_string_pretty(&Value::Object(doc)).unwrap() + "\n"
        }
        Format::Csv => {
            let mut out = header.join(",") + "\n";
            for r in &rows {
                let cells: Vec<String> = header.iter().map(|h| csv_cell(&r[*h])).collect();
                out += &cells.join(",");
                out.push('\n');
            }
            out
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => "+inf".into(),
        Value::Number(n) => sig12(n.as_f64().unwrap()),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(csv_cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn cmd_shortest(c: &Common, oracle: bool) -> Outcome {
    let p = load(c)?;
    let k = p.bound();
    let mut rows = Vec::new();
    for v in &p.vehicles {
        let an = analyze(&v.start.pose(), &v.goal.pose(), k).map_err(|e| Failure::core(&v.id, e))?;
        let mut row = json!({
            "id": v.id,
            "word": an.classification.shortest_word.name(),
            "length": num(an.l_m()),
            "segments": segments(&an.shortest),
        });
        if oracle {
            let o = oracle_shortest(&an.start, &an.goal, k, &OracleConfig::default()).map_err(|e| Failure::core(&v.id, e))?;
            row["oracle_length"] = num(o);
        }
        rows.push(row);
    }
    let header: &[&str] = if oracle { &["id", "word", "length", "oracle_length"] } else { &["id", "word", "length"] };
    Ok(render(c.format, rows, header, None))
}

fn set_fields(row: &mut Value, set: &FeasibleLengthSet) {
    let (l1, l2) = set.gap.unwrap_or((f64::INFINITY, f64::INFINITY));
    row["l_m"] = num(set.l_m);
    row["l1"] = num(l1);
    row["l2"] = num(l2);
}

fn audit_seed() -> Result<u64, Failure> {
    match std::env::var("DUBINS_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::usage(format!("DUBINS_SEED is not an integer: {s}"))),
        Err(_) => Ok(0),
    }
}

fn cmd_feasible(c: &Common, oracle: bool) -> Outcome {
    let p = load(c)?;
    let k = p.bound();
    let seed = if oracle { Some(audit_seed()?) } else { None };
    let mut rows = Vec::new();
    for (i, v) in p.vehicles.iter().enumerate() {
        let an = analyze(&v.start.pose(), &v.goal.pose(), k).map_err(|e| Failure::core(&v.id, e))?;
        let cl = &an.classification;
        let mut row = json!({
            "id": v.id,
            "shortest_word": cl.shortest_word.name(),
            "memberships": cl.o_memberships.iter().map(|o| format!("{o:?}")).collect::<Vec<_>>(),
            "in_nabla_o": cl.in_nabla_o,
            "ccc_shortest": cl.ccc_shortest,
            "feasible_set": an.set.to_string(),
        });
        set_fields(&mut row, &an.set);
        if let Some(seed) = seed {
            row["oracle"] = audit(&an.start, &an.goal, k, &an.set, seed.wrapping_add(i as u64));
        }
        rows.push(row);
    }
    let header = ["id", "l_m", "l1", "l2", "shortest_word", "memberships", "in_nabla_o"];
    let extra = seed.map(|s| ("audit_seed", json!(s)));
    Ok(render(c.format, rows, &header, extra))
}

/// Checks sampled feasible lengths, and the gap midpoint, against the oracle.
fn audit(
    x: &dubins_core::OrientedPose,
    y: &dubins_core::OrientedPose,
    k: dubins_core::CurvatureBound,
    set: &FeasibleLengthSet,
    seed: u64,
) -> Value {
    let cfg = OracleConfig::default();
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let span = std::f64::consts::TAU * k.radius();
    let mut confirmed = 0;
    let mut sampled = 0;
    while sampled < 4 {
        let s = set.l_m + r.gen_range(0.0..span);
        if !set.contains(s) {
            continue;
        }
        sampled += 1;
        confirmed += oracle_exists_length(x, y, k, s, &cfg) as usize;
    }
    let mid = set.gap.map(|(a, b)| oracle_exists_length(x, y, k, 0.5 * (a + b), &cfg));
    json!({"sampled": sampled, "confirmed": confirmed, "gap_midpoint_realized": mid})
}

fn trace_path(base: &Path, id: &str, several: bool) -> PathBuf {
    if !several {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}-{}.{}", file_safe(id), ext.to_string_lossy()),
        None => format!("{stem}-{}", file_safe(id)),
    };
    base.with_file_name(name)
}

fn file_safe(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure { code: 1, msg: format!("{}: {e}", path.display()) })
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::usage(format!("--tol must be positive, got {tol}")))
    }
}

fn cmd_elongate(c: &Common, target: Option<f64>, tol: f64, trace: Option<&Path>, svg_out: Option<&Path>) -> Outcome {
    check_tol(tol)?;
    let p = load(c)?;
    let k = p.bound();
    let several = p.vehicles.len() > 1;
    let mut rows = Vec::new();
    let mut plotted = Vec::new();
    for v in &p.vehicles {
        let s = target
            .or(v.target_length)
            .ok_or_else(|| Failure::usage(format!("vehicle {}: no target length (use --target)", v.id)))?;
        let an = analyze(&v.start.pose(), &v.goal.pose(), k).map_err(|e| Failure::core(&v.id, e))?;
        let mut req = ElongationRequest::new(an.start, an.goal, k, s);
        req.tol = tol;
        let mut e = elongate_with(&an, &req).map_err(|e| Failure::core(&v.id, e))?;
        e.path = e.path.simplified();
        let rep = validate(&e.path, &an.start, &an.goal, tol);
        let mut row = json!({
            "id": v.id,
            "target": num(s),
            "length": num(rep.length),
            "strategy": format!("{:?}", e.strategy),
            "base_length": num(e.base_length),
            "word": word_of(&e.path),
            "position_error": num(rep.endpoint_position_error),
            "heading_error": num(rep.endpoint_heading_error),
            "segments": segments(&e.path),
        });
        if let Some(base) = trace {
            let out = trace_path(base, &v.id, several);
            write_file(&out, &trace_csv(&e.path).map_err(|e| Failure::core(&v.id, e))?)?;
            row["trace"] = json!(out.display().to_string());
        }
        plotted.push((v.id.clone(), e.path, an.goal));
        rows.push(row);
    }
    if let Some(out) = svg_out {
        write_file(out, &svg(&plotted).map_err(|e| Failure::core("-", e))?)?;
    }
    let header = ["id", "target", "length", "strategy", "base_length", "word", "position_error", "heading_error"];
    Ok(render(c.format, rows, &header, None))
}

fn cmd_fleet(c: &Common, tol: f64, trace_dir: Option<&Path>, svg_out: Option<&Path>) -> Outcome {
    check_tol(tol)?;
    let p = load(c)?;
    let problem = p.fleet();
    let mut plan = plan_formation(&problem, tol).map_err(|e| Failure::core("-", e))?;
    if let Some(dir) = trace_dir {
        std::fs::create_dir_all(dir).map_err(|e| Failure { code: 1, msg: format!("{}: {e}", dir.display()) })?;
    }
    let report = arrival_report(&plan, &problem);
    let mut rows = Vec::new();
    for vp in &mut plan.vehicles {
        vp.path = vp.path.simplified();
    }
    for (vp, ar) in plan.vehicles.iter().zip(&report) {
        let mut row = json!({
            "id": vp.id,
            "t_m": num(plan.t_m),
            "length": num(ar.length),
            "strategy": format!("{:?}", vp.strategy),
            "base_length": num(vp.base_length),
            "word": word_of(&vp.path),
            "max_endpoint_error": num(ar.max_endpoint_error),
        });
        set_fields(&mut row, &vp.set);
        if let Some(dir) = trace_dir {
            let out = dir.join(format!("{}.csv", file_safe(&vp.id)));
            write_file(&out, &trace_csv(&vp.path).map_err(|e| Failure::core(&vp.id, e))?)?;
            row["trace"] = json!(out.display().to_string());
        }
        rows.push(row);
    }
    if let Some(out) = svg_out {
        let plotted: Vec<_> = plan
            .vehicles
            .iter()
            .zip(&problem.vehicles)
            .map(|(vp, v)| (vp.id.clone(), vp.path.clone(), v.goal))
            .collect();
        write_file(out, &svg(&plotted).map_err(|e| Failure::core("-", e))?)?;
    }
    let header = ["id", "t_m", "l_m", "l1", "l2", "base_length", "strategy", "length", "max_endpoint_error"];
    Ok(render(c.format, rows, &header, Some(("t_m", num(plan.t_m)))))
}

