mod cache;
mod config;
mod verify;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use tropcount::bounds::{canonical_contribution, canonical_path, rho};
use tropcount::engine::{enumerate_contributions, prepare, process_path, ContributionRecord};
use tropcount::paths::{enumerate_paths, path_count};
use tropcount::svg::{subdivision_svg, tropical_svg};
use tropcount::tropical_dual::{balancing_check, corner_locus, duality_check, regular_subdivision, LiftFunction, Q};
use tropcount::{
    count, BoundError, CountError, CountKind, CountRequest, LambdaOrder, LatticePath, LatticePoint, LatticePolygon,
    SurfaceSpec,
};

use cache::{request_key, Cache, Lookup};
use config::{
    BoundArgs, Command, CountArgs, EmitSvgArgs, Oracle, PathsArgs, Preset, RunConfig, SubdivisionsArgs, Target,
    TropicalArgs, VerifyArgs,
};

enum Failure {
    Validation(String),
    NonInvariant(String),
    ChecksFailed,
    Other(anyhow::Error),
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        match e {
            CountError::WelschingerNonInvariant(_) => Failure::NonInvariant(e.to_string()),
            CountError::Overflow => Failure::Other(e.into()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        match e {
            BoundError::Count(c) => c.into(),
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.into())
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(reason)) => {
            eprintln!("{}", json!({ "error": "validation", "reason": reason }));
            ExitCode::from(2)
        }
        Err(Failure::NonInvariant(reason)) => {
            eprintln!("{}", json!({ "error": "noninvariant", "reason": reason }));
            ExitCode::from(3)
        }
        Err(Failure::ChecksFailed) => ExitCode::from(1),
        Err(Failure::Other(e)) => {
            eprintln!("{}", json!({ "error": "internal", "reason": format!("{e:#}") }));
            ExitCode::from(1)
        }
    }
}

fn run(cfg: &RunConfig) -> Outcome {
    match &cfg.command {
        Command::Count(a) => cmd_count(cfg, a),
        Command::Paths(a) => cmd_paths(a),
        Command::Subdivisions(a) => cmd_subdivisions(cfg, a),
        Command::Tropical(a) => cmd_tropical(a),
        Command::Bound(a) => cmd_bound(cfg, a),
        Command::Verify(a) => cmd_verify(cfg, a),
        Command::EmitSvg(a) => cmd_emit_svg(a),
    }
}

fn parse_spec(s: &str) -> Result<SurfaceSpec, Failure> {
    s.parse().map_err(invalid)
}

fn parse_order(s: &str) -> Result<LambdaOrder, Failure> {
    s.parse().map_err(invalid)
}

fn parse_path(s: &str) -> Result<LatticePath, Failure> {
    serde_json::from_str(s).map_err(|e| invalid(format!("malformed path: {e}")))
}

fn request(cfg: &RunConfig, t: &Target, kinds: BTreeSet<CountKind>, ack: bool) -> Result<CountRequest, Failure> {
    let mut req =
        CountRequest::new(parse_spec(&t.spec)?, t.genus).with_order(parse_order(&t.lambda)?).with_kinds(kinds);
    if ack {
        req = req.acknowledge_noninvariance();
    }
    if let Some(w) = cfg.workers {
        req = req.with_workers(w);
    }
    Ok(req)
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if let Some(p) = output {
        fs::write(p, format!("{text}\n"))?;
    }
    Ok(())
}

fn cmd_count(cfg: &RunConfig, a: &CountArgs) -> Outcome {
    let kinds: BTreeSet<CountKind> = if a.kinds.is_empty() {
        // Welschinger sums are only requested by default where they are invariant
        CountKind::ALL.into_iter().filter(|k| a.target.genus == 0 || *k != CountKind::Welschinger).collect()
    } else {
        a.kinds.iter().map(|k| k.parse().map_err(invalid)).collect::<Result<_, _>>()?
    };
    let req = request(cfg, &a.target, kinds, a.ack_noninvariant)?;
    prepare(&req)?;

    let cache = (!cfg.no_cache).then(|| Cache::new(cfg.cache_dir.clone().unwrap_or_else(Cache::default_dir)));
    let key = request_key(&req);
    if let Some(c) = &cache {
        match c.load(&key) {
            Lookup::Hit(report) => return emit(&cache::render(&report), a.output.as_deref()),
            Lookup::Corrupt => eprintln!("{}", json!({ "warning": "corrupt cache entry, recomputing", "key": key })),
            Lookup::Miss => {}
        }
    }
    let report = count(&req)?;
    if let Some(c) = &cache {
        c.store(&key, &report, cfg.to_args())?;
    }
    emit(&cache::render(&report), a.output.as_deref())
}

fn cmd_paths(a: &PathsArgs) -> Outcome {
    let req = CountRequest::new(parse_spec(&a.target.spec)?, a.target.genus)
        .with_order(parse_order(&a.target.lambda)?)
        .with_kinds([CountKind::ComplexTotal]);
    let ctx = prepare(&req)?;
    let m = ctx.polygon.lattice_points().len();
    let mut out = json!({
        "spec": req.spec.to_string(),
        "genus": req.genus,
        "lambda": req.order.to_string(),
        "length": ctx.length,
        "count": path_count(m, ctx.length).to_string(),
    });
    if a.list {
        let paths: Vec<LatticePath> = enumerate_paths(&ctx.polygon, &req.order, ctx.length).map_err(invalid)?.collect();
        out["paths"] = serde_json::to_value(paths).map_err(anyhow::Error::from)?;
    }
    emit(&serde_json::to_string_pretty(&out).map_err(anyhow::Error::from)?, None)
}

fn cmd_subdivisions(cfg: &RunConfig, a: &SubdivisionsArgs) -> Outcome {
    let req = request(cfg, &a.target, [CountKind::ComplexTotal].into(), false)?;
    let records = match &a.path {
        None => enumerate_contributions(&req)?,
        Some(text) => {
            let ctx = prepare(&req)?;
            let path = parse_path(text)?;
            path.validate(&ctx.polygon, &req.order)?;
            if path.length() != ctx.length {
                return Err(invalid(format!("path has length {}, expected {}", path.length(), ctx.length)));
            }
            process_path(&ctx, &path)?
                .subdivisions
                .into_iter()
                .map(|s| ContributionRecord { path: path.clone(), subdivision: s })
                .collect()
        }
    };
    // one record per line
    let lines: Vec<String> =
        records.iter().map(serde_json::to_string).collect::<Result<_, _>>().map_err(anyhow::Error::from)?;
    emit(&lines.join("\n"), a.output.as_deref())
}

fn read_records(text: &str) -> Result<Vec<ContributionRecord>, Failure> {
    let malformed = |e: serde_json::Error| invalid(format!("malformed contributions: {e}"));
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(text).map_err(malformed);
    }
    text.lines().filter(|l| !l.trim().is_empty()).map(|l| serde_json::from_str(l).map_err(malformed)).collect()
}

fn parse_lift(support: &str, lift: &str) -> Result<LiftFunction, Failure> {
    let pts: Vec<(i64, i64)> = serde_json::from_str(support).map_err(|e| invalid(format!("malformed support: {e}")))?;
    let raw: Vec<serde_json::Value> =
        serde_json::from_str(lift).map_err(|e| invalid(format!("malformed lift: {e}")))?;
    let values = raw
        .iter()
        .map(|v| match v {
            serde_json::Value::Number(n) => n.as_i64().map(|k| Q::from_integer(k as i128)),
            serde_json::Value::String(s) => s.trim().parse::<Q>().ok(),
            _ => None,
        })
        .map(|v| v.ok_or_else(|| invalid("lift values must be integers or \"p/q\" strings")))
        .collect::<Result<Vec<Q>, _>>()?;
    LiftFunction::new(pts.into_iter().map(LatticePoint::from).collect(), values).map_err(invalid)
}

fn cmd_tropical(a: &TropicalArgs) -> Outcome {
    let f = parse_lift(&a.support, &a.lift)?;
    let curve = corner_locus(&f).map_err(invalid)?;
    let subdiv = regular_subdivision(&f).map_err(invalid)?;
    let out = json!({
        "curve": curve,
        "subdivision": subdiv,
        "balanced": balancing_check(&curve),
        "dual": duality_check(&curve, &subdiv),
    });
    if let Some(p) = &a.svg {
        fs::write(p, tropical_svg(&curve, &subdiv))?;
    }
    emit(&serde_json::to_string_pretty(&out).map_err(anyhow::Error::from)?, None)
}

fn cmd_bound(cfg: &RunConfig, a: &BoundArgs) -> Outcome {
    let spec = parse_spec(&a.spec)?;
    let bound = rho(&spec)?;
    let path = canonical_path(&spec)?;
    let contribution = canonical_contribution(&spec)?;
    let mut out = json!({
        "spec": spec.to_string(),
        "rho": bound.to_string(),
        "canonical_path": path,
        "canonical": contribution,
    });
    let mut ok = true;
    if a.check {
        let mut req = CountRequest::new(spec, 0).with_kinds([CountKind::Welschinger]);
        if let Some(w) = cfg.workers {
            req = req.with_workers(w);
        }
        let w = count(&req)?.counts.welschinger.unwrap_or_default();
        ok = w >= bound as i128 && contribution.negatives == 0 && contribution.positives as u128 >= bound;
        out["welschinger"] = json!(w.to_string());
        out["check"] = json!(ok);
    }
    emit(&serde_json::to_string_pretty(&out).map_err(anyhow::Error::from)?, None)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

fn cmd_verify(cfg: &RunConfig, a: &VerifyArgs) -> Outcome {
    if let Some(Oracle::Kontsevich) = a.oracle {
        let d = a.degree.expect("clap enforces --degree");
        if d == 0 {
            return Err(invalid("degree must be positive"));
        }
        println!("{}", tropcount::oracles::kontsevich_n(d));
        return Ok(());
    }
    let checks = verify::run_preset(a.preset.unwrap_or(Preset::DeskSmall), cfg.workers)?;
    let table = verify::format_table(&checks);
    if checks.iter().all(|c| c.passed) {
        print!("{table}");
        Ok(())
    } else {
        print!("{table}");
        eprint!("{}", verify::format_table(&checks.into_iter().filter(|c| !c.passed).collect::<Vec<_>>()));
        Err(Failure::ChecksFailed)
    }
}

fn cmd_emit_svg(a: &EmitSvgArgs) -> Outcome {
    let records: Vec<ContributionRecord> = match (&a.contributions, &a.spec, &a.path) {
        (Some(file), _, _) => {
            let text = fs::read_to_string(file).map_err(|e| invalid(format!("{}: {e}", file.display())))?;
            read_records(&text)?
        }
        (None, Some(spec), Some(path)) => {
            let target = Target { spec: spec.clone(), genus: 0, lambda: a.lambda.clone() };
            let req = CountRequest::new(parse_spec(&target.spec)?, 0).with_order(parse_order(&target.lambda)?);
            let path = parse_path(path)?;
            let polygon = prepare(&req)?.polygon;
            path.validate(&polygon, &req.order)?;
            // genus is read off the path length
            let r = polygon.boundary_lattice_points().len() - 1;
            let genus = path.length() as i64 - r as i64;
            if genus < 0 {
                return Err(invalid(format!("path has length {}, at least {r} needed", path.length())));
            }
            let ctx = prepare(&CountRequest { genus, ..req.with_kinds([CountKind::ComplexTotal]) })?;
            process_path(&ctx, &path)?
                .subdivisions
                .into_iter()
                .map(|s| ContributionRecord { path: path.clone(), subdivision: s })
                .collect()
        }
        _ => return Err(invalid("give --contributions, or --spec with --path")),
    };
    fs::create_dir_all(&a.out_dir)?;
    let mut written = Vec::new();
    for (k, rec) in records.iter().enumerate() {
        let corners: Vec<LatticePoint> = rec.subdivision.cells.iter().flat_map(|c| c.vertices().to_vec()).collect();
        let polygon = LatticePolygon::hull(&corners).ok_or_else(|| invalid("contribution has no cells"))?;
        let file = a.out_dir.join(format!("contribution_{k:04}.svg"));
        fs::write(&file, subdivision_svg(&polygon, Some(&rec.path), &rec.subdivision))?;
        written.push(file.display().to_string());
    }
    emit(&serde_json::to_string_pretty(&written).map_err(anyhow::Error::from)?, None)
}
