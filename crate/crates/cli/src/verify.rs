//! Named oracle suites for `tropcount verify`.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::Result;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tropcount::bounds::{canonical_contribution, lambda0_positivity_audit, rho};
use tropcount::oracles::{kontsevich_n, reducible_rational_quartics, sandwich_check, RecursionTable};
use tropcount::tropical_dual::{balancing_check, corner_locus, duality_check, regular_subdivision, LiftFunction, Q};
use tropcount::{count, CountReport, CountRequest, LambdaOrder, LatticePoint, SurfaceSpec};

use crate::config::Preset;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Runner {
    workers: Option<usize>,
    reports: BTreeMap<(String, i64, String), CountReport>,
    checks: Vec<Check>,
}

fn show<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn spec(s: &str) -> SurfaceSpec {
    s.parse().expect("preset specs are valid")
}

/// Orders besides `λ⁰` that are admissible for every preset polygon.
pub fn alternative_orders() -> Vec<LambdaOrder> {
    vec![LambdaOrder::new((1, -1), (1, 0)).expect("nonzero"), LambdaOrder::new((2, -1), (0, -1)).expect("nonzero")]
}

impl Runner {
    fn count(&mut self, s: &str, genus: i64, order: LambdaOrder) -> Result<CountReport> {
        let key = (s.to_string(), genus, order.to_string());
        if let Some(r) = self.reports.get(&key) {
            return Ok(r.clone());
        }
        let mut req = CountRequest::new(spec(s), genus).with_order(order);
        if genus != 0 {
            req = req.acknowledge_noninvariance();
        }
        if let Some(w) = self.workers {
            req = req.with_workers(w);
        }
        let r = count(&req)?;
        self.reports.insert(key, r.clone());
        Ok(r)
    }

    fn count0(&mut self, s: &str) -> Result<CountReport> {
        self.count(s, 0, LambdaOrder::lambda0())
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

pub fn run_preset(preset: Preset, workers: Option<usize>) -> Result<Vec<Check>> {
    let desk = preset == Preset::Desk;
    let mut r = Runner { workers, reports: BTreeMap::new(), checks: Vec::new() };
    let max_degree = if desk { 5 } else { 3 };

    let mut table = RecursionTable::new();
    for d in 1..=max_degree {
        let s = format!("p2:{d}");
        let rep = r.count0(&s)?;
        let n = table.get(d as usize);
        let ci = rep.counts.complex_irreducible.unwrap_or_default();
        r.check(format!("kontsevich {s}"), n == ci.into(), format!("engine {ci}, recursion {n}"));
        if d >= 3 {
            r.check(format!("sandwich {s}"), sandwich_check(d as usize, &ci.into()), format!("N = {ci}"));
        }
        let w = rep.counts.welschinger.unwrap_or_default();
        let bound = rho(&spec(&s))?;
        r.check(format!("welschinger bound {s}"), w >= bound as i128, format!("W = {w}, rho = {bound}"));
        let c = canonical_contribution(&spec(&s))?;
        r.check(
            format!("canonical path {s}"),
            c.negatives == 0 && c.positives as u128 >= bound,
            format!("{} positive, {} negative", c.positives, c.negatives),
        );
    }

    let cubic1 = r.count("p2:3", 1, LambdaOrder::lambda0())?.counts.complex_total;
    r.check("maximal genus p2:3 g=1", cubic1 == Some(1), show(cubic1));
    if desk {
        let w4 = r.count0("p2:4")?.counts.welschinger;
        r.check("welschinger p2:4", w4 == Some(240), show(w4));
        let w5 = r.count0("p2:5")?.counts.welschinger;
        r.check("welschinger p2:5", w5 == Some(18264), show(w5));
        let total = r.count0("p2:4")?.counts.complex_total.unwrap_or_default();
        let expected = kontsevich_n(4) + reducible_rational_quartics();
        r.check("reducible quartics", expected == total.into(), format!("{total} vs {expected}"));
        let severi = r.count("p2:4", 2, LambdaOrder::lambda0())?.counts.complex_total;
        r.check("one-nodal quartics", severi == Some(27), show(severi));
    }

    let invariance: &[&str] =
        if desk { &["p2:3", "p2:4", "quadric:2,2", "p3b:4;1,1,1"] } else { &["p2:3", "quadric:2,2"] };
    for &s in invariance {
        let base = r.count0(s)?;
        let mut ok = true;
        let mut detail = Vec::new();
        for o in alternative_orders() {
            let other = r.count(s, 0, o)?;
            ok &= other.counts == base.counts;
            ok &= other.diagnostics.rank_violations == 0 && other.diagnostics.face_to_face_rejections == 0;
            detail.push(format!("{o}: W = {}", show(other.counts.welschinger)));
        }
        ok &= base.diagnostics.rank_violations == 0 && base.diagnostics.face_to_face_rejections == 0;
        r.check(format!("lambda invariance {s}"), ok, detail.join(", "));
    }

    let (a, b) = (r.count0("p3b:5;2,2,2")?, r.count0("p3b:4;1,1,1")?);
    r.check(
        "cremona p3b:5;2,2,2 = p3b:4;1,1,1",
        a.counts == b.counts,
        format!("N = {}, W = {}", show(a.counts.complex_irreducible), show(a.counts.welschinger)),
    );

    let audits: &[&str] =
        if desk { &["p2:3", "p2:4", "quadric:2,2", "p3b:4;1,1,1", "p2:5"] } else { &["p2:3", "quadric:2,2"] };
    for &s in audits {
        let audit = lambda0_positivity_audit(&spec(s))?;
        r.check(
            format!("positivity {s}"),
            audit.passed(),
            format!("{} subdivisions, {} negative", audit.subdivisions, audit.negative_subdivisions),
        );
    }

    let surfaces: &[&str] =
        if desk { &["quadric:2,2", "quadric:3,2", "p1:3;1", "p3b:4;1,1,1", "p3b:5;2,2,2"] } else { &["quadric:2,2"] };
    for &s in surfaces {
        let w = r.count0(s)?.counts.welschinger.unwrap_or_default();
        let bound = rho(&spec(s))?;
        r.check(format!("welschinger bound {s}"), w >= bound as i128, format!("W = {w}, rho = {bound}"));
    }

    let runs: Vec<(String, CountReport)> =
        r.reports.iter().filter(|(k, _)| k.1 == 0).map(|(k, v)| (k.0.clone(), v.clone())).collect();
    for (s, rep) in runs {
        let (w, ci) = (rep.counts.welschinger.unwrap_or_default(), rep.counts.complex_irreducible.unwrap_or_default());
        let ok = (w - ci as i128).rem_euclid(2) == 0 && w.unsigned_abs() <= ci;
        r.check(format!("parity {s} {}", rep.lambda), ok, format!("W = {w}, N = {ci}"));
    }

    let lifts = if desk { 100 } else { 20 };
    let mut failures = 0;
    let mut rng = StdRng::seed_from_u64(0x7f4a_2c91);
    for _ in 0..lifts {
        let f = random_lift(&mut rng);
        let (c, s) = (corner_locus(&f)?, regular_subdivision(&f)?);
        if !(balancing_check(&c) && duality_check(&c, &s) && s.tiles_hull()) {
            failures += 1;
        }
    }
    r.check("tropical duality", failures == 0, format!("{failures} of {lifts} random lifts failed"));

    Ok(r.checks)
}

/// Support in a 5×5 box with 2 to 12 points, values with denominators up to 16.
pub fn random_lift(rng: &mut StdRng) -> LiftFunction {
    let size = rng.gen_range(2..=12);
    let mut pts = BTreeSet::new();
    while pts.len() < size {
        pts.insert(LatticePoint::new(rng.gen_range(0..5), rng.gen_range(0..5)));
    }
    let support: Vec<LatticePoint> = pts.into_iter().collect();
    let values = support.iter().map(|_| Q::new(rng.gen_range(-20..=20), rng.gen_range(1..=16))).collect();
    LiftFunction::new(support, values).expect("distinct points")
}

pub fn format_table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    checks
        .iter()
        .map(|c| format!("{}  {:width$}  {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect()
}
