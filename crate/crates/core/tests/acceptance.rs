//! Acceptance suite: one line per criterion, then a nonzero exit if any failed.
//!
//! Counts are compared exactly. Time limits are wall-clock and pinned below.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tropcount::bounds::{canonical_contribution, lambda0_positivity_audit, rho};
use tropcount::oracles::{kontsevich_n, reducible_rational_quartics, sandwich_check};
use tropcount::surfaces::cremona_normalize;
use tropcount::tropical_dual::{balancing_check, corner_locus, duality_check, regular_subdivision, LiftFunction, Q};
use tropcount::{count, CountReport, CountRequest, LambdaOrder, LatticePoint, SurfaceSpec};

const CUBIC_LIMIT: Duration = Duration::from_secs(1);
const QUARTIC_LIMIT: Duration = Duration::from_secs(30);
const QUINTIC_SINGLE_LIMIT: Duration = Duration::from_secs(600);
const QUINTIC_EIGHT_LIMIT: Duration = Duration::from_secs(180);
const RANDOM_LIFTS: usize = 100;
const MAX_SUPPORT: usize = 12;
const MAX_DENOMINATOR: i128 = 16;
const SEED: u64 = 20_240_611;

fn spec(s: &str) -> SurfaceSpec {
    s.parse().unwrap()
}

fn other_orders() -> [LambdaOrder; 2] {
    [LambdaOrder::new((1, -1), (1, 0)).unwrap(), LambdaOrder::new((2, -1), (0, -1)).unwrap()]
}

struct Suite {
    runs: BTreeMap<(String, i64, String), CountReport>,
    failed: usize,
}

impl Suite {
    fn timed(&mut self, s: &str, genus: i64, order: LambdaOrder, workers: usize) -> (CountReport, Duration) {
        let mut req = CountRequest::new(spec(s), genus).with_order(order).with_workers(workers);
        if genus != 0 {
            req = req.acknowledge_noninvariance();
        }
        let start = Instant::now();
        let r = count(&req).unwrap_or_else(|e| panic!("{s} g={genus}: {e}"));
        let t = start.elapsed();
        self.runs.insert((s.to_string(), genus, order.to_string()), r.clone());
        (r, t)
    }

    fn get(&mut self, s: &str, genus: i64, order: LambdaOrder) -> CountReport {
        match self.runs.get(&(s.to_string(), genus, order.to_string())) {
            Some(r) => r.clone(),
            None => self.timed(s, genus, order, 1).0,
        }
    }

    fn get0(&mut self, s: &str) -> CountReport {
        self.get(s, 0, LambdaOrder::lambda0())
    }

    fn report(&mut self, id: u32, name: &str, passed: bool, detail: String) {
        println!("[{}] {id:>2}. {name}: {detail}", if passed { "PASS" } else { "FAIL" });
        if !passed {
            self.failed += 1;
        }
    }
}

fn w(r: &CountReport) -> i128 {
    r.counts.welschinger.unwrap()
}

fn ci(r: &CountReport) -> u128 {
    r.counts.complex_irreducible.unwrap()
}

fn factorial(d: u32) -> i128 {
    (1..=d as i128).product()
}

fn random_lift(rng: &mut StdRng) -> LiftFunction {
    let size = rng.gen_range(2..=MAX_SUPPORT);
    let mut pts = std::collections::BTreeSet::new();
    while pts.len() < size {
        pts.insert(LatticePoint::new(rng.gen_range(0..5), rng.gen_range(0..5)));
    }
    let support: Vec<LatticePoint> = pts.into_iter().collect();
    let values = support.iter().map(|_| Q::new(rng.gen_range(-24..=24), rng.gen_range(1..=MAX_DENOMINATOR))).collect();
    LiftFunction::new(support, values).unwrap()
}

fn main() -> ExitCode {
    let mut s = Suite { runs: BTreeMap::new(), failed: 0 };
    let l0 = LambdaOrder::lambda0();
    println!("host parallelism: {}", std::thread::available_parallelism().map_or(1, |n| n.get()));

    // 1
    let (r3, t3) = s.timed("p2:3", 0, l0, 1);
    s.report(
        1,
        "rational cubics",
        ci(&r3) == 12 && t3 < CUBIC_LIMIT,
        format!("N = {} in {t3:.2?} (limit {CUBIC_LIMIT:?})", ci(&r3)),
    );

    // 2
    let (r4, t4) = s.timed("p2:4", 0, l0, 1);
    let (r5, t5) = s.timed("p2:5", 0, l0, 1);
    let mut req8 = CountRequest::new(spec("p2:5"), 0).with_workers(8);
    req8 = req8.with_kinds([tropcount::CountKind::Welschinger]);
    let start = Instant::now();
    let w5_8 = count(&req8).unwrap().counts.welschinger.unwrap();
    let t5_8 = start.elapsed();
    s.report(
        2,
        "welschinger invariants",
        w(&r4) == 240
            && t4 < QUARTIC_LIMIT
            && w(&r5) == 18264
            && t5 < QUINTIC_SINGLE_LIMIT
            && w5_8 == 18264
            && t5_8 < QUINTIC_EIGHT_LIMIT,
        format!(
            "W4 = {} in {t4:.2?}, W5 = {} in {t5:.2?} (1 worker), {w5_8} in {t5_8:.2?} (8 workers)",
            w(&r4),
            w(&r5)
        ),
    );

    // 3
    let mut ok = true;
    let mut detail = Vec::new();
    for d in 1..=5u32 {
        let name = format!("p2:{d}");
        let wd = w(&s.get0(&name));
        let c = canonical_contribution(&spec(&name)).unwrap();
        let half = factorial(d);
        // W >= d!/2 compared as 2W >= d!
        ok &= 2 * wd >= half && c.negatives == 0 && 2 * c.positives as i128 >= half;
        detail.push(format!("d={d}: W={wd} canonical +{}/-{}", c.positives, c.negatives));
    }
    s.report(3, "plane lower bound", ok, detail.join(", "));

    // 4
    let mut ok = true;
    let mut detail = Vec::new();
    for d in 1..=5usize {
        let n = ci(&s.get0(&format!("p2:{d}")));
        let oracle = kontsevich_n(d);
        ok &= BigInt::from(n) == oracle;
        detail.push(format!("{n}/{oracle}"));
    }
    let total4 = r4.counts.complex_total.unwrap();
    let expected = kontsevich_n(4) + reducible_rational_quartics();
    ok &= BigInt::from(total4) == expected;
    s.report(
        4,
        "recursion agreement",
        ok,
        format!("N_1..5 engine/oracle {}, quartic total {total4} vs {expected}", detail.join(" ")),
    );

    // 5
    let severi = s.get("p2:4", 2, l0).counts.complex_total.unwrap();
    s.report(5, "one-nodal quartics", severi == 3 * 3 * 3, format!("{severi} vs 27"));

    // 6
    let cubic = s.get("p2:3", 1, l0).counts.complex_total.unwrap();
    s.report(6, "maximal genus", cubic == 1, format!("{cubic}"));

    // 7
    let mut ok = true;
    let mut detail = Vec::new();
    for d in 3..=5usize {
        let n = ci(&s.get0(&format!("p2:{d}")));
        let pass = sandwich_check(d, &BigInt::from(n));
        ok &= pass;
        detail.push(format!("d={d}: {pass}"));
    }
    s.report(7, "sandwich bounds", ok, detail.join(", "));

    // 8
    let invariance = ["p2:3", "p2:4", "quadric:2,2", "p3b:4;1,1,1"];
    let mut ok = true;
    let mut detail = Vec::new();
    for name in invariance {
        let base = s.get0(name);
        let mut same = 0;
        for o in other_orders() {
            let r = s.get(name, 0, o);
            if r.counts == base.counts {
                same += 1;
            }
        }
        ok &= same == other_orders().len();
        detail.push(format!("{name}: {same}/{} orders agree", other_orders().len()));
    }
    let clean =
        s.runs.values().all(|r| r.diagnostics.rank_violations == 0 && r.diagnostics.face_to_face_rejections == 0);
    ok &= clean;
    s.report(8, "order invariance", ok, format!("{}; diagnostics clean: {clean}", detail.join(", ")));

    // 9
    let mut ok = true;
    let mut detail = Vec::new();
    for name in invariance.iter().chain(["p2:5"].iter()) {
        let a = lambda0_positivity_audit(&spec(name)).unwrap();
        ok &= a.passed();
        detail.push(format!(
            "{name}: {} subdivisions, {} negative, {} fat triangles",
            a.subdivisions, a.negative_subdivisions, a.triangles_with_interior_points
        ));
    }
    s.report(9, "positivity under the standard order", ok, detail.join("; "));

    // 10
    let normalized = cremona_normalize(&spec("p3b:5;2,2,2")).unwrap();
    let mut ok = normalized == spec("p3b:4;1,1,1");
    let mut detail = vec![format!("p3b:5;2,2,2 -> {normalized}")];
    for (name, bound) in [("quadric:2,2", 2), ("quadric:3,2", 3), ("p1:3;1", 3), ("p3b:4;1,1,1", 2), ("p3b:5;2,2,2", 2)]
    {
        let wv = w(&s.get0(name));
        let rho_v = rho(&spec(name)).unwrap();
        ok &= rho_v == bound && wv >= bound as i128;
        detail.push(format!("{name}: W={wv} >= {bound}"));
    }
    ok &= s.get0("p3b:5;2,2,2").counts == s.get0("p3b:4;1,1,1").counts;
    s.report(10, "surface lower bounds", ok, detail.join(", "));

    // 11
    let mut ok = true;
    let mut checked = 0;
    for ((name, g, lambda), r) in &s.runs {
        if *g != 0 {
            continue;
        }
        let (Some(wv), Some(n)) = (r.counts.welschinger, r.counts.complex_irreducible) else { continue };
        checked += 1;
        let pass = (wv - n as i128).rem_euclid(2) == 0 && wv.unsigned_abs() <= n;
        if !pass {
            println!("       parity/domination fails for {name} under {lambda}: W={wv}, N={n}");
        }
        ok &= pass;
    }
    s.report(11, "parity and domination", ok && checked > 0, format!("{checked} genus-0 runs"));

    // 12
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut good = 0;
    for _ in 0..RANDOM_LIFTS {
        let f = random_lift(&mut rng);
        let (c, sub) = (corner_locus(&f).unwrap(), regular_subdivision(&f).unwrap());
        if balancing_check(&c) && duality_check(&c, &sub) && sub.tiles_hull() {
            good += 1;
        }
    }
    let line = corner_locus(
        &LiftFunction::zero(vec![LatticePoint::new(0, 0), LatticePoint::new(1, 0), LatticePoint::new(0, 1)]).unwrap(),
    )
    .unwrap();
    let mut rays: Vec<_> = line.rays.iter().map(|r| (r.direction, r.weight)).collect();
    rays.sort();
    let expected_rays =
        vec![(LatticePoint::new(-1, 0), 1), (LatticePoint::new(0, -1), 1), (LatticePoint::new(1, 1), 1)];
    let line_ok = line.vertices.len() == 1 && line.edges.is_empty() && rays == expected_rays;
    s.report(
        12,
        "tropical duality",
        good == RANDOM_LIFTS && line_ok,
        format!("{good}/{RANDOM_LIFTS} random lifts dual and balanced; tropical line: {line_ok}"),
    );

    if s.failed == 0 {
        println!("all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", s.failed);
        ExitCode::FAILURE
    }
}
