//! End-to-end counting: paths, compression, classification, exact sums.
//!
//! Paths are processed in fixed-size chunks; each chunk is mapped in
//! parallel and reduced in path order, so results and record order do not
//! depend on the worker count.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{nodality, ClassifiedSubdivision, Nodality, Subdivision};
use crate::compression::{assemble, compressing_subdivisions, Region, RegionSide};
use crate::error::CountError;
use crate::lattice::LatticePolygon;
use crate::order::LambdaOrder;
use crate::paths::{enumerate_paths, LatticePath};
use crate::surfaces::{newton_polygon, SurfaceSpec};

const CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    ComplexTotal,
    ComplexIrreducible,
    Welschinger,
}

impl CountKind {
    pub const ALL: [CountKind; 3] = [CountKind::ComplexTotal, CountKind::ComplexIrreducible, CountKind::Welschinger];

    pub fn as_str(self) -> &'static str {
        match self {
            CountKind::ComplexTotal => "complex_total",
            CountKind::ComplexIrreducible => "complex_irreducible",
            CountKind::Welschinger => "welschinger",
        }
    }
}

impl std::fmt::Display for CountKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CountKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "complex_total" => Ok(CountKind::ComplexTotal),
            "complex_irreducible" => Ok(CountKind::ComplexIrreducible),
            "welschinger" => Ok(CountKind::Welschinger),
            other => Err(format!("unknown count kind {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRequest {
    pub spec: SurfaceSpec,
    pub genus: i64,
    pub order: LambdaOrder,
    pub kinds: BTreeSet<CountKind>,
    /// Required for a signed count at positive genus, which is not an invariant.
    pub ack_noninvariant: bool,
    /// Worker threads; `None` uses every available core.
    pub workers: Option<usize>,
}

impl CountRequest {
    /// All three counts under `λ⁰`.
    pub fn new(spec: SurfaceSpec, genus: i64) -> Self {
        Self {
            spec,
            genus,
            order: LambdaOrder::lambda0(),
            kinds: CountKind::ALL.into_iter().collect(),
            ack_noninvariant: false,
            workers: None,
        }
    }

    pub fn with_order(mut self, order: LambdaOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_kinds(mut self, kinds: impl IntoIterator<Item = CountKind>) -> Self {
        self.kinds = kinds.into_iter().collect();
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn acknowledge_noninvariance(mut self) -> Self {
        self.ack_noninvariant = true;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub complex_total: Option<u128>,
    pub complex_irreducible: Option<u128>,
    pub welschinger: Option<i128>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub paths_enumerated: u64,
    pub dead_ends: u64,
    pub dedup_collisions: u64,
    pub rank_violations: u64,
    pub face_to_face_rejections: u64,
    pub non_nodal_rejections: u64,
    pub nodal_subdivisions: u64,
}

impl Diagnostics {
    fn merge(&mut self, o: &Diagnostics) {
        self.paths_enumerated += o.paths_enumerated;
        self.dead_ends += o.dead_ends;
        self.dedup_collisions += o.dedup_collisions;
        self.rank_violations += o.rank_violations;
        self.face_to_face_rejections += o.face_to_face_rejections;
        self.non_nodal_rejections += o.non_nodal_rejections;
        self.nodal_subdivisions += o.nodal_subdivisions;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub spec: SurfaceSpec,
    pub genus: i64,
    pub lambda: LambdaOrder,
    pub counts: Counts,
    pub diagnostics: Diagnostics,
}

/// One nodal subdivision together with the path that produced it, serialized
/// as a single flat object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContributionRecord {
    pub path: LatticePath,
    #[serde(flatten)]
    pub subdivision: ClassifiedSubdivision,
}

// Flattened fields go through serde's buffered content, which has no u128,
// so the flat form is read back through an explicit mirror.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatRecord {
    path: LatticePath,
    cells: Vec<crate::lattice::Cell>,
    rank: i64,
    multiplicity: u128,
    odd: bool,
    sign: i8,
    irreducible: bool,
    genus: i64,
}

impl<'de> Deserialize<'de> for ContributionRecord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FlatRecord::deserialize(d)?;
        Ok(Self {
            path: r.path,
            subdivision: ClassifiedSubdivision {
                cells: r.cells,
                rank: r.rank,
                multiplicity: r.multiplicity,
                odd: r.odd,
                sign: r.sign,
                irreducible: r.irreducible,
                genus: r.genus,
            },
        })
    }
}

/// Everything the per-path work needs; immutable and shared by the workers.
#[derive(Clone, Debug)]
pub struct PathContext {
    pub polygon: LatticePolygon,
    /// Path length `r(Δ) + g`.
    pub length: usize,
}

#[derive(Clone, Debug, Default)]
pub struct PathOutcome {
    /// Sorted by cells.
    pub subdivisions: Vec<ClassifiedSubdivision>,
    pub diagnostics: Diagnostics,
}

/// Compresses both sides of one path and classifies every nodal combination.
pub fn process_path(ctx: &PathContext, path: &LatticePath) -> Result<PathOutcome, CountError> {
    let mut out = PathOutcome::default();
    out.diagnostics.paths_enumerated = 1;
    let plus = compressing_subdivisions(&Region::new(&ctx.polygon, path, RegionSide::Plus), &ctx.polygon);
    out.diagnostics.dead_ends += plus.dead_ends;
    out.diagnostics.dedup_collisions += plus.collisions;
    if plus.subdivisions.is_empty() {
        return Ok(out);
    }
    let minus = compressing_subdivisions(&Region::new(&ctx.polygon, path, RegionSide::Minus), &ctx.polygon);
    out.diagnostics.dead_ends += minus.dead_ends;
    out.diagnostics.dedup_collisions += minus.collisions;
    for sp in &plus.subdivisions {
        for sm in &minus.subdivisions {
            let s = Subdivision::new(ctx.polygon.clone(), assemble(sp, sm), path.clone());
            match nodality(&s) {
                Nodality::Nodal => {}
                Nodality::NotFaceToFace => {
                    out.diagnostics.face_to_face_rejections += 1;
                    continue;
                }
                Nodality::NotTiling | Nodality::MissingBoundaryVertex => {
                    out.diagnostics.non_nodal_rejections += 1;
                    continue;
                }
            }
            let c = ClassifiedSubdivision::classify(&s).ok_or(CountError::Overflow)?;
            if c.rank != ctx.length as i64 {
                out.diagnostics.rank_violations += 1;
                continue;
            }
            out.diagnostics.nodal_subdivisions += 1;
            out.subdivisions.push(c);
        }
    }
    out.subdivisions.sort_by(|a, b| a.cells.cmp(&b.cells));
    Ok(out)
}

/// Validates a request and returns the polygon and path length it implies.
pub fn prepare(req: &CountRequest) -> Result<PathContext, CountError> {
    let polygon = newton_polygon(&req.spec)?;
    let delta = polygon.interior_lattice_points().len() as u64;
    if req.genus < 0 || req.genus as u64 > delta {
        return Err(CountError::GenusOutOfRange { genus: req.genus, max: delta });
    }
    if req.genus != 0 && req.kinds.contains(&CountKind::Welschinger) && !req.ack_noninvariant {
        return Err(CountError::WelschingerNonInvariant(req.genus as u64));
    }
    req.order.validate_for_polygon(&polygon)?;
    let r = polygon.boundary_lattice_points().len() - 1;
    Ok(PathContext { polygon, length: r + req.genus as usize })
}

#[derive(Default)]
struct Totals {
    complex_total: u128,
    complex_irreducible: u128,
    welschinger: i128,
}

impl Totals {
    fn add(&mut self, c: &ClassifiedSubdivision) -> Result<(), CountError> {
        self.complex_total = self.complex_total.checked_add(c.multiplicity).ok_or(CountError::Overflow)?;
        if c.irreducible {
            self.complex_irreducible =
                self.complex_irreducible.checked_add(c.multiplicity).ok_or(CountError::Overflow)?;
            if c.odd {
                self.welschinger += c.sign as i128;
            }
        }
        Ok(())
    }
}

/// Runs the pipeline, handing every path's nodal subdivisions to `sink` in
/// deterministic order.
pub fn run<F>(req: &CountRequest, mut sink: F) -> Result<CountReport, CountError>
where
    F: FnMut(&LatticePath, &[ClassifiedSubdivision]),
{
    let ctx = prepare(req)?;
    let mut paths = enumerate_paths(&ctx.polygon, &req.order, ctx.length)?;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(k) = req.workers {
            b = b.num_threads(k.max(1));
        }
        b.build().expect("thread pool")
    };
    let mut totals = Totals::default();
    let mut diagnostics = Diagnostics::default();
    loop {
        let chunk: Vec<LatticePath> = paths.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<Result<PathOutcome, CountError>> =
            pool.install(|| chunk.par_iter().map(|g| process_path(&ctx, g)).collect());
        for (path, res) in chunk.iter().zip(results) {
            let outcome = res?;
            diagnostics.merge(&outcome.diagnostics);
            for c in &outcome.subdivisions {
                totals.add(c)?;
            }
            if !outcome.subdivisions.is_empty() {
                sink(path, &outcome.subdivisions);
            }
        }
    }
    let want = |k| req.kinds.contains(&k);
    Ok(CountReport {
        spec: req.spec,
        genus: req.genus,
        lambda: req.order,
        counts: Counts {
            complex_total: want(CountKind::ComplexTotal).then_some(totals.complex_total),
            complex_irreducible: want(CountKind::ComplexIrreducible).then_some(totals.complex_irreducible),
            welschinger: want(CountKind::Welschinger).then_some(totals.welschinger),
        },
        diagnostics,
    })
}

/// Exact complex and Welschinger counts.
pub fn count(req: &CountRequest) -> Result<CountReport, CountError> {
    run(req, |_, _| {})
}

/// Streams every contribution record in path order, then canonical
/// subdivision order.
pub fn for_each_contribution<F>(req: &CountRequest, mut f: F) -> Result<CountReport, CountError>
where
    F: FnMut(ContributionRecord),
{
    run(req, |path, subs| {
        for s in subs {
            f(ContributionRecord { path: path.clone(), subdivision: s.clone() });
        }
    })
}

pub fn enumerate_contributions(req: &CountRequest) -> Result<Vec<ContributionRecord>, CountError> {
    let mut out = Vec::new();
    for_each_contribution(req, |r| out.push(r))?;
    Ok(out)
}

/// True iff every requested count agrees across the given orders.
pub fn invariance_audit(req: &CountRequest, orders: &[LambdaOrder]) -> Result<bool, CountError> {
    assert!(orders.len() >= 2, "an invariance audit needs at least two orders");
    let mut first: Option<Counts> = None;
    let mut agree = true;
    for o in orders {
        let report = count(&req.clone().with_order(*o))?;
        match first {
            None => first = Some(report.counts),
            Some(c) => agree &= c == report.counts,
        }
    }
    Ok(agree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Cell, LatticePoint};

    fn spec(s: &str) -> SurfaceSpec {
        s.parse().unwrap()
    }

    #[test]
    fn line_through_two_points() {
        let r = count(&CountRequest::new(spec("p2:1"), 0)).unwrap();
        assert_eq!(r.counts.complex_total, Some(1));
        assert_eq!(r.counts.complex_irreducible, Some(1));
        assert_eq!(r.counts.welschinger, Some(1));
        let recs = enumerate_contributions(&CountRequest::new(spec("p2:1"), 0)).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].subdivision.multiplicity, 1);
        assert_eq!(recs[0].subdivision.sign, 1);
    }

    #[test]
    fn conic_through_five_points() {
        let recs = enumerate_contributions(&CountRequest::new(spec("p2:2"), 0)).unwrap();
        assert_eq!(recs.len(), 1);
        let s = &recs[0].subdivision;
        assert_eq!(s.multiplicity, 1);
        assert_eq!(s.cells.len(), 4);
        assert!(s.cells.iter().all(|c| matches!(c, Cell::Triangle(_)) && c.normalized_area() == 1));
        assert_eq!(recs[0].path.points()[0], LatticePoint::new(0, 2));
    }

    #[test]
    fn cubics() {
        let req = CountRequest::new(spec("p2:3"), 0);
        let r = count(&req).unwrap();
        assert_eq!(r.counts.complex_irreducible, Some(12));
        assert_eq!(r.diagnostics.paths_enumerated, 8);
        let recs = enumerate_contributions(&req).unwrap();
        assert_eq!(recs.iter().map(|r| r.subdivision.multiplicity).sum::<u128>(), r.counts.complex_total.unwrap());
        let one = count(&CountRequest::new(spec("p2:3"), 1).with_kinds([CountKind::ComplexTotal])).unwrap();
        assert_eq!(one.counts.complex_total, Some(1));
    }

    #[test]
    fn request_errors() {
        let err = count(&CountRequest::new(spec("p2:3"), 2)).unwrap_err();
        assert!(matches!(err, CountError::GenusOutOfRange { genus: 2, max: 1 }));
        let err = count(&CountRequest::new(spec("p2:3"), -1)).unwrap_err();
        assert!(matches!(err, CountError::GenusOutOfRange { .. }));
        let err = count(&CountRequest::new(spec("p2:3"), 1)).unwrap_err();
        assert!(matches!(err, CountError::WelschingerNonInvariant(1)));
        assert!(err.to_string().contains("g >= 1"));
        assert!(count(&CountRequest::new(spec("p2:3"), 1).acknowledge_noninvariance()).is_ok());
        let bad = LambdaOrder::new((1, 1), (0, 0)).unwrap();
        assert!(matches!(count(&CountRequest::new(spec("p2:2"), 0).with_order(bad)), Err(CountError::Order(_))));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let req = CountRequest::new(spec("quadric:2,2"), 0);
        let a = enumerate_contributions(&req.clone().with_workers(1)).unwrap();
        let b = enumerate_contributions(&req.with_workers(4)).unwrap();
        assert_eq!(a, b);
    }
    #[test]
    fn records_roundtrip_through_json() {
        let recs = enumerate_contributions(&CountRequest::new(spec("p2:3"), 0)).unwrap();
        for r in &recs {
            let text = serde_json::to_string(r).unwrap();
            assert!(text.starts_with("{\"path\":"));
            assert_eq!(&serde_json::from_str::<ContributionRecord>(&text).unwrap(), r);
        }
    }

    fn other_orders() -> Vec<LambdaOrder> {
        vec![
            LambdaOrder::lambda0(),
            LambdaOrder::new((1, -1), (1, 0)).unwrap(),
            LambdaOrder::new((2, -1), (0, -1)).unwrap(),
            LambdaOrder::new((1, -2), (1, 0)).unwrap(),
        ]
    }

    #[test]
    fn counts_do_not_depend_on_the_order() {
        for s in ["p2:3", "quadric:2,2", "p3b:4;1,1,1"] {
            let req = CountRequest::new(spec(s), 0);
            assert!(invariance_audit(&req, &other_orders()).unwrap(), "{s}");
            for o in other_orders() {
                let d = count(&req.clone().with_order(o)).unwrap().diagnostics;
                assert_eq!(d.rank_violations, 0, "{s} {o}");
                assert_eq!(d.face_to_face_rejections, 0, "{s} {o}");
            }
        }
    }

    #[test]
    fn cremona_pairs_agree() {
        let a = count(&CountRequest::new(spec("p3b:5;2,2,2"), 0)).unwrap();
        let b = count(&CountRequest::new(spec("p3b:4;1,1,1"), 0)).unwrap();
        assert_eq!(a.counts, b.counts);
        assert_eq!(b.counts.complex_irreducible, Some(620));
    }
}
