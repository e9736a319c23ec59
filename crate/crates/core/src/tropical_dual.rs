//! Tropical curves as corner loci of Legendre transforms of lifts, and their
//! dual regular subdivisions.
//!
//! All arithmetic is exact over `Ratio<i128>`. Nothing here is used by the
//! counting engine; it exists for rendering and for cross-checking the dual
//! graph conventions of the classifier.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::TropicalError;
use crate::lattice::{convex_hull, lattice_length, primitive, LatticePoint, LatticePolygon};

pub type Q = Ratio<i128>;

fn q(n: i64) -> Q {
    Q::from_integer(n as i128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QPoint {
    pub x: Q,
    pub y: Q,
}

impl QPoint {
    pub fn new(x: Q, y: Q) -> Self {
        Self { x, y }
    }

    fn pairing(&self, p: LatticePoint) -> Q {
        q(p.i) * self.x + q(p.j) * self.y
    }

    fn shifted(&self, dir: LatticePoint, t: Q) -> Self {
        Self::new(self.x + t * q(dir.i), self.y + t * q(dir.j))
    }
}

/// A finite support `A` with a rational value at each point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftFunction {
    support: Vec<LatticePoint>,
    values: Vec<Q>,
}

impl LiftFunction {
    pub fn new(support: Vec<LatticePoint>, values: Vec<Q>) -> Result<Self, TropicalError> {
        if support.len() != values.len() {
            return Err(TropicalError::LengthMismatch(support.len(), values.len()));
        }
        let mut seen = BTreeSet::new();
        for &p in &support {
            if !seen.insert(p) {
                return Err(TropicalError::DuplicatePoint(p));
            }
        }
        if support.len() < 2 {
            return Err(TropicalError::DegenerateSupport);
        }
        Ok(Self { support, values })
    }

    pub fn zero(support: Vec<LatticePoint>) -> Result<Self, TropicalError> {
        let n = support.len();
        Self::new(support, vec![Q::zero(); n])
    }

    pub fn support(&self) -> &[LatticePoint] {
        &self.support
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn value(&self, p: LatticePoint) -> Option<Q> {
        self.support.iter().position(|&a| a == p).map(|k| self.values[k])
    }

    /// Vertices of `Δ(A)`, counterclockwise.
    pub fn hull(&self) -> Vec<LatticePoint> {
        convex_hull(&self.support)
    }

    fn is_planar(&self) -> bool {
        self.hull().len() >= 3
    }

    fn form(&self, k: usize, x: &QPoint) -> Q {
        x.pairing(self.support[k]) - self.values[k]
    }

    /// Indices of the forms attaining the maximum at `x`, with the maximum.
    fn max_set(&self, x: &QPoint) -> (Q, Vec<usize>) {
        let vals: Vec<Q> = (0..self.support.len()).map(|k| self.form(k, x)).collect();
        let best = *vals.iter().max().unwrap();
        (best, (0..vals.len()).filter(|&k| vals[k] == best).collect())
    }
}

/// `ν̂(x) = max over A of ⟨a, x⟩ − ν(a)`.
pub fn legendre_value(f: &LiftFunction, x: &QPoint) -> Q {
    f.max_set(x).0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalVertex {
    pub position: QPoint,
    /// Support points whose forms attain the maximum here, sorted.
    pub dual: Vec<LatticePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalEdge {
    pub from: usize,
    pub to: usize,
    /// Primitive direction from `from` to `to`.
    pub direction: LatticePoint,
    pub weight: u64,
    pub dual: (LatticePoint, LatticePoint),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalRay {
    pub from: usize,
    pub direction: LatticePoint,
    pub weight: u64,
    pub dual: (LatticePoint, LatticePoint),
}

/// A full line, which only occurs when the support is collinear.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalLine {
    pub point: QPoint,
    pub direction: LatticePoint,
    pub weight: u64,
    pub dual: (LatticePoint, LatticePoint),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalCurveGraph {
    pub vertices: Vec<TropicalVertex>,
    pub edges: Vec<TropicalEdge>,
    pub rays: Vec<TropicalRay>,
    pub lines: Vec<TropicalLine>,
}

// Point where forms a, b, c tie, if they are affinely independent.
fn triple_tie(f: &LiftFunction, a: usize, b: usize, c: usize) -> Option<QPoint> {
    let (pa, pb, pc) = (f.support[a], f.support[b], f.support[c]);
    let (u, v) = (pb - pa, pc - pa);
    let det = u.cross(v);
    if det == 0 {
        return None;
    }
    let (r1, r2) = (f.values[b] - f.values[a], f.values[c] - f.values[a]);
    let det = q(det);
    let x = (r1 * q(v.j) - r2 * q(u.j)) / det;
    let y = (q(u.i) * r2 - q(v.i) * r1) / det;
    Some(QPoint::new(x, y))
}

fn sorted_points(f: &LiftFunction, idx: &[usize]) -> Vec<LatticePoint> {
    let mut v: Vec<LatticePoint> = idx.iter().map(|&k| f.support[k]).collect();
    v.sort();
    v
}

/// The non-smooth locus of `ν̂` as a weighted graph with exact vertices.
pub fn corner_locus(f: &LiftFunction) -> Result<TropicalCurveGraph, TropicalError> {
    let n = f.support.len();
    let mut index: BTreeMap<QPoint, usize> = BTreeMap::new();
    let mut graph = TropicalCurveGraph::default();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let Some(x) = triple_tie(f, a, b, c) else { continue };
                if index.contains_key(&x) {
                    continue;
                }
                let (_, ms) = f.max_set(&x);
                if !(ms.contains(&a) && ms.contains(&b) && ms.contains(&c)) {
                    continue;
                }
                index.insert(x, graph.vertices.len());
                graph.vertices.push(TropicalVertex { position: x, dual: sorted_points(f, &ms) });
            }
        }
    }

    for a in 0..n {
        for b in a + 1..n {
            let (pa, pb) = (f.support[a], f.support[b]);
            let d = pb - pa;
            let dir = primitive(LatticePoint::new(-d.j, d.i));
            // base point on the tie line ⟨d, x⟩ = ν(b) − ν(a)
            let scale = (f.values[b] - f.values[a]) / q(d.dot(d));
            let x0 = QPoint::new(scale * q(d.i), scale * q(d.j));
            let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
            let mut empty = false;
            for c in 0..n {
                if c == a || c == b {
                    continue;
                }
                let e = f.support[c] - pa;
                let rhs = f.values[c] - f.values[a] - x0.pairing(e);
                let slope = q(e.dot(dir));
                if slope.is_zero() {
                    if rhs.is_negative() {
                        empty = true;
                    }
                } else if slope.is_positive() {
                    let t = rhs / slope;
                    hi = Some(hi.map_or(t, |h| h.min(t)));
                } else {
                    let t = rhs / slope;
                    lo = Some(lo.map_or(t, |l| l.max(t)));
                }
            }
            if empty {
                continue;
            }
            if let (Some(l), Some(h)) = (lo, hi) {
                if l >= h {
                    continue;
                }
            }
            // a generic point of the piece decides the full max-set
            let t_mid = match (lo, hi) {
                (Some(l), Some(h)) => (l + h) / q(2),
                (Some(l), None) => l + Q::one(),
                (None, Some(h)) => h - Q::one(),
                (None, None) => Q::zero(),
            };
            let (_, ms) = f.max_set(&x0.shifted(dir, t_mid));
            let tied = sorted_points(f, &ms);
            let (first, last) = (tied[0], *tied.last().unwrap());
            let (ea, eb) = if pa < pb { (pa, pb) } else { (pb, pa) };
            if (first, last) != (ea, eb) {
                continue;
            }
            let weight = lattice_length(pa, pb);
            let dual = (ea, eb);
            let vertex = |t: Q| index[&x0.shifted(dir, t)];
            match (lo, hi) {
                (Some(l), Some(h)) => {
                    graph.edges.push(TropicalEdge { from: vertex(l), to: vertex(h), direction: dir, weight, dual })
                }
                (Some(l), None) => graph.rays.push(TropicalRay { from: vertex(l), direction: dir, weight, dual }),
                (None, Some(h)) => graph.rays.push(TropicalRay { from: vertex(h), direction: -dir, weight, dual }),
                (None, None) => graph.lines.push(TropicalLine { point: x0, direction: dir, weight, dual }),
            }
        }
    }
    Ok(graph)
}

/// A cell of a regular subdivision: its corners, counterclockwise. Segments
/// appear only for collinear supports.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegularCell {
    pub corners: Vec<LatticePoint>,
}

impl RegularCell {
    pub fn normalized_area(&self) -> u64 {
        match LatticePolygon::new(self.corners.clone()) {
            Ok(p) => p.normalized_area(),
            Err(_) => 0,
        }
    }

    /// Undirected sides, each as a sorted pair.
    pub fn sides(&self) -> Vec<(LatticePoint, LatticePoint)> {
        let k = self.corners.len();
        if k == 2 {
            return vec![(self.corners[0], self.corners[1])];
        }
        (0..k)
            .map(|t| {
                let (a, b) = (self.corners[t], self.corners[(t + 1) % k]);
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularSubdivision {
    pub hull: Vec<LatticePoint>,
    pub cells: Vec<RegularCell>,
}

/// Projections of the lower faces of the lifted points `(i, j, ν(i, j))`.
pub fn regular_subdivision(f: &LiftFunction) -> Result<RegularSubdivision, TropicalError> {
    let n = f.support.len();
    let hull = f.hull();
    let mut cells = BTreeSet::new();
    if f.is_planar() {
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    // the plane through three lifted points is the form tie at
                    // a corner-locus vertex, read the other way round
                    let Some(x) = triple_tie(f, a, b, c) else { continue };
                    let level = f.form(a, &x);
                    // lower face: every lifted point on or above the plane
                    let on: Vec<usize> = (0..n).filter(|&k| f.form(k, &x) == level).collect();
                    if (0..n).any(|k| f.form(k, &x) > level) {
                        continue;
                    }
                    let pts: Vec<LatticePoint> = on.iter().map(|&k| f.support[k]).collect();
                    cells.insert(RegularCell { corners: convex_hull(&pts) });
                }
            }
        }
    } else {
        // collinear support: lower hull of a planar point set over a line
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| f.support[k]);
        let (p0, p1) = (f.support[order[0]], f.support[*order.last().unwrap()]);
        let dir = primitive(p1 - p0);
        let coord = |k: usize| {
            let d = f.support[k] - p0;
            if dir.i != 0 {
                d.i / dir.i
            } else {
                d.j / dir.j
            }
        };
        let mut lower: Vec<usize> = Vec::new();
        for &k in &order {
            while lower.len() >= 2 {
                let (u, v) = (lower[lower.len() - 2], lower[lower.len() - 1]);
                // drop v unless it lies strictly below the chord u–k
                let lhs = (f.values[v] - f.values[u]) * q(coord(k) - coord(u));
                let rhs = (f.values[k] - f.values[u]) * q(coord(v) - coord(u));
                if lhs >= rhs {
                    lower.pop();
                } else {
                    break;
                }
            }
            lower.push(k);
        }
        for w in lower.windows(2) {
            cells.insert(RegularCell { corners: vec![f.support[w[0]], f.support[w[1]]] });
        }
    }
    Ok(RegularSubdivision { hull, cells: cells.into_iter().collect() })
}

impl RegularSubdivision {
    /// Sum of cell areas equals the area of `Δ(A)`.
    pub fn tiles_hull(&self) -> bool {
        if self.hull.len() < 3 {
            return true;
        }
        let total = LatticePolygon::new(self.hull.clone()).map(|p| p.normalized_area()).unwrap_or(0);
        self.cells.iter().map(RegularCell::normalized_area).sum::<u64>() == total
    }
}

/// `Σ weight · direction = 0` at every vertex, over outgoing edges and rays.
pub fn balancing_check(curve: &TropicalCurveGraph) -> bool {
    let mut sums = vec![LatticePoint::new(0, 0); curve.vertices.len()];
    let scaled = |d: LatticePoint, w: u64| LatticePoint::new(d.i * w as i64, d.j * w as i64);
    for e in &curve.edges {
        sums[e.from] = sums[e.from] + scaled(e.direction, e.weight);
        sums[e.to] = sums[e.to] - scaled(e.direction, e.weight);
    }
    for r in &curve.rays {
        sums[r.from] = sums[r.from] + scaled(r.direction, r.weight);
    }
    sums.iter().all(|s| s.i == 0 && s.j == 0)
}

/// Checks that `curve` and `subdiv` are dual: vertices match cells, bounded
/// edges match interior sides and rays match boundary sides, with orthogonal
/// directions and weights equal to lattice lengths.
pub fn duality_check(curve: &TropicalCurveGraph, subdiv: &RegularSubdivision) -> bool {
    if subdiv.hull.len() < 3 {
        if !(curve.vertices.is_empty() && curve.edges.is_empty() && curve.rays.is_empty()) {
            return false;
        }
        let lines: BTreeSet<_> = curve.lines.iter().map(|l| l.dual).collect();
        let segs: BTreeSet<_> = subdiv.cells.iter().map(|c| c.sides()[0]).collect();
        return lines.len() == curve.lines.len()
            && lines == segs
            && curve.lines.iter().all(|l| dual_ok(l.direction, l.weight, l.dual));
    }
    if !curve.lines.is_empty() {
        return false;
    }

    // vertices ↔ cells
    let mut cell_of_vertex = Vec::with_capacity(curve.vertices.len());
    let cells: BTreeSet<&RegularCell> = subdiv.cells.iter().collect();
    for v in &curve.vertices {
        let c = RegularCell { corners: convex_hull(&v.dual) };
        if !cells.contains(&c) {
            return false;
        }
        cell_of_vertex.push(c);
    }
    if cell_of_vertex.iter().collect::<BTreeSet<_>>().len() != subdiv.cells.len()
        || curve.vertices.len() != subdiv.cells.len()
    {
        return false;
    }

    // sides with the cells containing them
    let mut sides: BTreeMap<(LatticePoint, LatticePoint), Vec<&RegularCell>> = BTreeMap::new();
    for c in &subdiv.cells {
        for s in c.sides() {
            sides.entry(s).or_default().push(c);
        }
    }
    if sides.values().any(|v| v.len() > 2) {
        return false;
    }
    let has_side = |c: &RegularCell, s| c.sides().contains(&s);

    let mut seen = BTreeSet::new();
    for e in &curve.edges {
        let Some(owners) = sides.get(&e.dual) else { return false };
        if owners.len() != 2 || !seen.insert(e.dual) || !dual_ok(e.direction, e.weight, e.dual) {
            return false;
        }
        let (cf, ct) = (&cell_of_vertex[e.from], &cell_of_vertex[e.to]);
        if cf == ct || !has_side(cf, e.dual) || !has_side(ct, e.dual) {
            return false;
        }
    }
    for r in &curve.rays {
        let Some(owners) = sides.get(&r.dual) else { return false };
        if owners.len() != 1 || !seen.insert(r.dual) || !dual_ok(r.direction, r.weight, r.dual) {
            return false;
        }
        if !has_side(&cell_of_vertex[r.from], r.dual) {
            return false;
        }
        // the ray leaves Δ(A) through the side it crosses
        let a = r.dual.0;
        if subdiv.hull.iter().any(|&c| (c - a).dot(r.direction) > 0) {
            return false;
        }
    }
    seen.len() == sides.len()
}

fn dual_ok(direction: LatticePoint, weight: u64, (a, b): (LatticePoint, LatticePoint)) -> bool {
    direction.dot(b - a) == 0 && weight == lattice_length(a, b)
}
