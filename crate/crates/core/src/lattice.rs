//! Exact planar lattice geometry: points, segments, convex polygons and cells.
//!
//! Areas are normalized (twice the Euclidean area) so a unimodular triangle
//! has area 1 and everything stays in integer arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// A point of the integer lattice; `i` and `j` are the exponents of `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct LatticePoint {
    pub i: i64,
    pub j: i64,
}

impl LatticePoint {
    pub const fn new(i: i64, j: i64) -> Self {
        Self { i, j }
    }

    /// z-component of the cross product `self × other`.
    pub fn cross(self, other: Self) -> i64 {
        self.i * other.j - self.j * other.i
    }

    pub fn dot(self, other: Self) -> i64 {
        self.i * other.i + self.j * other.j
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((i, j): (i64, i64)) -> Self {
        Self { i, j }
    }
}

impl From<LatticePoint> for (i64, i64) {
    fn from(p: LatticePoint) -> Self {
        (p.i, p.j)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl Add for LatticePoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.i + rhs.i, self.j + rhs.j)
    }
}

impl Sub for LatticePoint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.i - rhs.i, self.j - rhs.j)
    }
}

impl Neg for LatticePoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.i, -self.j)
    }
}

/// Twice the signed area of the triangle `(a, b, c)`; positive when counterclockwise.
pub fn orient(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i64 {
    (b - a).cross(c - a)
}

/// Which side of a directed path a region lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// True iff a region on `side` of the directed polyline `prev -> v -> next`
/// has an interior angle strictly less than π at `v`.
///
/// Collinear triples (angle π) return false.
pub fn interior_angle_lt_pi(prev: LatticePoint, v: LatticePoint, next: LatticePoint, side: Side) -> bool {
    let turn = (v - prev).cross(next - v);
    match side {
        Side::Left => turn > 0,
        Side::Right => turn < 0,
    }
}

/// A segment between two distinct lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSegment {
    a: LatticePoint,
    b: LatticePoint,
}

impl LatticeSegment {
    pub fn new(a: LatticePoint, b: LatticePoint) -> Result<Self, GeometryError> {
        if a == b {
            return Err(GeometryError::DegenerateSegment(a));
        }
        Ok(Self { a, b })
    }

    pub fn endpoints(&self) -> (LatticePoint, LatticePoint) {
        (self.a, self.b)
    }

    /// Number of primitive lattice steps along the segment.
    pub fn lattice_length(&self) -> u64 {
        lattice_length(self.a, self.b)
    }

    /// All lattice points on the segment from `a` to `b`, endpoints included.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        segment_points(self.a, self.b)
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        on_segment(self.a, self.b, p)
    }
}

/// gcd of the absolute coordinate differences; 0 when `a == b`.
pub fn lattice_length(a: LatticePoint, b: LatticePoint) -> u64 {
    let d = b - a;
    d.i.unsigned_abs().gcd(&d.j.unsigned_abs())
}

/// Primitive direction of `v`; `v` itself when zero.
pub fn primitive(v: LatticePoint) -> LatticePoint {
    let g = v.i.unsigned_abs().gcd(&v.j.unsigned_abs()) as i64;
    if g == 0 {
        v
    } else {
        LatticePoint::new(v.i / g, v.j / g)
    }
}

pub(crate) fn segment_points(a: LatticePoint, b: LatticePoint) -> Vec<LatticePoint> {
    let n = lattice_length(a, b) as i64;
    if n == 0 {
        return vec![a];
    }
    let step = primitive(b - a);
    (0..=n).map(|k| LatticePoint::new(a.i + k * step.i, a.j + k * step.j)).collect()
}

/// Closed-segment membership.
pub fn on_segment(a: LatticePoint, b: LatticePoint, p: LatticePoint) -> bool {
    orient(a, b, p) == 0 && p.i >= a.i.min(b.i) && p.i <= a.i.max(b.i) && p.j >= a.j.min(b.j) && p.j <= a.j.max(b.j)
}

/// A strictly convex lattice polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl LatticePolygon {
    /// Builds a polygon from a cyclic vertex list.
    ///
    /// Consecutive duplicates and vertices with a straight angle are dropped,
    /// clockwise input is reversed. Fails unless the result is strictly convex
    /// with positive area.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self, GeometryError> {
        let mut vs = simplify_cycle(vertices);
        if vs.len() < 3 {
            return Err(GeometryError::Degenerate);
        }
        let signed: i64 = shoelace(&vs);
        if signed == 0 {
            return Err(GeometryError::Degenerate);
        }
        if signed < 0 {
            vs.reverse();
        }
        let n = vs.len();
        for k in 0..n {
            let (a, b, c) = (vs[k], vs[(k + 1) % n], vs[(k + 2) % n]);
            if orient(a, b, c) <= 0 {
                return Err(GeometryError::NotConvex(b));
            }
        }
        Ok(Self { vertices: vs })
    }

    /// Convex hull of a point set; `None` when the points are collinear.
    pub fn hull(points: &[LatticePoint]) -> Option<Self> {
        let hull = convex_hull(points);
        if hull.len() < 3 {
            return None;
        }
        Self::new(hull).ok()
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Directed edges `(v_k, v_{k+1})` in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |k| (self.vertices[k], self.vertices[(k + 1) % n]))
    }

    pub fn normalized_area(&self) -> u64 {
        shoelace(&self.vertices).unsigned_abs()
    }

    /// Boundary lattice points in counterclockwise order starting at the first vertex.
    pub fn boundary_lattice_points(&self) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            let pts = segment_points(a, b);
            out.extend_from_slice(&pts[..pts.len() - 1]);
        }
        out
    }

    /// Lattice points strictly inside, sorted lexicographically.
    pub fn interior_lattice_points(&self) -> Vec<LatticePoint> {
        self.lattice_points().into_iter().filter(|&p| self.strictly_contains(p)).collect()
    }

    /// All lattice points of the closed polygon, sorted lexicographically.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for i in lo.i..=hi.i {
            for j in lo.j..=hi.j {
                let p = LatticePoint::new(i, j);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let min_i = self.vertices.iter().map(|v| v.i).min().unwrap_or(0);
        let max_i = self.vertices.iter().map(|v| v.i).max().unwrap_or(0);
        let min_j = self.vertices.iter().map(|v| v.j).min().unwrap_or(0);
        let max_j = self.vertices.iter().map(|v| v.j).max().unwrap_or(0);
        (LatticePoint::new(min_i, min_j), LatticePoint::new(max_i, max_j))
    }

    /// Closed containment.
    pub fn contains(&self, p: LatticePoint) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p) >= 0)
    }

    pub fn strictly_contains(&self, p: LatticePoint) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p) > 0)
    }

    pub fn on_boundary(&self, p: LatticePoint) -> bool {
        self.contains(p) && !self.strictly_contains(p)
    }

    /// The boundary edge containing the closed segment `a b`, if any.
    pub fn boundary_edge_containing(&self, a: LatticePoint, b: LatticePoint) -> Option<(LatticePoint, LatticePoint)> {
        self.edges().find(|&(u, v)| on_segment(u, v, a) && on_segment(u, v, b))
    }

    /// Applies `p -> m·p + t` to every vertex.
    pub fn transform(&self, m: [[i64; 2]; 2], t: LatticePoint) -> Result<Self, GeometryError> {
        Self::new(self.vertices.iter().map(|&v| apply_affine(m, t, v)).collect())
    }
}

pub(crate) fn apply_affine(m: [[i64; 2]; 2], t: LatticePoint, p: LatticePoint) -> LatticePoint {
    LatticePoint::new(m[0][0] * p.i + m[0][1] * p.j + t.i, m[1][0] * p.i + m[1][1] * p.j + t.j)
}

fn shoelace(vs: &[LatticePoint]) -> i64 {
    let n = vs.len();
    (0..n).map(|k| vs[k].cross(vs[(k + 1) % n])).sum()
}

fn simplify_cycle(vertices: Vec<LatticePoint>) -> Vec<LatticePoint> {
    let mut vs = vertices;
    loop {
        let n = vs.len();
        if n < 3 {
            vs.dedup();
            if vs.len() > 1 && vs.first() == vs.last() {
                vs.pop();
            }
            return vs;
        }
        let drop = (0..n).find(|&k| {
            let prev = vs[(k + n - 1) % n];
            let cur = vs[k];
            let next = vs[(k + 1) % n];
            cur == next || (orient(prev, cur, next) == 0 && (cur - prev).dot(next - cur) >= 0)
        });
        match drop {
            Some(k) => {
                vs.remove(k);
            }
            None => return vs,
        }
    }
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
pub fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Kind of a cell of a nodal subdivision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Triangle,
    Parallelogram,
}

/// A lattice triangle or parallelogram, stored counterclockwise starting at its
/// lexicographically smallest vertex so equal cells compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Triangle([LatticePoint; 3]),
    Parallelogram([LatticePoint; 4]),
}

impl Cell {
    pub fn triangle(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Result<Self, GeometryError> {
        let o = orient(a, b, c);
        if o == 0 {
            return Err(GeometryError::Degenerate);
        }
        let mut v = if o > 0 { [a, b, c] } else { [a, c, b] };
        rotate_to_min(&mut v);
        Ok(Cell::Triangle(v))
    }

    /// Vertices must be cyclic with `a + c == b + d`.
    pub fn parallelogram(
        a: LatticePoint,
        b: LatticePoint,
        c: LatticePoint,
        d: LatticePoint,
    ) -> Result<Self, GeometryError> {
        if a + c != b + d {
            return Err(GeometryError::NotParallelogram);
        }
        let o = orient(a, b, c);
        if o == 0 {
            return Err(GeometryError::Degenerate);
        }
        let mut v = if o > 0 { [a, b, c, d] } else { [a, d, c, b] };
        rotate_to_min(&mut v);
        Ok(Cell::Parallelogram(v))
    }

    pub fn kind(&self) -> CellKind {
        match self {
            Cell::Triangle(_) => CellKind::Triangle,
            Cell::Parallelogram(_) => CellKind::Parallelogram,
        }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        match self {
            Cell::Triangle(v) => v,
            Cell::Parallelogram(v) => v,
        }
    }

    pub fn normalized_area(&self) -> u64 {
        let v = self.vertices();
        let a = orient(v[0], v[1], v[2]).unsigned_abs();
        match self {
            Cell::Triangle(_) => a,
            Cell::Parallelogram(_) => 2 * a,
        }
    }

    /// Edges as ordered endpoint pairs `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let v = self.vertices();
        let n = v.len();
        (0..n).map(move |k| undirected(v[k], v[(k + 1) % n]))
    }

    /// Number of boundary lattice points of the cell.
    pub fn boundary_point_count(&self) -> u64 {
        let v = self.vertices();
        let n = v.len();
        (0..n).map(|k| lattice_length(v[k], v[(k + 1) % n])).sum()
    }

    /// Interior lattice points by Pick's formula.
    pub fn interior_point_count(&self) -> u64 {
        (self.normalized_area() + 2 - self.boundary_point_count()) / 2
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        let v = self.vertices();
        let n = v.len();
        (0..n).all(|k| orient(v[k], v[(k + 1) % n], p) >= 0)
    }

    pub fn transform(&self, m: [[i64; 2]; 2], t: LatticePoint) -> Result<Self, GeometryError> {
        let v: Vec<LatticePoint> = self.vertices().iter().map(|&p| apply_affine(m, t, p)).collect();
        match self {
            Cell::Triangle(_) => Cell::triangle(v[0], v[1], v[2]),
            Cell::Parallelogram(_) => Cell::parallelogram(v[0], v[1], v[2], v[3]),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Cell", 2)?;
        st.serialize_field("kind", &self.kind())?;
        st.serialize_field("vertices", self.vertices())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kind: CellKind,
            vertices: Vec<LatticePoint>,
        }
        let raw = Raw::deserialize(d)?;
        let v = &raw.vertices;
        let cell = match (raw.kind, v.len()) {
            (CellKind::Triangle, 3) => Cell::triangle(v[0], v[1], v[2]),
            (CellKind::Parallelogram, 4) => Cell::parallelogram(v[0], v[1], v[2], v[3]),
            _ => Err(GeometryError::Degenerate),
        };
        cell.map_err(serde::de::Error::custom)
    }
}

fn rotate_to_min<const N: usize>(v: &mut [LatticePoint; N]) {
    let k = (0..N).min_by(|&a, &b| v[a].cmp(&v[b])).unwrap_or(0);
    v.rotate_left(k);
}

pub(crate) fn undirected(a: LatticePoint, b: LatticePoint) -> (LatticePoint, LatticePoint) {
    match a.cmp(&b) {
        Ordering::Greater => (b, a),
        _ => (a, b),
    }
}

/// Normalized area of a polygon or cell.
pub trait Area {
    fn normalized_area(&self) -> u64;
}

impl Area for LatticePolygon {
    fn normalized_area(&self) -> u64 {
        LatticePolygon::normalized_area(self)
    }
}

impl Area for Cell {
    fn normalized_area(&self) -> u64 {
        Cell::normalized_area(self)
    }
}

pub fn normalized_area<A: Area + ?Sized>(shape: &A) -> u64 {
    shape.normalized_area()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: i64, j: i64) -> LatticePoint {
        LatticePoint::new(i, j)
    }

    fn triangle(d: i64) -> LatticePolygon {
        LatticePolygon::new(vec![p(0, 0), p(d, 0), p(0, d)]).unwrap()
    }

    #[test]
    fn areas() {
        assert_eq!(normalized_area(&triangle(1)), 1);
        assert_eq!(normalized_area(&triangle(2)), 4);
        let par = Cell::parallelogram(p(0, 0), p(1, 0), p(2, 1), p(1, 1)).unwrap();
        assert_eq!(normalized_area(&par), 2);
    }

    #[test]
    fn boundary_counts() {
        assert_eq!(triangle(3).boundary_lattice_points().len(), 9);
        let rect = LatticePolygon::new(vec![p(0, 0), p(2, 0), p(2, 3), p(0, 3)]).unwrap();
        assert_eq!(rect.boundary_lattice_points().len(), 10);
        assert_eq!(triangle(1).boundary_lattice_points(), vec![p(0, 0), p(1, 0), p(0, 1)]);
    }

    #[test]
    fn interior_points() {
        assert_eq!(triangle(3).interior_lattice_points(), vec![p(1, 1)]);
        assert_eq!(triangle(4).interior_lattice_points().len(), 3);
        assert!(triangle(1).interior_lattice_points().is_empty());
    }

    #[test]
    fn angle_tests() {
        assert!(interior_angle_lt_pi(p(0, 1), p(0, 0), p(1, 0), Side::Left));
        assert!(!interior_angle_lt_pi(p(0, 1), p(0, 0), p(1, 0), Side::Right));
        assert!(!interior_angle_lt_pi(p(0, 2), p(0, 1), p(0, 0), Side::Left));
        assert!(!interior_angle_lt_pi(p(0, 2), p(0, 1), p(0, 0), Side::Right));
        assert!(interior_angle_lt_pi(p(0, 0), p(1, 1), p(2, 0), Side::Right));
    }

    #[test]
    fn polygon_normalization() {
        // clockwise, duplicated and collinear vertices
        let poly = LatticePolygon::new(vec![p(0, 0), p(0, 2), p(0, 2), p(1, 1), p(2, 0), p(1, 0)]).unwrap();
        let mut vs = poly.vertices().to_vec();
        vs.sort();
        assert_eq!(vs, vec![p(0, 0), p(0, 2), p(2, 0)]);
        assert!(orient(poly.vertices()[0], poly.vertices()[1], poly.vertices()[2]) > 0);
        assert!(matches!(
            LatticePolygon::new(vec![p(0, 0), p(2, 0), p(1, 1), p(2, 2), p(0, 2)]),
            Err(GeometryError::NotConvex(_))
        ));
        assert!(LatticePolygon::new(vec![p(0, 0), p(1, 1), p(2, 2)]).is_err());
    }

    #[test]
    fn cells_canonical() {
        let a = Cell::triangle(p(1, 0), p(0, 1), p(0, 0)).unwrap();
        let b = Cell::triangle(p(0, 0), p(1, 0), p(0, 1)).unwrap();
        assert_eq!(a, b);
        assert!(Cell::triangle(p(0, 0), p(1, 1), p(2, 2)).is_err());
        assert!(Cell::parallelogram(p(0, 0), p(1, 0), p(1, 1), p(0, 2)).is_err());
        let t = Cell::triangle(p(0, 0), p(3, 0), p(0, 3)).unwrap();
        assert_eq!(t.interior_point_count(), 1);
    }

    #[test]
    fn segments() {
        let s = LatticeSegment::new(p(0, 0), p(4, 6)).unwrap();
        assert_eq!(s.lattice_length(), 2);
        assert_eq!(s.lattice_points(), vec![p(0, 0), p(2, 3), p(4, 6)]);
        assert!(LatticeSegment::new(p(1, 1), p(1, 1)).is_err());
    }
}
