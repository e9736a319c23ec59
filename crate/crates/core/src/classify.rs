//! Nodality, rank, multiplicity, sign and irreducibility of subdivisions.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::lattice::{on_segment, Cell, CellKind, LatticePoint, LatticePolygon};
use crate::paths::LatticePath;

/// A collection of cells covering a polygon, with the path it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subdivision {
    pub ambient: LatticePolygon,
    pub cells: Vec<Cell>,
    pub provenance: LatticePath,
}

impl Subdivision {
    /// Cells are sorted into canonical order.
    pub fn new(ambient: LatticePolygon, mut cells: Vec<Cell>, provenance: LatticePath) -> Self {
        cells.sort_unstable();
        Self { ambient, cells, provenance }
    }

    pub fn vertices(&self) -> BTreeSet<LatticePoint> {
        self.cells.iter().flat_map(|c| c.vertices().iter().copied()).collect()
    }

    pub fn triangles(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.kind() == CellKind::Triangle)
    }

    pub fn parallelogram_count(&self) -> usize {
        self.cells.len() - self.triangles().count()
    }
}

/// Outcome of the nodality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Nodality {
    Nodal,
    /// Cell areas do not add up to the polygon's.
    NotTiling,
    /// Two cells meet along part of an edge or at a vertex interior to an edge.
    NotFaceToFace,
    /// Some boundary lattice point of the polygon is not a cell vertex.
    MissingBoundaryVertex,
}

pub fn nodality(s: &Subdivision) -> Nodality {
    let area: u64 = s.cells.iter().map(Cell::normalized_area).sum();
    if s.cells.is_empty() || area != s.ambient.normalized_area() {
        return Nodality::NotTiling;
    }
    let mut edges: HashMap<(LatticePoint, LatticePoint), u32> = HashMap::new();
    for c in &s.cells {
        for e in c.edges() {
            *edges.entry(e).or_default() += 1;
        }
    }
    for (&(a, b), &count) in &edges {
        let on_boundary = s.ambient.boundary_edge_containing(a, b).is_some();
        let expected = if on_boundary { 1 } else { 2 };
        if count != expected {
            return Nodality::NotFaceToFace;
        }
    }
    // a cell vertex in the relative interior of another cell's edge
    let vertices = s.vertices();
    for &(a, b) in edges.keys() {
        if vertices.iter().any(|&v| v != a && v != b && on_segment(a, b, v)) {
            return Nodality::NotFaceToFace;
        }
    }
    if s.ambient.boundary_lattice_points().iter().any(|v| !vertices.contains(v)) {
        return Nodality::MissingBoundaryVertex;
    }
    Nodality::Nodal
}

/// Triangles and parallelograms only, meeting face to face, with every
/// boundary lattice point a vertex.
pub fn is_nodal(s: &Subdivision) -> bool {
    nodality(s) == Nodality::Nodal
}

/// `#vertices − #parallelograms − 1`.
pub fn rank(s: &Subdivision) -> i64 {
    s.vertices().len() as i64 - s.parallelogram_count() as i64 - 1
}

/// Product of triangle areas; `None` on overflow.
pub fn multiplicity(s: &Subdivision) -> Option<u128> {
    s.triangles().try_fold(1u128, |acc, t| acc.checked_mul(t.normalized_area() as u128))
}

pub fn is_odd(s: &Subdivision) -> bool {
    s.triangles().all(|t| t.normalized_area() % 2 == 1)
}

/// +1 when the triangles hold an even number of interior lattice points in total.
pub fn sign(s: &Subdivision) -> i8 {
    let interior: u64 = s.triangles().map(Cell::interior_point_count).sum();
    if interior.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Edges of the subdivision, linked through triangles and across opposite
/// sides of parallelograms.
#[derive(Clone, Debug)]
pub struct DualComponentGraph {
    pub edges: Vec<(LatticePoint, LatticePoint)>,
    parent: Vec<usize>,
}

impl DualComponentGraph {
    pub fn new(s: &Subdivision) -> Self {
        let mut index: HashMap<(LatticePoint, LatticePoint), usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut id = |e: (LatticePoint, LatticePoint), edges: &mut Vec<_>| {
            *index.entry(e).or_insert_with(|| {
                edges.push(e);
                edges.len() - 1
            })
        };
        let mut links = Vec::new();
        for c in &s.cells {
            let ids: Vec<usize> = c.edges().map(|e| id(e, &mut edges)).collect();
            match c.kind() {
                CellKind::Triangle => {
                    links.push((ids[0], ids[1]));
                    links.push((ids[1], ids[2]));
                }
                CellKind::Parallelogram => {
                    links.push((ids[0], ids[2]));
                    links.push((ids[1], ids[3]));
                }
            }
        }
        let mut g = Self { parent: (0..edges.len()).collect(), edges };
        for (a, b) in links {
            g.union(a, b);
        }
        g
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn component_count(&mut self) -> usize {
        (0..self.edges.len()).filter(|&x| self.find(x) == x).count()
    }

    /// Edge groups, each sorted, ordered by their first edge.
    pub fn components(&mut self) -> Vec<Vec<(LatticePoint, LatticePoint)>> {
        let mut groups: HashMap<usize, Vec<(LatticePoint, LatticePoint)>> = HashMap::new();
        for x in 0..self.edges.len() {
            let r = self.find(x);
            groups.entry(r).or_default().push(self.edges[x]);
        }
        let mut out: Vec<_> = groups.into_values().collect();
        for g in &mut out {
            g.sort();
        }
        out.sort();
        out
    }
}

/// The dual curve is not a union of two proper subcurves.
pub fn is_irreducible(s: &Subdivision) -> bool {
    DualComponentGraph::new(s).component_count() == 1
}

/// `rank − r(Δ)`.
pub fn genus_of(s: &Subdivision, polygon: &LatticePolygon) -> i64 {
    rank(s) - (polygon.boundary_lattice_points().len() as i64 - 1)
}

/// Every derived quantity of a nodal subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedSubdivision {
    pub cells: Vec<Cell>,
    pub rank: i64,
    pub multiplicity: u128,
    pub odd: bool,
    pub sign: i8,
    pub irreducible: bool,
    pub genus: i64,
}

impl ClassifiedSubdivision {
    /// `None` when the multiplicity overflows.
    pub fn classify(s: &Subdivision) -> Option<Self> {
        Some(Self {
            cells: s.cells.clone(),
            rank: rank(s),
            multiplicity: multiplicity(s)?,
            odd: is_odd(s),
            sign: sign(s),
            irreducible: is_irreducible(s),
            genus: genus_of(s, &s.ambient),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::{newton_polygon, SurfaceSpec};

    fn p(i: i64, j: i64) -> LatticePoint {
        LatticePoint::new(i, j)
    }

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Cell {
        Cell::triangle(p(a.0, a.1), p(b.0, b.1), p(c.0, c.1)).unwrap()
    }

    fn par(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> Cell {
        Cell::parallelogram(p(a.0, a.1), p(b.0, b.1), p(c.0, c.1), p(d.0, d.1)).unwrap()
    }

    fn sub(d: i64, cells: Vec<Cell>) -> Subdivision {
        let poly = newton_polygon(&SurfaceSpec::p2(d).unwrap()).unwrap();
        Subdivision::new(poly, cells, LatticePath::from_points(vec![]))
    }

    /// Unimodular triangulation of the size-d triangle by the standard grid.
    fn grid(d: i64) -> Vec<Cell> {
        let mut cells = Vec::new();
        for i in 0..d {
            for j in 0..d - i {
                cells.push(tri((i, j), (i + 1, j), (i, j + 1)));
                if i + j + 2 <= d {
                    cells.push(tri((i + 1, j), (i + 1, j + 1), (i, j + 1)));
                }
            }
        }
        cells
    }

    fn two_lines() -> Subdivision {
        sub(2, vec![tri((0, 0), (1, 0), (0, 1)), tri((0, 1), (1, 1), (0, 2)), par((1, 0), (2, 0), (1, 1), (0, 1))])
    }

    /// Size-3 triangle with one area-3 triangle around (1,1).
    fn fan() -> Vec<Cell> {
        vec![
            tri((0, 0), (1, 0), (0, 1)),
            tri((0, 1), (1, 0), (0, 2)),
            tri((1, 0), (2, 0), (2, 1)),
            tri((2, 0), (3, 0), (2, 1)),
            tri((0, 2), (2, 1), (1, 2)),
            tri((0, 2), (1, 2), (0, 3)),
            tri((1, 0), (2, 1), (0, 2)),
        ]
    }

    #[test]
    fn nodality_examples() {
        assert!(is_nodal(&sub(1, grid(1))));
        let big = sub(2, vec![tri((0, 0), (2, 0), (0, 2))]);
        assert_eq!(nodality(&big), Nodality::MissingBoundaryVertex);
        assert!(is_nodal(&sub(2, grid(2))));
        assert!(is_nodal(&two_lines()));
        let mut cells = grid(2);
        cells.pop();
        assert_eq!(nodality(&sub(2, cells)), Nodality::NotTiling);
    }

    #[test]
    fn detects_t_junctions() {
        // square split into two triangles on one side, one big triangle on the other
        let poly = LatticePolygon::new(vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)]).unwrap();
        let cells = vec![tri((0, 0), (2, 0), (2, 2)), tri((0, 0), (1, 1), (0, 2)), tri((1, 1), (2, 2), (0, 2))];
        let s = Subdivision::new(poly, cells, LatticePath::from_points(vec![]));
        assert_eq!(nodality(&s), Nodality::NotFaceToFace);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&sub(1, grid(1))), 2);
        assert_eq!(rank(&sub(3, grid(3))), 9);
        assert_eq!(rank(&two_lines()), 4);
    }

    #[test]
    fn multiplicity_parity_sign() {
        let unimodular = sub(3, grid(3));
        assert_eq!(multiplicity(&unimodular), Some(1));
        assert!(is_odd(&unimodular));
        assert_eq!(sign(&unimodular), 1);

        // size-3 triangle: area-3 triangle around (1,1) with one interior point
        let fan = sub(3, fan());
        assert!(is_nodal(&fan));
        assert_eq!(multiplicity(&fan), Some(3));
        assert!(is_odd(&fan));
        assert_eq!(sign(&fan), -1);

        let even = sub(2, vec![tri((0, 0), (2, 0), (0, 1)), tri((2, 0), (0, 2), (0, 1))]);
        assert_eq!(multiplicity(&even), Some(4));
        assert!(!is_odd(&even));
    }

    #[test]
    fn sign_agrees_with_pick_form() {
        for cells in [grid(3), two_lines().cells, fan()] {
            let s = sub(3, cells);
            let tris: Vec<&Cell> = s.triangles().collect();
            let area: u64 = tris.iter().map(|t| t.normalized_area()).sum();
            let bdry: u64 = tris.iter().map(|t| t.boundary_point_count()).sum();
            let exponent = (area + 2 * tris.len() as u64 - bdry) / 2;
            let expected = if exponent.is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(sign(&s), expected);
        }
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&sub(1, grid(1))));
        let mut two = DualComponentGraph::new(&two_lines());
        assert_eq!(two.component_count(), 2);
        assert!(!is_irreducible(&two_lines()));
        assert!(is_irreducible(&sub(2, grid(2))));
        // irreducibility survives a unimodular change of coordinates
        let m = [[1, 1], [0, 1]];
        let t = p(3, -2);
        let moved: Vec<Cell> = two_lines().cells.iter().map(|c| c.transform(m, t).unwrap()).collect();
        let poly = two_lines().ambient.transform(m, t).unwrap();
        let s = Subdivision::new(poly, moved, LatticePath::from_points(vec![]));
        assert!(!is_irreducible(&s));
    }

    #[test]
    fn genus_examples() {
        let t3 = newton_polygon(&SurfaceSpec::p2(3).unwrap()).unwrap();
        assert_eq!(genus_of(&sub(3, grid(3)), &t3), 1);
        let t2 = newton_polygon(&SurfaceSpec::p2(2).unwrap()).unwrap();
        assert_eq!(genus_of(&sub(2, grid(2)), &t2), 0);
        let t1 = newton_polygon(&SurfaceSpec::p2(1).unwrap()).unwrap();
        assert_eq!(genus_of(&sub(1, grid(1)), &t1), 0);
    }
}
