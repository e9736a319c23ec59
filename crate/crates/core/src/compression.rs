//! Compression of the two regions cut out of the Newton polygon by a path.
//!
//! Starting from a path `γ`, a region is repeatedly compressed at its first
//! convex corner `γ(j)`: either the corner is cut off by the triangle
//! `(γ(j−1), γ(j), γ(j+1))`, or it is pushed across to the reflected point
//! `γ(j−1) + γ(j+1) − γ(j)`, sweeping a parallelogram. A branch succeeds when
//! the path has been pushed onto the corresponding boundary arc.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::lattice::{interior_angle_lt_pi, segment_points, Cell, LatticePoint, LatticePolygon, Side};
use crate::paths::LatticePath;

/// Which of the two regions bounded by a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionSide {
    /// Between the path and the upper boundary arc; left of the path walked from `p` to `q`.
    Plus,
    /// Between the path and the lower boundary arc.
    Minus,
}

impl RegionSide {
    pub fn orientation(self) -> Side {
        match self {
            RegionSide::Plus => Side::Left,
            RegionSide::Minus => Side::Right,
        }
    }
}

/// The boundary arcs from `p` to `q` as full lattice point lists: `(upper, lower)`.
pub fn boundary_arcs(
    polygon: &LatticePolygon,
    p: LatticePoint,
    q: LatticePoint,
) -> (Vec<LatticePoint>, Vec<LatticePoint>) {
    let ring = polygon.boundary_lattice_points();
    let n = ring.len();
    let ip = ring.iter().position(|&v| v == p).expect("p on boundary");
    let iq = ring.iter().position(|&v| v == q).expect("q on boundary");
    // counterclockwise from p reaches q through the lower arc
    let mut lower = Vec::new();
    let mut k = ip;
    loop {
        lower.push(ring[k]);
        if k == iq {
            break;
        }
        k = (k + 1) % n;
    }
    let mut upper = Vec::new();
    let mut k = ip;
    loop {
        upper.push(ring[k]);
        if k == iq {
            break;
        }
        k = (k + n - 1) % n;
    }
    (upper, lower)
}

/// A region between the current path and a boundary arc with the same endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub side: RegionSide,
    pub path: Vec<LatticePoint>,
    /// Every lattice point of the target arc, from `p` to `q`.
    pub target: Vec<LatticePoint>,
}

impl Region {
    pub fn new(polygon: &LatticePolygon, path: &LatticePath, side: RegionSide) -> Self {
        let (upper, lower) = boundary_arcs(polygon, path.start(), path.end());
        let target = match side {
            RegionSide::Plus => upper,
            RegionSide::Minus => lower,
        };
        Self { side, path: path.points().to_vec(), target }
    }

    /// True when the image of the path is the target arc.
    pub fn is_terminal(&self) -> bool {
        expand(&self.path) == self.target
    }

    /// Normalized area enclosed between the path and the target arc.
    pub fn normalized_area(&self) -> u64 {
        let mut ring: Vec<LatticePoint> = self.path.clone();
        ring.extend(self.target.iter().rev().skip(1).take(self.target.len().saturating_sub(2)));
        let n = ring.len();
        let twice: i64 = (0..n).map(|k| ring[k].cross(ring[(k + 1) % n])).sum();
        twice.unsigned_abs()
    }
}

fn expand(path: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut out = vec![path[0]];
    for w in path.windows(2) {
        out.extend(segment_points(w[0], w[1]).into_iter().skip(1));
    }
    out
}

/// A region together with the cells swept so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionState {
    pub region: Region,
    pub cells: Vec<Cell>,
}

impl CompressionState {
    pub fn new(region: Region) -> Self {
        Self { region, cells: Vec::new() }
    }
}

/// Smallest interior index whose corner is convex toward the region.
pub fn find_pivot(st: &CompressionState) -> Option<usize> {
    let path = &st.region.path;
    let side = st.region.side.orientation();
    (1..path.len().saturating_sub(1)).find(|&j| interior_angle_lt_pi(path[j - 1], path[j], path[j + 1], side))
}

/// Cuts the corner at `j` off with a triangle.
pub fn step_triangle(st: &CompressionState, j: usize) -> CompressionState {
    let path = &st.region.path;
    let cell = Cell::triangle(path[j - 1], path[j], path[j + 1]).expect("convex pivot spans a triangle");
    let mut next = st.clone();
    next.region.path.remove(j);
    next.cells.push(cell);
    next
}

/// Pushes the corner at `j` to the reflected point; `None` when that point
/// leaves the polygon.
pub fn step_parallelogram(st: &CompressionState, j: usize, polygon: &LatticePolygon) -> Option<CompressionState> {
    let path = &st.region.path;
    let (a, b, c) = (path[j - 1], path[j], path[j + 1]);
    let w = a + c - b;
    if !polygon.contains(w) {
        return None;
    }
    let cell = Cell::parallelogram(a, b, c, w).expect("convex pivot spans a parallelogram");
    let mut next = st.clone();
    next.region.path[j] = w;
    next.cells.push(cell);
    Some(next)
}

/// All compressing subdivisions of one region.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompressionOutcome {
    /// Distinct terminal cell lists, each sorted, in ascending order.
    pub subdivisions: Vec<Vec<Cell>>,
    /// Branches that ran out of convex corners before reaching the arc.
    pub dead_ends: u64,
    /// Terminal branches whose cell set had already been produced.
    pub collisions: u64,
}

/// Depth-first exploration of both moves at every pivot.
pub fn compressing_subdivisions(region: &Region, polygon: &LatticePolygon) -> CompressionOutcome {
    let mut found: BTreeSet<Vec<Cell>> = BTreeSet::new();
    let mut out = CompressionOutcome::default();
    let mut stack = vec![CompressionState::new(region.clone())];
    while let Some(st) = stack.pop() {
        match find_pivot(&st) {
            None => {
                if st.region.is_terminal() {
                    let mut cells = st.cells;
                    cells.sort_unstable();
                    if !found.insert(cells) {
                        out.collisions += 1;
                    }
                } else {
                    out.dead_ends += 1;
                }
            }
            Some(j) => {
                if let Some(par) = step_parallelogram(&st, j, polygon) {
                    stack.push(par);
                }
                stack.push(step_triangle(&st, j));
            }
        }
    }
    out.subdivisions = found.into_iter().collect();
    out
}

/// Union of the cells of the two sides, sorted.
pub fn assemble(plus: &[Cell], minus: &[Cell]) -> Vec<Cell> {
    let mut cells: Vec<Cell> = plus.iter().chain(minus).copied().collect();
    cells.sort_unstable();
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::orient;
    use crate::order::LambdaOrder;
    use crate::paths::enumerate_paths;
    use crate::surfaces::{newton_polygon, SurfaceSpec};

    fn p(i: i64, j: i64) -> LatticePoint {
        LatticePoint::new(i, j)
    }

    fn triangle(d: i64) -> LatticePolygon {
        newton_polygon(&SurfaceSpec::p2(d).unwrap()).unwrap()
    }

    fn path(pts: &[(i64, i64)]) -> LatticePath {
        LatticePath::from_points(pts.iter().map(|&(i, j)| p(i, j)).collect())
    }

    #[test]
    fn arcs_of_triangle() {
        let (upper, lower) = boundary_arcs(&triangle(2), p(0, 2), p(2, 0));
        assert_eq!(upper, vec![p(0, 2), p(1, 1), p(2, 0)]);
        assert_eq!(lower, vec![p(0, 2), p(0, 1), p(0, 0), p(1, 0), p(2, 0)]);
    }

    #[test]
    fn pivots() {
        let t1 = triangle(1);
        let g = path(&[(0, 1), (0, 0), (1, 0)]);
        let st = CompressionState::new(Region::new(&t1, &g, RegionSide::Plus));
        assert_eq!(find_pivot(&st), Some(1));
        let minus = CompressionState::new(Region::new(&t1, &g, RegionSide::Minus));
        assert_eq!(find_pivot(&minus), None);
        assert!(minus.region.is_terminal());

        let t2 = triangle(2);
        let g2 = path(&[(0, 2), (0, 1), (0, 0), (1, 1), (1, 0), (2, 0)]);
        let st2 = CompressionState::new(Region::new(&t2, &g2, RegionSide::Plus));
        assert_eq!(find_pivot(&st2), Some(2));
        let next = step_triangle(&st2, 2);
        assert_eq!(next.cells, vec![Cell::triangle(p(0, 1), p(0, 0), p(1, 1)).unwrap()]);
        assert_eq!(next.region.path.len(), 5);
    }

    #[test]
    fn moves_on_unit_triangle() {
        let t1 = triangle(1);
        let g = path(&[(0, 1), (0, 0), (1, 0)]);
        let st = CompressionState::new(Region::new(&t1, &g, RegionSide::Plus));
        let next = step_triangle(&st, 1);
        assert_eq!(next.region.path, vec![p(0, 1), p(1, 0)]);
        assert_eq!(next.cells[0].normalized_area(), 1);
        assert!(step_parallelogram(&st, 1, &t1).is_none());

        let square = LatticePolygon::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        let sq = CompressionState::new(Region::new(&square, &g, RegionSide::Plus));
        let par = step_parallelogram(&sq, 1, &square).unwrap();
        assert_eq!(par.region.path, vec![p(0, 1), p(1, 1), p(1, 0)]);
        assert_eq!(par.cells[0].normalized_area(), 2);
        assert!(par.region.is_terminal());
    }

    #[test]
    fn unit_triangle_subdivisions() {
        let t1 = triangle(1);
        let g = path(&[(0, 1), (0, 0), (1, 0)]);
        let plus = compressing_subdivisions(&Region::new(&t1, &g, RegionSide::Plus), &t1);
        assert_eq!(plus.subdivisions, vec![vec![Cell::triangle(p(0, 0), p(1, 0), p(0, 1)).unwrap()]]);
        let minus = compressing_subdivisions(&Region::new(&t1, &g, RegionSide::Minus), &t1);
        assert_eq!(minus.subdivisions, vec![Vec::<Cell>::new()]);
        assert_eq!(assemble(&plus.subdivisions[0], &minus.subdivisions[0]).len(), 1);
    }

    #[test]
    fn short_path_is_a_dead_end() {
        let t1 = triangle(1);
        let g = path(&[(0, 1), (1, 0)]);
        let minus = compressing_subdivisions(&Region::new(&t1, &g, RegionSide::Minus), &t1);
        assert!(minus.subdivisions.is_empty());
        assert_eq!(minus.dead_ends, 1);
    }

    #[test]
    fn area_is_conserved_and_cells_stay_on_their_side() {
        let o = LambdaOrder::lambda0();
        for spec in ["p2:3", "quadric:2,2", "p3b:4;1,1,1"] {
            let poly = newton_polygon(&spec.parse().unwrap()).unwrap();
            let total = poly.normalized_area();
            let r = poly.boundary_lattice_points().len() - 1;
            for g in enumerate_paths(&poly, &o, r).unwrap() {
                let mut sides = Vec::new();
                for side in [RegionSide::Plus, RegionSide::Minus] {
                    let region = Region::new(&poly, &g, side);
                    let out = compressing_subdivisions(&region, &poly);
                    for cells in &out.subdivisions {
                        let a: u64 = cells.iter().map(Cell::normalized_area).sum();
                        assert_eq!(a, region.normalized_area());
                        for c in cells {
                            assert!(c.vertices().iter().all(|&v| poly.contains(v)));
                            // every cell lies weakly on its side of each original segment spanning its λ-range
                            let centroid3 = c.vertices().iter().fold(p(0, 0), |acc, &v| acc + v);
                            let k = c.vertices().len() as i64;
                            for w in g.points().windows(2) {
                                let (x0, x1) = (w[0], w[1]);
                                let lo = x0.i.min(x1.i) * k;
                                let hi = x0.i.max(x1.i) * k;
                                if centroid3.i > lo && centroid3.i < hi {
                                    let o3 = orient(
                                        LatticePoint::new(x0.i * k, x0.j * k),
                                        LatticePoint::new(x1.i * k, x1.j * k),
                                        centroid3,
                                    );
                                    match side {
                                        RegionSide::Plus => assert!(o3 >= 0),
                                        RegionSide::Minus => assert!(o3 <= 0),
                                    }
                                }
                            }
                        }
                    }
                    sides.push(out.subdivisions);
                }
                for sp in &sides[0] {
                    for sm in &sides[1] {
                        let a: u64 = assemble(sp, sm).iter().map(Cell::normalized_area).sum();
                        assert_eq!(a, total);
                    }
                }
            }
        }
    }
}
