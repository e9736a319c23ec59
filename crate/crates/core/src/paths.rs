//! λ-admissible lattice paths.

use itertools::{Combinations, Itertools};
use serde::{Deserialize, Serialize};

use crate::error::{CountError, OrderError};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::order::LambdaOrder;

/// A λ-increasing sequence of lattice points from `p` to `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePath {
    points: Vec<LatticePoint>,
}

impl LatticePath {
    /// Wraps a point sequence without checking it; see [`LatticePath::validate`].
    pub fn from_points(points: Vec<LatticePoint>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<LatticePoint> {
        self.points
    }

    /// Number of segments.
    pub fn length(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    pub fn start(&self) -> LatticePoint {
        self.points[0]
    }

    pub fn end(&self) -> LatticePoint {
        self.points[self.points.len() - 1]
    }

    /// Checks the admissibility conditions against `polygon` and `order`.
    pub fn validate(&self, polygon: &LatticePolygon, order: &LambdaOrder) -> Result<(), CountError> {
        let bad = |m: String| CountError::InvalidPath(m);
        let (p, q) = order.validate_for_polygon(polygon)?;
        if self.points.len() < 2 {
            return Err(bad("a path needs at least two points".into()));
        }
        if self.start() != p || self.end() != q {
            return Err(bad(format!("path must run from {p} to {q}")));
        }
        if let Some(v) = self.points.iter().find(|v| !polygon.contains(**v)) {
            return Err(bad(format!("{v} lies outside the polygon")));
        }
        if let Some(w) = self.points.windows(2).find(|w| order.compare(w[0], w[1]).is_ge()) {
            return Err(bad(format!("order does not increase from {} to {}", w[0], w[1])));
        }
        Ok(())
    }
}

/// All admissible paths of length `n`, in lexicographic order of the chosen
/// intermediate points (indexed by their position in the order).
pub struct PathEnumerator {
    p: LatticePoint,
    q: LatticePoint,
    inner: Option<Combinations<std::vec::IntoIter<LatticePoint>>>,
}

impl Iterator for PathEnumerator {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        let mid = self.inner.as_mut()?.next()?;
        let mut points = Vec::with_capacity(mid.len() + 2);
        points.push(self.p);
        points.extend(mid);
        points.push(self.q);
        Some(LatticePath { points })
    }
}

/// Every strictly λ-increasing sequence of `n + 1` lattice points of the
/// polygon from `p` to `q`.
///
/// Convexity makes every such sequence admissible, so this is a plain
/// choice of `n − 1` intermediate points.
pub fn enumerate_paths(polygon: &LatticePolygon, order: &LambdaOrder, n: usize) -> Result<PathEnumerator, OrderError> {
    let pts = order.sorted_points(polygon)?;
    let (p, q) = (pts[0], pts[pts.len() - 1]);
    let middle: Vec<LatticePoint> = pts[1..pts.len() - 1].to_vec();
    let inner = if n == 0 || n - 1 > middle.len() { None } else { Some(middle.into_iter().combinations(n - 1)) };
    Ok(PathEnumerator { p, q, inner })
}

/// `C(m − 2, n − 1)` for a polygon with `m` lattice points.
pub fn path_count(lattice_points: usize, n: usize) -> u128 {
    if n == 0 || lattice_points < 2 {
        return 0;
    }
    binomial((lattice_points - 2) as u128, (n - 1) as u128)
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, t| acc * (n - t) / (t + 1))
}
