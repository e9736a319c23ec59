//! Lower bounds for Welschinger invariants and the canonical `λ⁰` paths that
//! realize them.

use serde::{Deserialize, Serialize};

use crate::engine::{for_each_contribution, process_path, CountRequest, PathContext};
use crate::error::{BoundError, CountError};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::order::LambdaOrder;
use crate::paths::LatticePath;
use crate::surfaces::{cremona_normalize, newton_polygon, SurfaceSpec};

fn violated(msg: impl Into<String>) -> BoundError {
    BoundError::HypothesesViolated(msg.into())
}

fn factorial(n: i64) -> u128 {
    (1..=n as u128).product()
}

/// `a! / b!` for `a >= b >= 0`.
fn falling(a: i64, b: i64) -> u128 {
    ((b + 1) as u128..=a as u128).product()
}

/// The guaranteed number of real rational curves through generic real points.
///
/// Halved factorials are rounded up: a count is an integer, so `W >= x/2`
/// and `W >= ceil(x/2)` are the same statement.
pub fn rho(spec: &SurfaceSpec) -> Result<u128, BoundError> {
    match *spec {
        SurfaceSpec::P2 { d } if d >= 1 => Ok(factorial(d).div_ceil(2)),
        SurfaceSpec::Quadric { d1, d2 } if d1 >= 1 && d2 >= 1 => Ok(d1.max(d2) as u128),
        SurfaceSpec::P1Blow { d, d1 } if d > d1 && d1 > 0 => Ok(falling(d, d1).div_ceil(2)),
        SurfaceSpec::P2Blow { d, d1, d2 } if d1 + d2 < d && d1 >= d2 && d2 > 0 => Ok(falling(d - d2, d1)),
        SurfaceSpec::P3Blow { d, d1, d2, d3 } if d1 >= d2 && d2 >= d3 && d3 > 0 => {
            if d1 + d2 + d3 <= d {
                Ok(falling(d - d2 - d3, d1))
            } else if d - d2 - d3 >= 0 {
                Ok(falling(d1, d - d2 - d3))
            } else {
                Err(violated(format!("{spec}: d - d2 - d3 is negative")))
            }
        }
        _ => Err(violated(format!("{spec} is outside the range of the bound"))),
    }
}

/// The `λ⁰`-admissible path of length `r(Δ)` along which the bound is realized:
/// down the vertical axis, a two-row staircase along the bottom, then up the
/// right-hand column.
///
/// The plane and the blow-ups share one list (blow-ups of degree 0 collapse
/// the corresponding pieces); for the quadric the right-hand column is the
/// whole right edge. Three-point blow-ups are normalized first.
pub fn canonical_path(spec: &SurfaceSpec) -> Result<LatticePath, BoundError> {
    let p = LatticePoint::new;
    let normalized = cremona_normalize(spec).map_err(|e| violated(e.to_string()))?;
    let mut pts = Vec::new();
    match normalized {
        SurfaceSpec::Quadric { d1, d2 } => {
            pts.extend((0..=d2).map(|j| p(0, d2 - j)));
            for i in 1..d1 {
                pts.push(p(i, 1));
                pts.push(p(i, 0));
            }
            pts.extend((0..=d2).map(|j| p(d1, d2 - j)));
        }
        other => {
            let (d, d1, d2, d3) = match other {
                SurfaceSpec::P2 { d } => (d, 0, 0, 0),
                SurfaceSpec::P1Blow { d, d1 } => (d, d1, 0, 0),
                SurfaceSpec::P2Blow { d, d1, d2 } => (d, d1, d2, 0),
                SurfaceSpec::P3Blow { d, d1, d2, d3 } => (d, d1, d2, d3),
                SurfaceSpec::Quadric { .. } => unreachable!(),
            };
            pts.extend((0..=d - d2 - d3).map(|j| p(0, d - d2 - j)));
            for i in 1..=d3 {
                pts.push(p(i, d3 - i + 1));
                pts.push(p(i, d3 - i));
            }
            for i in d3 + 1..d - d1 {
                pts.push(p(i, 1));
                pts.push(p(i, 0));
            }
            pts.extend((0..=d1).map(|j| p(d - d1, d1 - j)));
        }
    }
    let path = LatticePath::from_points(pts);
    let polygon = newton_polygon(spec).map_err(CountError::from)?;
    path.validate(&polygon, &LambdaOrder::lambda0())?;
    let r = polygon.boundary_lattice_points().len() - 1;
    if path.length() != r {
        return Err(violated(format!("canonical path of {spec} has length {} instead of {r}", path.length())));
    }
    Ok(path)
}

/// Odd irreducible nodal subdivisions produced by the canonical path alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalContribution {
    pub positives: u64,
    pub negatives: u64,
    /// Every nodal subdivision of the path, with multiplicity.
    pub complex: u128,
}

pub fn canonical_contribution(spec: &SurfaceSpec) -> Result<CanonicalContribution, BoundError> {
    let path = canonical_path(spec)?;
    let polygon = newton_polygon(spec).map_err(CountError::from)?;
    let ctx = PathContext { length: path.length(), polygon };
    let outcome = process_path(&ctx, &path)?;
    let mut out = CanonicalContribution { positives: 0, negatives: 0, complex: 0 };
    for s in &outcome.subdivisions {
        out.complex += s.multiplicity;
        if s.odd && s.irreducible {
            if s.sign > 0 {
                out.positives += 1;
            } else {
                out.negatives += 1;
            }
        }
    }
    Ok(out)
}

/// Results of scanning every `λ⁰`-path of length `r(Δ)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityAudit {
    pub subdivisions: u64,
    /// Odd irreducible subdivisions with sign −1.
    pub negative_subdivisions: u64,
    /// Triangles (over all nodal subdivisions) with an interior lattice point.
    pub triangles_with_interior_points: u64,
    /// Edges whose endpoints differ by more than 1 horizontally.
    pub wide_edges: u64,
}

impl PositivityAudit {
    pub fn passed(&self) -> bool {
        self.negative_subdivisions == 0 && self.triangles_with_interior_points == 0 && self.wide_edges == 0
    }
}

/// Under `λ⁰` no subdivision is negative, and in fact no triangle has an
/// interior point because no edge is wider than one column.
pub fn lambda0_positivity_audit(spec: &SurfaceSpec) -> Result<PositivityAudit, BoundError> {
    let req = CountRequest::new(*spec, 0).with_order(LambdaOrder::lambda0());
    let mut audit = PositivityAudit::default();
    for_each_contribution(&req, |rec| {
        let s = &rec.subdivision;
        audit.subdivisions += 1;
        if s.odd && s.irreducible && s.sign < 0 {
            audit.negative_subdivisions += 1;
        }
        for c in &s.cells {
            if c.kind() == crate::lattice::CellKind::Triangle && c.interior_point_count() > 0 {
                audit.triangles_with_interior_points += 1;
            }
            audit.wide_edges += c.edges().filter(|(a, b)| (a.i - b.i).abs() > 1).count() as u64;
        }
    })?;
    Ok(audit)
}

/// `λ⁰` polygon of the spec, exposed for callers that draw canonical paths.
pub fn canonical_polygon(spec: &SurfaceSpec) -> Result<LatticePolygon, BoundError> {
    newton_polygon(spec).map_err(|e| BoundError::Count(e.into()))
}
