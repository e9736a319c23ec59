//! Toric Del Pezzo surfaces and their Newton polygons.
//!
//! Blow-up degrees are kept sorted in descending order; the blown-up points
//! play symmetric roles so the multiset is all that matters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::SurfaceError;
use crate::lattice::{orient, LatticePoint, LatticePolygon};

/// A surface together with the degrees of a divisor class on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SurfaceSpec {
    /// Plane, degree `d`.
    P2 { d: i64 },
    /// `P1 x P1`, bidegree `(d1, d2)`.
    Quadric { d1: i64, d2: i64 },
    /// Plane blown up at one point, `dL - d1 E1`.
    P1Blow { d: i64, d1: i64 },
    /// Plane blown up at two points.
    P2Blow { d: i64, d1: i64, d2: i64 },
    /// Plane blown up at three points.
    P3Blow { d: i64, d1: i64, d2: i64, d3: i64 },
}

fn invalid(msg: impl Into<String>) -> SurfaceError {
    SurfaceError::InvalidDivisor(msg.into())
}

impl SurfaceSpec {
    pub fn p2(d: i64) -> Result<Self, SurfaceError> {
        Self::P2 { d }.validated()
    }

    pub fn quadric(d1: i64, d2: i64) -> Result<Self, SurfaceError> {
        Self::Quadric { d1, d2 }.validated()
    }

    pub fn p1_blow(d: i64, d1: i64) -> Result<Self, SurfaceError> {
        Self::P1Blow { d, d1 }.validated()
    }

    pub fn p2_blow(d: i64, d1: i64, d2: i64) -> Result<Self, SurfaceError> {
        let (d1, d2) = (d1.max(d2), d1.min(d2));
        Self::P2Blow { d, d1, d2 }.validated()
    }

    pub fn p3_blow(d: i64, d1: i64, d2: i64, d3: i64) -> Result<Self, SurfaceError> {
        let mut ds = [d1, d2, d3];
        ds.sort_unstable_by(|a, b| b.cmp(a));
        let [d1, d2, d3] = ds;
        Self::P3Blow { d, d1, d2, d3 }.validated()
    }

    fn validated(self) -> Result<Self, SurfaceError> {
        match self {
            Self::P2 { d } if d < 1 => return Err(invalid(format!("plane degree must be >= 1, got {d}"))),
            Self::Quadric { d1, d2 } if d1 < 1 || d2 < 1 => {
                return Err(invalid(format!("quadric bidegree must be positive, got ({d1},{d2})")))
            }
            Self::P1Blow { d1, .. } | Self::P2Blow { d1, .. } | Self::P3Blow { d1, .. } if d1 < 0 => {
                return Err(invalid("blow-up degrees must be non-negative"))
            }
            Self::P2Blow { d2, .. } | Self::P3Blow { d2, .. } if d2 < 0 => {
                return Err(invalid("blow-up degrees must be non-negative"))
            }
            Self::P3Blow { d3, .. } if d3 < 0 => return Err(invalid("blow-up degrees must be non-negative")),
            _ => {}
        }
        newton_polygon(&self)?;
        Ok(self)
    }

    /// `c1(Σ)·D − 1` from the divisor class.
    pub fn anticanonical_degree_minus_one(&self) -> i64 {
        match *self {
            Self::P2 { d } => 3 * d - 1,
            Self::Quadric { d1, d2 } => 2 * d1 + 2 * d2 - 1,
            Self::P1Blow { d, d1 } => 3 * d - d1 - 1,
            Self::P2Blow { d, d1, d2 } => 3 * d - d1 - d2 - 1,
            Self::P3Blow { d, d1, d2, d3 } => 3 * d - d1 - d2 - d3 - 1,
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::P2 { d } => write!(f, "p2:{d}"),
            Self::Quadric { d1, d2 } => write!(f, "quadric:{d1},{d2}"),
            Self::P1Blow { d, d1 } => write!(f, "p1:{d};{d1}"),
            Self::P2Blow { d, d1, d2 } => write!(f, "p2b:{d};{d1},{d2}"),
            Self::P3Blow { d, d1, d2, d3 } => write!(f, "p3b:{d};{d1},{d2},{d3}"),
        }
    }
}

impl FromStr for SurfaceSpec {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = |reason: &str| SurfaceError::Parse { input: s.to_string(), reason: reason.to_string() };
        let (kind, rest) = s.trim().split_once(':').ok_or_else(|| parse_err("missing ':'"))?;
        let ints = |t: &str| -> Result<Vec<i64>, SurfaceError> {
            t.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| parse_err("expected integers"))).collect()
        };
        let (head, tail) = match rest.split_once(';') {
            Some((h, t)) => (ints(h)?, Some(ints(t)?)),
            None => (ints(rest)?, None),
        };
        match (kind.trim().to_ascii_lowercase().as_str(), head.as_slice(), tail.as_deref()) {
            ("p2", [d], None) => Self::p2(*d),
            ("quadric", [d1, d2], None) => Self::quadric(*d1, *d2),
            ("p1", [d], Some([d1])) => Self::p1_blow(*d, *d1),
            ("p2b", [d], Some([d1, d2])) => Self::p2_blow(*d, *d1, *d2),
            ("p3b", [d], Some([d1, d2, d3])) => Self::p3_blow(*d, *d1, *d2, *d3),
            _ => Err(parse_err("expected p2:d, quadric:d1,d2, p1:d;d1, p2b:d;d1,d2 or p3b:d;d1,d2,d3")),
        }
    }
}

impl TryFrom<String> for SurfaceSpec {
    type Error = SurfaceError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<SurfaceSpec> for String {
    fn from(s: SurfaceSpec) -> Self {
        s.to_string()
    }
}

/// Quadratic transformation bringing a three-point blow-up to `d1 + d2 + d3 <= d`.
///
/// Other surfaces, and blow-ups already in that range, are returned unchanged.
pub fn cremona_normalize(s: &SurfaceSpec) -> Result<SurfaceSpec, SurfaceError> {
    match *s {
        SurfaceSpec::P3Blow { d, d1, d2, d3 } if d1 + d2 + d3 > d => {
            let dp = 2 * d - d1 - d2 - d3;
            let e = [d - d2 - d3, d - d1 - d3, d - d1 - d2];
            if dp <= 0 || e.iter().any(|&x| x < 0) {
                return Err(invalid(format!(
                    "quadratic transform of {s} gives degree {dp} with blow-up degrees {e:?}"
                )));
            }
            SurfaceSpec::p3_blow(dp, e[0], e[1], e[2])
        }
        other => Ok(other),
    }
}

fn raw_vertices(s: &SurfaceSpec) -> Vec<LatticePoint> {
    let p = LatticePoint::new;
    match *s {
        SurfaceSpec::P2 { d } => vec![p(0, 0), p(d, 0), p(0, d)],
        SurfaceSpec::Quadric { d1, d2 } => vec![p(0, 0), p(d1, 0), p(d1, d2), p(0, d2)],
        SurfaceSpec::P1Blow { d, d1 } => vec![p(0, 0), p(d - d1, 0), p(d - d1, d1), p(0, d)],
        SurfaceSpec::P2Blow { d, d1, d2 } => {
            vec![p(0, 0), p(d - d1, 0), p(d - d1, d1), p(d2, d - d2), p(0, d - d2)]
        }
        SurfaceSpec::P3Blow { d, d1, d2, d3 } => {
            vec![p(d3, 0), p(d - d1, 0), p(d - d1, d1), p(d2, d - d2), p(0, d - d2), p(0, d3)]
        }
    }
}

/// The Newton polygon of the linear system; three-point blow-ups are
/// normalized first.
pub fn newton_polygon(s: &SurfaceSpec) -> Result<LatticePolygon, SurfaceError> {
    let s = cremona_normalize(s)?;
    let mut vs = raw_vertices(&s);
    vs.dedup();
    while vs.len() > 1 && vs.first() == vs.last() {
        vs.pop();
    }
    // the listed order must already be a weakly convex counterclockwise cycle
    let n = vs.len();
    if n >= 3 {
        for k in 0..n {
            if orient(vs[k], vs[(k + 1) % n], vs[(k + 2) % n]) < 0 {
                return Err(invalid(format!("vertex list of {s} is not convex at {}", vs[(k + 1) % n])));
            }
        }
    }
    LatticePolygon::new(vs).map_err(|e| invalid(format!("{s}: {e}")))
}

/// Number of boundary lattice points minus one.
pub fn r_of(s: &SurfaceSpec) -> Result<u64, SurfaceError> {
    Ok(newton_polygon(s)?.boundary_lattice_points().len() as u64 - 1)
}

/// Number of interior lattice points: the genus of a smooth curve in the system.
pub fn delta_of(s: &SurfaceSpec) -> Result<u64, SurfaceError> {
    Ok(newton_polygon(s)?.interior_lattice_points().len() as u64)
}
