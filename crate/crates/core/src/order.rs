//! Generic linear orders on lattice points.
//!
//! A generic functional `λ` is realized exactly as a pair of integer forms
//! compared lexicographically: the second form plays the role of an
//! infinitesimal perturbation of the first.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::OrderError;
use crate::lattice::{LatticePoint, LatticePolygon};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct LambdaOrder {
    primary: (i64, i64),
    tiebreak: (i64, i64),
}

impl LambdaOrder {
    pub fn new(primary: (i64, i64), tiebreak: (i64, i64)) -> Result<Self, OrderError> {
        if primary == (0, 0) {
            return Err(OrderError::ZeroPrimary);
        }
        Ok(Self { primary, tiebreak })
    }

    /// `i − εj` for infinitesimal `ε > 0`.
    pub const fn lambda0() -> Self {
        Self { primary: (1, 0), tiebreak: (0, -1) }
    }

    pub fn primary(&self) -> (i64, i64) {
        self.primary
    }

    pub fn tiebreak(&self) -> (i64, i64) {
        self.tiebreak
    }

    pub fn key(&self, p: LatticePoint) -> (i64, i64) {
        (self.primary.0 * p.i + self.primary.1 * p.j, self.tiebreak.0 * p.i + self.tiebreak.1 * p.j)
    }

    pub fn compare(&self, p: LatticePoint, q: LatticePoint) -> Ordering {
        self.key(p).cmp(&self.key(q))
    }

    /// The lattice points of `polygon` sorted increasingly, after checking that
    /// the order is injective there and extremal at the axis endpoints.
    pub fn sorted_points(&self, polygon: &LatticePolygon) -> Result<Vec<LatticePoint>, OrderError> {
        let mut pts = polygon.lattice_points();
        pts.sort_by_key(|&p| self.key(p));
        if let Some(w) = pts.windows(2).find(|w| self.key(w[0]) == self.key(w[1])) {
            return Err(OrderError::NotInjective(w[0], w[1]));
        }
        let (p, q) = axis_endpoints(polygon).ok_or(OrderError::WrongExtremes {
            min: pts[0],
            max: pts[pts.len() - 1],
            p: pts[0],
            q: pts[pts.len() - 1],
        })?;
        let (min, max) = (pts[0], pts[pts.len() - 1]);
        if min != p || max != q {
            return Err(OrderError::WrongExtremes { min, max, p, q });
        }
        Ok(pts)
    }

    /// Checks injectivity on the lattice points of `polygon` and that the
    /// extremes are the axis endpoints; returns them as `(p, q)`.
    pub fn validate_for_polygon(&self, polygon: &LatticePolygon) -> Result<(LatticePoint, LatticePoint), OrderError> {
        let pts = self.sorted_points(polygon)?;
        Ok((pts[0], pts[pts.len() - 1]))
    }
}

impl Default for LambdaOrder {
    fn default() -> Self {
        Self::lambda0()
    }
}

/// `p`: topmost lattice point of the polygon on the vertical axis;
/// `q`: rightmost lattice point on the horizontal axis.
pub fn axis_endpoints(polygon: &LatticePolygon) -> Option<(LatticePoint, LatticePoint)> {
    let pts = polygon.lattice_points();
    let p = pts.iter().filter(|v| v.i == 0).max_by_key(|v| v.j)?;
    let q = pts.iter().filter(|v| v.j == 0).max_by_key(|v| v.i)?;
    Some((*p, *q))
}

impl fmt::Display for LambdaOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.primary.0, self.primary.1, self.tiebreak.0, self.tiebreak.1)
    }
}

impl FromStr for LambdaOrder {
    type Err = OrderError;

    /// `a,b` or `a,b;c,d`. Without a tiebreak, `(0,-1)` is used unless the
    /// primary form is vertical, in which case `(1,0)` is.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| OrderError::Parse { input: s.to_string(), reason: reason.to_string() };
        let pair = |t: &str| -> Result<(i64, i64), OrderError> {
            let (a, b) = t.split_once(',').ok_or_else(|| err("expected two comma-separated integers"))?;
            let a = a.trim().parse().map_err(|_| err("expected integers"))?;
            let b = b.trim().parse().map_err(|_| err("expected integers"))?;
            Ok((a, b))
        };
        let (primary, tiebreak) = match s.trim().split_once(';') {
            Some((a, b)) => (pair(a)?, pair(b)?),
            None => {
                let primary = pair(s)?;
                let tiebreak = if primary.0 == 0 { (1, 0) } else { (0, -1) };
                (primary, tiebreak)
            }
        };
        Self::new(primary, tiebreak)
    }
}

impl TryFrom<String> for LambdaOrder {
    type Error = OrderError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<LambdaOrder> for String {
    fn from(o: LambdaOrder) -> Self {
        o.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::{newton_polygon, SurfaceSpec};

    fn p(i: i64, j: i64) -> LatticePoint {
        LatticePoint::new(i, j)
    }

    fn triangle(d: i64) -> LatticePolygon {
        newton_polygon(&SurfaceSpec::p2(d).unwrap()).unwrap()
    }

    #[test]
    fn lambda0_comparisons() {
        let o = LambdaOrder::lambda0();
        assert_eq!(o.compare(p(0, 3), p(0, 2)), Ordering::Less);
        assert_eq!(o.compare(p(1, 2), p(1, 0)), Ordering::Less);
        assert_eq!(o.compare(p(0, 5), p(1, 5)), Ordering::Less);
        assert_eq!(o.compare(p(2, 2), p(2, 2)), Ordering::Equal);
    }

    #[test]
    fn validation() {
        let o = LambdaOrder::lambda0();
        assert_eq!(o.validate_for_polygon(&triangle(3)).unwrap(), (p(0, 3), p(3, 0)));

        let tie = LambdaOrder::new((1, 1), (0, 0)).unwrap();
        assert!(matches!(tie.validate_for_polygon(&triangle(1)), Err(OrderError::NotInjective(_, _))));

        let reversed = LambdaOrder::new((-1, 0), (0, 1)).unwrap();
        match reversed.validate_for_polygon(&triangle(2)) {
            Err(OrderError::WrongExtremes { min, .. }) => assert_eq!(min, p(2, 0)),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(LambdaOrder::new((0, 0), (1, 0)), Err(OrderError::ZeroPrimary));
    }

    #[test]
    fn parse_round_trip() {
        let o: LambdaOrder = "1,0;0,-1".parse().unwrap();
        assert_eq!(o, LambdaOrder::lambda0());
        assert_eq!(o.to_string(), "1,0;0,-1");
        assert_eq!("1,0".parse::<LambdaOrder>().unwrap(), LambdaOrder::lambda0());
        assert_eq!("0,-1".parse::<LambdaOrder>().unwrap().tiebreak(), (1, 0));
        assert!("1;2".parse::<LambdaOrder>().is_err());
    }

    #[test]
    fn lambda0_valid_on_all_families() {
        for d in 1..=8 {
            let mut specs = vec![SurfaceSpec::p2(d)];
            for e in 1..=8 {
                specs.push(SurfaceSpec::quadric(d, e));
            }
            for d1 in 0..d {
                specs.push(SurfaceSpec::p1_blow(d, d1));
                for d2 in 0..=d1 {
                    specs.push(SurfaceSpec::p2_blow(d, d1, d2));
                    for d3 in 0..=d2 {
                        specs.push(SurfaceSpec::p3_blow(d, d1, d2, d3));
                    }
                }
            }
            for s in specs.into_iter().filter_map(Result::ok) {
                let poly = newton_polygon(&s).unwrap();
                let pts = LambdaOrder::lambda0().sorted_points(&poly).unwrap();
                assert!(pts.windows(2).all(|w| LambdaOrder::lambda0().compare(w[0], w[1]) == Ordering::Less));
            }
        }
    }
}
