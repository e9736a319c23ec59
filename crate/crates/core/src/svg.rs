//! Plain SVG 1.1 renderings of subdivisions and tropical curves.
//!
//! Output is a pure function of the input: coordinates are printed with a
//! fixed precision and elements are emitted in input order.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::classify::ClassifiedSubdivision;
use crate::lattice::{CellKind, LatticePoint, LatticePolygon};
use crate::paths::LatticePath;
use crate::tropical_dual::{QPoint, RegularSubdivision, TropicalCurveGraph};

const UNIT: f64 = 40.0;
const MARGIN: f64 = 30.0;
const TRIANGLE_FILL: &str = "#9ecae1";
const PARALLELOGRAM_FILL: &str = "#fdd49e";
const PATH_STROKE: &str = "#d7301f";

struct Frame {
    min_x: f64,
    max_y: f64,
    offset_x: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        self.offset_x + MARGIN + (x - self.min_x) * UNIT
    }

    fn y(&self, y: f64) -> f64 {
        MARGIN + (self.max_y - y) * UNIT
    }

    fn lp(&self, p: LatticePoint) -> (f64, f64) {
        (self.x(p.i as f64), self.y(p.j as f64))
    }
}

fn points_attr(frame: &Frame, pts: &[LatticePoint]) -> String {
    let mut s = String::new();
    for (k, &p) in pts.iter().enumerate() {
        let (x, y) = frame.lp(p);
        if k > 0 {
            s.push(' ');
        }
        write!(s, "{x:.2},{y:.2}").unwrap();
    }
    s
}

fn header(out: &mut String, width: f64, height: f64) {
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
}

fn lattice_dots(out: &mut String, frame: &Frame, polygon: &LatticePolygon) {
    for p in polygon.lattice_points() {
        let (x, y) = frame.lp(p);
        writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2" fill="dimgray"/>"#).unwrap();
    }
}

/// One subdivision of `polygon`, with its path drawn on top when given.
pub fn subdivision_svg(polygon: &LatticePolygon, path: Option<&LatticePath>, sub: &ClassifiedSubdivision) -> String {
    let (lo, hi) = polygon.bounding_box();
    let frame = Frame { min_x: lo.i as f64, max_y: hi.j as f64, offset_x: 0.0 };
    let width = (hi.i - lo.i) as f64 * UNIT + 2.0 * MARGIN;
    let height = (hi.j - lo.j) as f64 * UNIT + 2.0 * MARGIN + 20.0;
    let mut out = String::new();
    header(&mut out, width, height);

    for cell in &sub.cells {
        let fill = match cell.kind() {
            CellKind::Triangle => TRIANGLE_FILL,
            CellKind::Parallelogram => PARALLELOGRAM_FILL,
        };
        writeln!(
            out,
            r#"<polygon points="{}" fill="{fill}" stroke="dimgray" stroke-width="1"/>"#,
            points_attr(&frame, cell.vertices())
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        points_attr(&frame, polygon.vertices())
    )
    .unwrap();
    if let Some(path) = path {
        writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{PATH_STROKE}" stroke-width="3"/>"#,
            points_attr(&frame, path.points())
        )
        .unwrap();
    }
    lattice_dots(&mut out, &frame, polygon);

    let sign = if sub.sign > 0 { "+" } else { "-" };
    writeln!(
        out,
        r#"<text x="{MARGIN:.0}" y="{:.2}" font-family="monospace" font-size="12">mult {} sign {sign}{}{}</text>"#,
        height - 8.0,
        sub.multiplicity,
        if sub.odd { " odd" } else { "" },
        if sub.irreducible { "" } else { " reducible" },
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

fn qf(p: &QPoint) -> (f64, f64) {
    (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0))
}

/// The corner locus on the left, its dual subdivision on the right.
pub fn tropical_svg(curve: &TropicalCurveGraph, subdiv: &RegularSubdivision) -> String {
    // curve panel: box around the vertices, padded so rays are visible
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for v in &curve.vertices {
        let (x, y) = qf(&v.position);
        xs.push(x);
        ys.push(y);
    }
    for l in &curve.lines {
        let (x, y) = qf(&l.point);
        xs.push(x);
        ys.push(y);
    }
    let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
    let pad = 1.5;
    let (cx0, cx1) = (fold(&xs, f64::min, 0.0) - pad, fold(&xs, f64::max, 0.0) + pad);
    let (cy0, cy1) = (fold(&ys, f64::min, 0.0) - pad, fold(&ys, f64::max, 0.0) + pad);
    let curve_w = (cx1 - cx0) * UNIT;

    let hull_pts: Vec<LatticePoint> =
        subdiv.cells.iter().flat_map(|c| c.corners.clone()).chain(subdiv.hull.clone()).collect();
    let (sx0, sx1) = (
        hull_pts.iter().map(|p| p.i).min().unwrap_or(0) as f64,
        hull_pts.iter().map(|p| p.i).max().unwrap_or(0) as f64,
    );
    let (sy0, sy1) = (
        hull_pts.iter().map(|p| p.j).min().unwrap_or(0) as f64,
        hull_pts.iter().map(|p| p.j).max().unwrap_or(0) as f64,
    );

    let width = curve_w + (sx1 - sx0) * UNIT + 4.0 * MARGIN;
    let height = ((cy1 - cy0).max(sy1 - sy0)) * UNIT + 2.0 * MARGIN;
    let mut out = String::new();
    header(&mut out, width, height);

    let left = Frame { min_x: cx0, max_y: cy1, offset_x: 0.0 };
    writeln!(out, r#"<g id="curve">"#).unwrap();
    let seg = |out: &mut String, a: (f64, f64), b: (f64, f64), w: u64| {
        writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="{}"/>"#,
            left.x(a.0),
            left.y(a.1),
            left.x(b.0),
            left.y(b.1),
            1 + w
        )
        .unwrap();
    };
    // parameter at which a ray from `a` in direction `d` leaves the panel
    let exit = |a: (f64, f64), d: LatticePoint| {
        let mut t = f64::INFINITY;
        if d.i != 0 {
            let bound = if d.i > 0 { cx1 } else { cx0 };
            t = t.min((bound - a.0) / d.i as f64);
        }
        if d.j != 0 {
            let bound = if d.j > 0 { cy1 } else { cy0 };
            t = t.min((bound - a.1) / d.j as f64);
        }
        (a.0 + t * d.i as f64, a.1 + t * d.j as f64)
    };
    for e in &curve.edges {
        seg(&mut out, qf(&curve.vertices[e.from].position), qf(&curve.vertices[e.to].position), e.weight);
    }
    for r in &curve.rays {
        let a = qf(&curve.vertices[r.from].position);
        seg(&mut out, a, exit(a, r.direction), r.weight);
    }
    for l in &curve.lines {
        let a = qf(&l.point);
        seg(&mut out, exit(a, -l.direction), exit(a, l.direction), l.weight);
    }
    for v in &curve.vertices {
        let (x, y) = qf(&v.position);
        writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="black"/>"#, left.x(x), left.y(y)).unwrap();
    }
    writeln!(out, "</g>").unwrap();

    let right = Frame { min_x: sx0, max_y: sy1, offset_x: curve_w + 2.0 * MARGIN };
    writeln!(out, r#"<g id="subdivision">"#).unwrap();
    for c in &subdiv.cells {
        let tag = if c.corners.len() == 2 { "polyline" } else { "polygon" };
        writeln!(
            out,
            r#"<{tag} points="{}" fill="{TRIANGLE_FILL}" stroke="dimgray" stroke-width="1"/>"#,
            points_attr(&right, &c.corners)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    out.push_str("</svg>\n");
    out
}
