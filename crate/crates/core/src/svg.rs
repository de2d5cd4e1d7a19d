//! Deterministic SVG rendering of polygons.
//!
//! Geometry stays exact until the final coordinate transform, where points are
//! converted to floating point for drawing only.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::polygon::{omega, HalfPlane, Point, Polygon};
use crate::quiver::Quiver;
use crate::Q;

/// Optional layers drawn on top of the polygon outline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SvgOptions {
    /// Points dividing each edge `m_k` into `r_k` equal segments.
    pub lattice_points: bool,
    /// Marker at the origin of the plane.
    pub origin: bool,
    /// Shaded intersection of the forbidden half-planes.
    pub forbidden_region: bool,
    /// Arrows between edge midpoints weighted by the quiver.
    pub quiver: bool,
}

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

fn to_f64(q: Q) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn new(points: &[Point]) -> Frame {
        let xs: Vec<f64> = points.iter().map(|p| to_f64(p.x)).collect();
        let ys: Vec<f64> = points.iter().map(|p| to_f64(p.y)).collect();
        let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
        let (min_x, max_x) = (fold(&xs, f64::min, 0.0), fold(&xs, f64::max, 0.0));
        let (min_y, max_y) = (fold(&ys, f64::min, 0.0), fold(&ys, f64::max, 0.0));
        let span = (max_x - min_x).max(max_y - min_y).max(1.0);
        Frame { min_x, max_y, scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (MARGIN + (to_f64(p.x) - self.min_x) * self.scale, MARGIN + (self.max_y - to_f64(p.y)) * self.scale)
    }
}

/// Clip a counter-clockwise convex polygon to the half-plane `omega(d, x) <= b`.
fn clip(poly: &[Point], hp: &HalfPlane) -> Vec<Point> {
    let val = |p: Point| omega(hp.direction, p) - hp.bound;
    let mut out = Vec::new();
    for k in 0..poly.len() {
        let (a, b) = (poly[k], poly[(k + 1) % poly.len()]);
        let (va, vb) = (val(a), val(b));
        if va <= Q::from_integer(0) {
            out.push(a);
        }
        if (va < Q::from_integer(0) && vb > Q::from_integer(0)) || (va > Q::from_integer(0) && vb < Q::from_integer(0)) {
            let t = va / (va - vb);
            out.push(a + (b - a).scale(t));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Intersection of the forbidden half-planes with the polygon, as exact points.
pub fn forbidden_polygon(p: &Polygon) -> Vec<Point> {
    p.forbidden_region().iter().fold(p.vertices.clone(), |acc, hp| clip(&acc, hp))
}

fn path_of(frame: &Frame, pts: &[Point]) -> String {
    let mut d = String::new();
    for (k, p) in pts.iter().enumerate() {
        let (x, y) = frame.map(*p);
        let _ = write!(d, "{}{x:.3},{y:.3} ", if k == 0 { "M" } else { "L" });
    }
    d.push('Z');
    d
}

/// Render a polygon with the requested layers; identical input gives identical output.
pub fn render_svg(p: &Polygon, opts: &SvgOptions) -> String {
    let frame = Frame::new(&p.vertices);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let points: Vec<String> = p
        .vertices
        .iter()
        .map(|v| {
            let (x, y) = frame.map(*v);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        s,
        r##"<polygon class="polygon" points="{}" fill="#eef3fb" stroke="#1f3b73" stroke-width="2"/>"##,
        points.join(" ")
    );
    if opts.forbidden_region {
        let region = forbidden_polygon(p);
        if region.len() >= 3 {
            let _ = writeln!(
                s,
                r##"<path class="forbidden" d="{}" fill="#d9534f" fill-opacity="0.35" stroke="none"/>"##,
                path_of(&frame, &region)
            );
        }
    }
    if opts.lattice_points {
        if let Ok(ranks) = p.ranks() {
            for (k, &r) in ranks.iter().enumerate() {
                let start = p.v(k as isize - 1);
                let m = p.edge(k as isize);
                for t in 1..r {
                    let (x, y) = frame.map(start + m.scale(Q::new(t as i128, r as i128)));
                    let _ = writeln!(s, r##"<circle class="lattice" cx="{x:.3}" cy="{y:.3}" r="2.5" fill="#1f3b73"/>"##);
                }
            }
        }
    }
    if opts.quiver {
        if let Ok(q) = Quiver::of_polygon(p) {
            let mid = |k: usize| p.v(k as isize - 1) + p.edge(k as isize).scale(Q::new(1, 2));
            for i in 0..q.n {
                for j in 0..q.n {
                    if q.c[i][j] > 0 {
                        let ((x1, y1), (x2, y2)) = (frame.map(mid(i)), frame.map(mid(j)));
                        let _ = writeln!(
                            s,
                            r##"<line class="arrow" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#2a7f62" stroke-width="1.5"><title>{i} -> {j} x{}</title></line>"##,
                            q.c[i][j]
                        );
                    }
                }
            }
        }
    }
    for v in &p.vertices {
        let (x, y) = frame.map(*v);
        let _ = writeln!(s, r##"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="4" fill="#1f3b73"/>"##);
    }
    if opts.origin {
        let (x, y) = frame.map(Point::default());
        let _ = writeln!(s, r##"<circle class="origin" cx="{x:.3}" cy="{y:.3}" r="4" fill="none" stroke="#000"/>"##);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Polygon {
        Polygon::from_ints(&[(1, 8), (-1, -7), (0, -1)])
    }

    #[test]
    fn triangle_has_three_vertices() {
        let svg = render_svg(&triangle(), &SvgOptions::default());
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 3);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<path").count(), 0);
        assert_eq!(svg.matches("<circle").count(), 3);
    }

    #[test]
    fn forbidden_flag_adds_one_path() {
        let opts = SvgOptions { forbidden_region: true, ..SvgOptions::default() };
        let svg = render_svg(&triangle(), &opts);
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(svg.matches(r#"class="forbidden""#).count(), 1);
    }

    #[test]
    fn forbidden_region_of_triangle_is_medial() {
        let t = triangle();
        let mut region = forbidden_polygon(&t);
        let half = Q::new(1, 2);
        let mut medial: Vec<Point> = (0..3).map(|k| (t.v(k) + t.v(k + 1)).scale(half)).collect();
        region.sort();
        medial.sort();
        assert_eq!(region, medial);
    }

    #[test]
    fn all_layers_and_determinism() {
        let opts = SvgOptions { lattice_points: true, origin: true, forbidden_region: true, quiver: true };
        let a = render_svg(&triangle(), &opts);
        assert_eq!(a, render_svg(&triangle(), &opts));
        assert_eq!(a.matches(r#"class="arrow""#).count(), 3);
        assert_eq!(a.matches(r#"class="origin""#).count(), 1);
        assert_eq!(a.matches(r#"class="lattice""#).count(), 0);
    }
}
