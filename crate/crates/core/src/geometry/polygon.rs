//! Plain-vertex-list polygon helpers: area, clipping by a half-plane, hulls.

use super::line::{Line2, Side};
use super::point::Point2;

/// Signed shoelace area; positive for counterclockwise order.
pub fn signed_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        s += poly[i].cross(poly[(i + 1) % n]);
    }
    0.5 * s
}

pub fn area(poly: &[Point2]) -> f64 {
    signed_area(poly).abs()
}

/// Area centroid; falls back to the vertex mean for degenerate input.
pub fn centroid(poly: &[Point2]) -> Point2 {
    let n = poly.len();
    let a = signed_area(poly);
    if n < 3 || a.abs() < 1e-300 {
        let s = poly.iter().fold(Point2::ORIGIN, |acc, &p| acc + p);
        return s / n.max(1) as f64;
    }
    let mut c = Point2::ORIGIN;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let w = p.cross(q);
        c += (p + q) * w;
    }
    c / (6.0 * a)
}

/// Sutherland–Hodgman clip of a convex polygon against one closed half-plane.
pub fn clip_halfplane(poly: &[Point2], line: &Line2, side: Side) -> Vec<Point2> {
    let sgn = match side {
        Side::Positive => 1.0,
        Side::Negative => -1.0,
    };
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let da = sgn * line.signed_distance(a);
        let db = sgn * line.signed_distance(b);
        let a_in = da >= 0.0;
        let b_in = db >= 0.0;
        if a_in {
            out.push(a);
        }
        if a_in != b_in {
            let t = da / (da - db);
            out.push(a.lerp(b, t));
        }
    }
    out
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.iter().copied().filter(|p| p.is_finite()).collect();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 {
            let k = lower.len();
            if (lower[k - 1] - lower[k - 2]).cross(p - lower[k - 2]) <= 0.0 {
                lower.pop();
            } else {
                break;
            }
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 {
            let k = upper.len();
            if (upper[k - 1] - upper[k - 2]).cross(p - upper[k - 2]) <= 0.0 {
                upper.pop();
            } else {
                break;
            }
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Signed distance from `p` to a counterclockwise convex polygon; negative inside.
pub fn convex_signed_distance(poly: &[Point2], p: Point2) -> f64 {
    let n = poly.len();
    let mut inside = true;
    let mut max_edge = f64::NEG_INFINITY;
    let mut min_dist = f64::INFINITY;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let e = b - a;
        let len = e.norm();
        if len == 0.0 {
            continue;
        }
        let outward = Point2::new(e.y, -e.x) / len;
        let s = outward.dot(p - a);
        max_edge = max_edge.max(s);
        if s > 0.0 {
            inside = false;
        }
        min_dist = min_dist.min(segment_distance(a, b, p));
    }
    if inside {
        max_edge.max(-min_dist)
    } else {
        min_dist
    }
}

pub fn segment_distance(a: Point2, b: Point2, p: Point2) -> f64 {
    let e = b - a;
    let l2 = e.norm_sq();
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(e) / l2).clamp(0.0, 1.0);
    p.dist(a + e * t)
}

/// Distance from `p` to a closed polyline.
pub fn boundary_distance(poly: &[Point2], p: Point2) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| segment_distance(poly[i], poly[(i + 1) % n], p))
        .fold(f64::INFINITY, f64::min)
}

/// Symmetric Hausdorff distance between two closed polylines, evaluated at vertices.
pub fn hausdorff(a: &[Point2], b: &[Point2]) -> f64 {
    let ab = a.iter().map(|&p| boundary_distance(b, p)).fold(0.0, f64::max);
    let ba = b.iter().map(|&p| boundary_distance(a, p)).fold(0.0, f64::max);
    ab.max(ba)
}
