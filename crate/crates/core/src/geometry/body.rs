//! Planar convex bodies and their support, chord and area queries.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::line::{Line2, Side};
use super::point::{wrap_pi, Dir2, Point2};
use super::polygon;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Frames whose normal lies within this many radians of a polygon edge normal are skipped.
pub const EDGE_NORMAL_EXCLUSION: f64 = 1e-6;

/// Number of samples used to check `h + h'' > 0` for support series.
pub const CONVEXITY_GRID: usize = 4096;

/// Default boundary resolution for polygonization.
pub const POLYGONIZE_N: usize = 4096;

/// The set of boundary points where a supporting line touches a body.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SupportSet {
    Point(Point2),
    Segment(Point2, Point2),
}

impl SupportSet {
    /// A representative point: the point itself or the segment midpoint.
    pub fn representative(&self) -> Point2 {
        match *self {
            SupportSet::Point(p) => p,
            SupportSet::Segment(a, b) => a.lerp(b, 0.5),
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, SupportSet::Point(_))
    }

    pub fn endpoints(&self) -> (Point2, Point2) {
        match *self {
            SupportSet::Point(p) => (p, p),
            SupportSet::Segment(a, b) => (a, b),
        }
    }
}

/// A convex body in the plane.
///
/// Polygons are stored counterclockwise. A support series is the body whose
/// support function is `a0 + Σ (cos[m-1]·cos mθ + sin[m-1]·sin mθ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexBody2 {
    Disk {
        center: Point2,
        radius: f64,
    },
    Ellipse {
        center: Point2,
        semi_axes: [f64; 2],
        #[serde(default)]
        rotation: f64,
    },
    Polygon {
        vertices: Vec<Point2>,
    },
    SupportSeries {
        a0: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
    },
}

impl ConvexBody2 {
    pub fn disk(center: Point2, radius: f64) -> Self {
        ConvexBody2::Disk { center, radius }
    }

    pub fn unit_disk() -> Self {
        Self::disk(Point2::ORIGIN, 1.0)
    }

    pub fn ellipse(center: Point2, a: f64, b: f64, rotation: f64) -> Self {
        ConvexBody2::Ellipse { center, semi_axes: [a, b], rotation }
    }

    /// Polygon from vertices in any cyclic order; reversed to counterclockwise if needed.
    pub fn polygon(mut vertices: Vec<Point2>) -> Self {
        if polygon::signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        ConvexBody2::Polygon { vertices }
    }

    pub fn square(lo: f64, hi: f64) -> Self {
        Self::polygon(vec![
            Point2::new(lo, lo),
            Point2::new(hi, lo),
            Point2::new(hi, hi),
            Point2::new(lo, hi),
        ])
    }

    pub fn series(a0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        ConvexBody2::SupportSeries { a0, cos, sin }
    }

    /// Checks the body invariants.
    pub fn validate(&self) -> Result<()> {
        match self {
            ConvexBody2::Disk { center, radius } => {
                if !(*radius > 0.0 && radius.is_finite() && center.is_finite()) {
                    return Err(Error::InvalidBody(format!("disk radius {radius}")));
                }
            }
            ConvexBody2::Ellipse { center, semi_axes, rotation } => {
                if !(semi_axes[0] > 0.0 && semi_axes[1] > 0.0)
                    || !semi_axes.iter().all(|a| a.is_finite())
                    || !center.is_finite()
                    || !rotation.is_finite()
                {
                    return Err(Error::InvalidBody(format!("ellipse semi-axes {semi_axes:?}")));
                }
            }
            ConvexBody2::Polygon { vertices } => {
                if vertices.len() < 3 {
                    return Err(Error::InvalidBody("polygon needs at least 3 vertices".into()));
                }
                if polygon_convexity(vertices) == Convexity::NotConvex {
                    return Err(Error::InvalidBody("polygon is not convex".into()));
                }
            }
            ConvexBody2::SupportSeries { a0, cos, sin } => {
                if !a0.is_finite() || cos.iter().chain(sin).any(|c| !c.is_finite()) {
                    return Err(Error::InvalidBody("non-finite series coefficient".into()));
                }
                for k in 0..CONVEXITY_GRID {
                    let t = TAU * k as f64 / CONVEXITY_GRID as f64;
                    let (h, _, h2) = series_eval(*a0, cos, sin, t);
                    if h + h2 <= 0.0 {
                        return Err(Error::InvalidBody(format!(
                            "support series not convex at angle {t}: h + h'' = {}",
                            h + h2
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the polygon has all consecutive edge cross products positive.
    pub fn is_strictly_convex_polygon(&self) -> bool {
        match self {
            ConvexBody2::Polygon { vertices } => polygon_convexity(vertices) == Convexity::Strict,
            _ => false,
        }
    }

    pub fn is_polygon(&self) -> bool {
        matches!(self, ConvexBody2::Polygon { .. })
    }

    /// A fixed interior point: center, centroid, or Steiner point.
    pub fn interior_point(&self) -> Point2 {
        match self {
            ConvexBody2::Disk { center, .. } | ConvexBody2::Ellipse { center, .. } => *center,
            ConvexBody2::Polygon { vertices } => polygon::centroid(vertices),
            ConvexBody2::SupportSeries { cos, sin, .. } => Point2::new(
                cos.first().copied().unwrap_or(0.0),
                sin.first().copied().unwrap_or(0.0),
            ),
        }
    }

    /// Support function `h(θ) = max ⟨x, (cos θ, sin θ)⟩` over the body.
    pub fn support(&self, theta: f64) -> f64 {
        let u = Dir2::from_angle(theta);
        match self {
            ConvexBody2::Disk { center, radius } => u.dot(*center) + radius,
            ConvexBody2::Ellipse { center, .. } => {
                let (a, b) = self.ellipse_coords(u);
                u.dot(*center) + a.hypot(b)
            }
            ConvexBody2::Polygon { vertices } => {
                vertices.iter().map(|&v| u.dot(v)).fold(f64::NEG_INFINITY, f64::max)
            }
            ConvexBody2::SupportSeries { a0, cos, sin } => series_eval(*a0, cos, sin, theta).0,
        }
    }

    /// `h'(θ)`; polygons fail within [`EDGE_NORMAL_EXCLUSION`] of an edge normal.
    pub fn support_derivative(&self, theta: f64) -> Result<f64> {
        let u = Dir2::from_angle(theta);
        let du = u.perp();
        match self {
            ConvexBody2::Disk { center, .. } => Ok(du.dot(*center)),
            ConvexBody2::Ellipse { center, semi_axes, .. } => {
                let (e1, e2) = self.ellipse_axes();
                let (a, b) = (semi_axes[0], semi_axes[1]);
                let al = a * u.dot(e1);
                let be = b * u.dot(e2);
                let n = al.hypot(be);
                Ok(du.dot(*center) + (al * a * du.dot(e1) + be * b * du.dot(e2)) / n)
            }
            ConvexBody2::Polygon { vertices } => {
                if self.near_edge_normal(theta, EDGE_NORMAL_EXCLUSION) {
                    return Err(Error::NotDifferentiable(theta));
                }
                let v = argmax_vertex(vertices, u);
                Ok(du.dot(v))
            }
            ConvexBody2::SupportSeries { a0, cos, sin } => Ok(series_eval(*a0, cos, sin, theta).1),
        }
    }

    /// `h''(θ)` for smooth kinds; central difference for ellipses.
    pub fn support_second_derivative(&self, theta: f64) -> Result<f64> {
        match self {
            ConvexBody2::Disk { center, .. } => Ok(-Dir2::from_angle(theta).dot(*center)),
            ConvexBody2::SupportSeries { a0, cos, sin } => Ok(series_eval(*a0, cos, sin, theta).2),
            ConvexBody2::Ellipse { .. } => {
                let e = 1e-4;
                let f = |t: f64| self.support_derivative(t).unwrap_or(0.0);
                // fourth-order central difference
                Ok((-f(theta + 2.0 * e) + 8.0 * f(theta + e) - 8.0 * f(theta - e) + f(theta - 2.0 * e))
                    / (12.0 * e))
            }
            ConvexBody2::Polygon { .. } => {
                if self.near_edge_normal(theta, EDGE_NORMAL_EXCLUSION) {
                    Err(Error::NotDifferentiable(theta))
                } else {
                    Ok(-self.support(theta))
                }
            }
        }
    }

    /// Whether `theta` is within `tol` of an outer edge normal of a polygon.
    pub fn near_edge_normal(&self, theta: f64, tol: f64) -> bool {
        match self {
            ConvexBody2::Polygon { vertices } => {
                edge_normal_angles(vertices).iter().any(|&a| wrap_pi(theta - a).abs() < tol)
            }
            _ => false,
        }
    }

    /// Outer normal angles of the polygon edges (empty for smooth kinds).
    pub fn edge_normals(&self) -> Vec<f64> {
        match self {
            ConvexBody2::Polygon { vertices } => edge_normal_angles(vertices),
            _ => Vec::new(),
        }
    }

    /// Boundary points achieving the support value in direction `θ`.
    pub fn contact_set(&self, theta: f64) -> SupportSet {
        let u = Dir2::from_angle(theta);
        match self {
            ConvexBody2::Disk { center, radius } => SupportSet::Point(*center + u * *radius),
            ConvexBody2::Ellipse { center, semi_axes, .. } => {
                let (e1, e2) = self.ellipse_axes();
                let (al, be) = self.ellipse_coords(u);
                let n = al.hypot(be);
                SupportSet::Point(*center + (e1 * (semi_axes[0] * al) + e2 * (semi_axes[1] * be)) / n)
            }
            ConvexBody2::Polygon { vertices } => {
                let h = self.support(theta);
                let scale = vertices.iter().map(|v| v.norm()).fold(1.0, f64::max);
                let tol = 1e-12 * scale;
                let n = vertices.len();
                let hits: Vec<usize> = (0..n).filter(|&i| u.dot(vertices[i]) >= h - tol).collect();
                match hits.len() {
                    1 => SupportSet::Point(vertices[hits[0]]),
                    _ => {
                        // adjacent pair (or a run of collinear vertices); order along the line direction
                        let dir = -u.perp();
                        let mut lo = vertices[hits[0]];
                        let mut hi = lo;
                        for &i in &hits {
                            let v = vertices[i];
                            if dir.dot(v) < dir.dot(lo) {
                                lo = v;
                            }
                            if dir.dot(v) > dir.dot(hi) {
                                hi = v;
                            }
                        }
                        SupportSet::Segment(lo, hi)
                    }
                }
            }
            ConvexBody2::SupportSeries { a0, cos, sin } => {
                let (h, dh, _) = series_eval(*a0, cos, sin, theta);
                SupportSet::Point(u * h + u.perp() * dh)
            }
        }
    }

    /// Supporting line with outer normal angle `θ`.
    pub fn supporting_line(&self, theta: f64) -> Line2 {
        Line2::new(Dir2::from_angle(theta), self.support(theta))
    }

    /// Distance from interior point `p` to the boundary along `dir`.
    pub fn radial(&self, p: Point2, dir: Dir2) -> f64 {
        match self {
            ConvexBody2::Disk { center, radius } => {
                let w = p - *center;
                let b = dir.dot(w);
                let c = w.norm_sq() - radius * radius;
                let disc = (b * b - c).max(0.0);
                -b + disc.sqrt()
            }
            ConvexBody2::Ellipse { center, semi_axes, .. } => {
                let (e1, e2) = self.ellipse_axes();
                let w = p - *center;
                let (a, b) = (semi_axes[0], semi_axes[1]);
                let wx = e1.dot(w) / a;
                let wy = e2.dot(w) / b;
                let dx = dir.dot(e1.vec()) / a;
                let dy = dir.dot(e2.vec()) / b;
                let qa = dx * dx + dy * dy;
                let qb = wx * dx + wy * dy;
                let qc = wx * wx + wy * wy - 1.0;
                let disc = (qb * qb - qa * qc).max(0.0);
                (-qb + disc.sqrt()) / qa
            }
            ConvexBody2::Polygon { vertices } => {
                let n = vertices.len();
                let mut best = f64::INFINITY;
                for i in 0..n {
                    let a = vertices[i];
                    let e = vertices[(i + 1) % n] - a;
                    let len = e.norm();
                    if len == 0.0 {
                        continue;
                    }
                    let out = Point2::new(e.y, -e.x) / len;
                    let den = out.dot(dir.vec());
                    if den > 1e-300 {
                        best = best.min(out.dot(a - p) / den);
                    }
                }
                best
            }
            ConvexBody2::SupportSeries { a0, cos, sin } => {
                let target = dir.vec().angle();
                let g = |t: f64| {
                    let (h, dh, _) = series_eval(*a0, cos, sin, t);
                    let u = Dir2::from_angle(t);
                    let x = u * h + u.perp() * dh;
                    wrap_pi((x - p).angle() - target)
                };
                let t = crate::roots::bisect(g, target - PI / 2.0, target + PI / 2.0, 1e-15)
                    .unwrap_or(target);
                let (h, dh, _) = series_eval(*a0, cos, sin, t);
                let u = Dir2::from_angle(t);
                let x = u * h + u.perp() * dh;
                dir.dot(x - p)
            }
        }
    }

    /// Minkowski gauge of `x` relative to [`interior_point`](Self::interior_point).
    pub fn gauge(&self, x: Point2) -> f64 {
        let c = self.interior_point();
        let w = x - c;
        let r = w.norm();
        if r == 0.0 {
            return 0.0;
        }
        match self {
            ConvexBody2::Disk { radius, .. } => r / radius,
            ConvexBody2::Ellipse { semi_axes, .. } => {
                let (e1, e2) = self.ellipse_axes();
                (e1.dot(w) / semi_axes[0]).hypot(e2.dot(w) / semi_axes[1])
            }
            _ => r / self.radial(c, Dir2::new(w).expect("nonzero")),
        }
    }

    /// Euclidean distance from `x` to the boundary curve.
    pub fn boundary_distance(&self, x: Point2) -> f64 {
        match self {
            ConvexBody2::Disk { center, radius } => (x.dist(*center) - radius).abs(),
            ConvexBody2::Polygon { vertices } => polygon::boundary_distance(vertices, x),
            _ => {
                let n = 720;
                let step = TAU / n as f64;
                let f = |t: f64| self.boundary_point(t).dist(x);
                let best = (0..n).map(|k| k as f64 * step).fold((0.0, f64::INFINITY), |acc, t| {
                    let v = f(t);
                    if v < acc.1 {
                        (t, v)
                    } else {
                        acc
                    }
                });
                let (_, v) = crate::roots::golden_min(f, best.0 - step, best.0 + step, 1e-13);
                v.min(best.1)
            }
        }
    }

    pub fn contains(&self, x: Point2, tol: f64) -> bool {
        match self {
            ConvexBody2::Polygon { vertices } => polygon::convex_signed_distance(vertices, x) <= tol,
            _ => self.gauge(x) <= 1.0 + tol,
        }
    }

    /// Intersection of a line with the body, ordered along [`Line2::direction`].
    ///
    /// A tangential touch returns a zero-length segment.
    pub fn chord(&self, line: &Line2) -> Option<(Point2, Point2)> {
        let dir = line.direction();
        let foot = line.foot();
        match self {
            ConvexBody2::Disk { center, radius } => {
                let d = line.signed_distance(*center);
                if d.abs() > *radius {
                    return None;
                }
                let half = (radius * radius - d * d).max(0.0).sqrt();
                let mid = *center - line.normal * d;
                Some((mid - dir * half, mid + dir * half))
            }
            ConvexBody2::Ellipse { center, semi_axes, .. } => {
                let (e1, e2) = self.ellipse_axes();
                let (a, b) = (semi_axes[0], semi_axes[1]);
                // unit-disk coordinates z with x = c + a z1 e1 + b z2 e2
                let m_t_xi = Point2::new(a * line.normal.dot(e1.vec()), b * line.normal.dot(e2.vec()));
                let nrm = m_t_xi.norm();
                let d = (line.offset - line.normal.dot(*center)) / nrm;
                if d.abs() > 1.0 {
                    return None;
                }
                let n = m_t_xi / nrm;
                let half = (1.0 - d * d).max(0.0).sqrt();
                let to_world = |z: Point2| *center + e1 * (a * z.x) + e2 * (b * z.y);
                let p = to_world(n * d + n.perp() * half);
                let q = to_world(n * d - n.perp() * half);
                Some(order_along(p, q, dir))
            }
            ConvexBody2::Polygon { vertices } => {
                let n = vertices.len();
                let mut tmin = f64::NEG_INFINITY;
                let mut tmax = f64::INFINITY;
                for i in 0..n {
                    let a = vertices[i];
                    let e = vertices[(i + 1) % n] - a;
                    let len = e.norm();
                    if len == 0.0 {
                        continue;
                    }
                    let out = Point2::new(e.y, -e.x) / len;
                    let num = out.dot(a - foot);
                    let den = out.dot(dir.vec());
                    if den.abs() < 1e-300 {
                        if num < -1e-12 {
                            return None;
                        }
                    } else if den > 0.0 {
                        tmax = tmax.min(num / den);
                    } else {
                        tmin = tmin.max(num / den);
                    }
                }
                if tmin > tmax {
                    let scale = vertices.iter().map(|v| v.norm()).fold(1.0, f64::max);
                    if tmin - tmax > 1e-12 * scale {
                        return None;
                    }
                    let t = 0.5 * (tmin + tmax);
                    return Some((foot + dir * t, foot + dir * t));
                }
                Some((foot + dir * tmin, foot + dir * tmax))
            }
            ConvexBody2::SupportSeries { a0, cos, sin } => {
                let ta = line.normal.vec().angle();
                let hmax = self.support(ta);
                let hmin = -self.support(ta + PI);
                if line.offset > hmax || line.offset < hmin {
                    return None;
                }
                let f = |t: f64| {
                    let (h, dh, _) = series_eval(*a0, cos, sin, t);
                    let u = Dir2::from_angle(t);
                    line.normal.dot(u * h + u.perp() * dh) - line.offset
                };
                let t1 = crate::roots::bisect(f, ta - PI, ta, 1e-15).unwrap_or(ta);
                let t2 = crate::roots::bisect(f, ta, ta + PI, 1e-15).unwrap_or(ta);
                let pt = |t: f64| {
                    let (h, dh, _) = series_eval(*a0, cos, sin, t);
                    let u = Dir2::from_angle(t);
                    line.project(u * h + u.perp() * dh)
                };
                Some(order_along(pt(t1), pt(t2), dir))
            }
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            ConvexBody2::Disk { radius, .. } => PI * radius * radius,
            ConvexBody2::Ellipse { semi_axes, .. } => PI * semi_axes[0] * semi_axes[1],
            ConvexBody2::Polygon { vertices } => polygon::area(vertices),
            ConvexBody2::SupportSeries { a0, cos, sin } => {
                let mut s = PI * a0 * a0;
                for (k, (a, b)) in cos.iter().zip(sin.iter().chain(std::iter::repeat(&0.0))).enumerate() {
                    let m = (k + 1) as f64;
                    s += 0.5 * PI * (1.0 - m * m) * (a * a + b * b);
                }
                for (k, b) in sin.iter().enumerate().skip(cos.len()) {
                    let m = (k + 1) as f64;
                    s += 0.5 * PI * (1.0 - m * m) * b * b;
                }
                s
            }
        }
    }

    /// Area of the body on the chosen side of `line`.
    pub fn halfplane_area(&self, line: &Line2, side: Side) -> f64 {
        let positive = match self {
            ConvexBody2::Disk { center, radius } => {
                segment_area(*radius, line.signed_distance(*center) * -1.0)
            }
            ConvexBody2::Ellipse { center, semi_axes, .. } => {
                let (e1, e2) = self.ellipse_axes();
                let (a, b) = (semi_axes[0], semi_axes[1]);
                let m_t_xi = Point2::new(a * line.normal.dot(e1.vec()), b * line.normal.dot(e2.vec()));
                let d = (line.offset - line.normal.dot(*center)) / m_t_xi.norm();
                a * b * segment_area(1.0, d)
            }
            ConvexBody2::Polygon { vertices } => {
                polygon::area(&polygon::clip_halfplane(vertices, line, Side::Positive))
            }
            ConvexBody2::SupportSeries { a0, cos, sin } => {
                self.series_positive_area(*a0, cos, sin, line)
            }
        };
        match side {
            Side::Positive => positive,
            Side::Negative => (self.area() - positive).max(0.0),
        }
    }

    fn series_positive_area(&self, a0: f64, cos: &[f64], sin: &[f64], line: &Line2) -> f64 {
        let ta = line.normal.vec().angle();
        if line.offset >= self.support(ta) {
            return 0.0;
        }
        if line.offset <= -self.support(ta + PI) {
            return self.area();
        }
        let f = |t: f64| {
            let (h, dh, _) = series_eval(a0, cos, sin, t);
            let u = Dir2::from_angle(t);
            line.normal.dot(u * h + u.perp() * dh) - line.offset
        };
        let t1 = crate::roots::bisect(f, ta - PI, ta, 1e-15).unwrap_or(ta);
        let t2 = crate::roots::bisect(f, ta, ta + PI, 1e-15).unwrap_or(ta);
        let m = cos.len().max(sin.len());
        let panels = (m + 4).max(8);
        let arc = GaussLegendre::g20().composite(t1, t2, panels, |t| {
            let (h, _, h2) = series_eval(a0, cos, sin, t);
            h * (h + h2)
        });
        let pt = |t: f64| {
            let (h, dh, _) = series_eval(a0, cos, sin, t);
            let u = Dir2::from_angle(t);
            u * h + u.perp() * dh
        };
        0.5 * arc + 0.5 * pt(t2).cross(pt(t1))
    }

    /// Counterclockwise boundary samples.
    pub fn polygonize(&self, n: usize) -> Vec<Point2> {
        match self {
            ConvexBody2::Disk { center, radius } => (0..n)
                .map(|k| *center + Dir2::from_angle(TAU * k as f64 / n as f64) * *radius)
                .collect(),
            ConvexBody2::Ellipse { center, semi_axes, .. } => {
                let (e1, e2) = self.ellipse_axes();
                (0..n)
                    .map(|k| {
                        let t = TAU * k as f64 / n as f64;
                        *center + e1 * (semi_axes[0] * t.cos()) + e2 * (semi_axes[1] * t.sin())
                    })
                    .collect()
            }
            ConvexBody2::Polygon { vertices } => vertices.clone(),
            ConvexBody2::SupportSeries { .. } => (0..n)
                .map(|k| self.contact_set(TAU * k as f64 / n as f64).representative())
                .collect(),
        }
    }

    /// Boundary point of a smooth body with outer normal `θ` (segment midpoint for polygon faces).
    pub fn boundary_point(&self, theta: f64) -> Point2 {
        self.contact_set(theta).representative()
    }

    pub fn translated(&self, v: Point2) -> Self {
        match self {
            ConvexBody2::Disk { center, radius } => Self::disk(*center + v, *radius),
            ConvexBody2::Ellipse { center, semi_axes, rotation } => {
                ConvexBody2::Ellipse { center: *center + v, semi_axes: *semi_axes, rotation: *rotation }
            }
            ConvexBody2::Polygon { vertices } => {
                ConvexBody2::Polygon { vertices: vertices.iter().map(|&p| p + v).collect() }
            }
            ConvexBody2::SupportSeries { a0, cos, sin } => {
                let mut c = cos.clone();
                let mut s = sin.clone();
                if c.is_empty() {
                    c.push(0.0);
                }
                if s.is_empty() {
                    s.push(0.0);
                }
                c[0] += v.x;
                s[0] += v.y;
                ConvexBody2::SupportSeries { a0: *a0, cos: c, sin: s }
            }
        }
    }

    /// Dilation about the origin by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Self {
        match self {
            ConvexBody2::Disk { center, radius } => Self::disk(*center * lambda, radius * lambda),
            ConvexBody2::Ellipse { center, semi_axes, rotation } => ConvexBody2::Ellipse {
                center: *center * lambda,
                semi_axes: [semi_axes[0] * lambda, semi_axes[1] * lambda],
                rotation: *rotation,
            },
            ConvexBody2::Polygon { vertices } => {
                ConvexBody2::Polygon { vertices: vertices.iter().map(|&p| p * lambda).collect() }
            }
            ConvexBody2::SupportSeries { a0, cos, sin } => ConvexBody2::SupportSeries {
                a0: a0 * lambda,
                cos: cos.iter().map(|c| c * lambda).collect(),
                sin: sin.iter().map(|c| c * lambda).collect(),
            },
        }
    }

    /// Dilation about `center`.
    pub fn scaled_about(&self, center: Point2, lambda: f64) -> Self {
        self.translated(-center).scaled(lambda).translated(center * 1.0)
    }

    /// The point reflection `−K`.
    pub fn reflected(&self) -> Self {
        match self {
            ConvexBody2::Disk { center, radius } => Self::disk(-*center, *radius),
            ConvexBody2::Ellipse { center, semi_axes, rotation } => {
                ConvexBody2::Ellipse { center: -*center, semi_axes: *semi_axes, rotation: *rotation }
            }
            ConvexBody2::Polygon { vertices } => {
                ConvexBody2::Polygon { vertices: vertices.iter().map(|&p| -p).collect() }
            }
            ConvexBody2::SupportSeries { a0, cos, sin } => {
                let flip = |v: &Vec<f64>| {
                    v.iter()
                        .enumerate()
                        .map(|(k, c)| if k % 2 == 0 { -c } else { *c })
                        .collect::<Vec<_>>()
                };
                ConvexBody2::SupportSeries { a0: *a0, cos: flip(cos), sin: flip(sin) }
            }
        }
    }

    fn ellipse_axes(&self) -> (Dir2, Dir2) {
        match self {
            ConvexBody2::Ellipse { rotation, .. } => {
                let e1 = Dir2::from_angle(*rotation);
                (e1, e1.perp())
            }
            _ => (Dir2::from_angle(0.0), Dir2::from_angle(PI / 2.0)),
        }
    }

    /// `Mᵀu` for the ellipse matrix `M = R diag(a, b)`.
    fn ellipse_coords(&self, u: Dir2) -> (f64, f64) {
        match self {
            ConvexBody2::Ellipse { semi_axes, .. } => {
                let (e1, e2) = self.ellipse_axes();
                (semi_axes[0] * u.dot(e1.vec()), semi_axes[1] * u.dot(e2.vec()))
            }
            _ => (0.0, 0.0),
        }
    }
}

fn order_along(p: Point2, q: Point2, dir: Dir2) -> (Point2, Point2) {
    if dir.dot(p) <= dir.dot(q) {
        (p, q)
    } else {
        (q, p)
    }
}

/// Area of the part of a radius-`r` disk beyond a line at signed distance `d` from its center.
pub fn segment_area(r: f64, d: f64) -> f64 {
    if d >= r {
        return 0.0;
    }
    if d <= -r {
        return PI * r * r;
    }
    r * r * (d / r).acos() - d * (r * r - d * d).sqrt()
}

/// `(h, h', h'')` of a trigonometric support series.
pub fn series_eval(a0: f64, cos: &[f64], sin: &[f64], t: f64) -> (f64, f64, f64) {
    let mut h = a0;
    let mut dh = 0.0;
    let mut d2h = 0.0;
    let m = cos.len().max(sin.len());
    for k in 0..m {
        let mf = (k + 1) as f64;
        let a = cos.get(k).copied().unwrap_or(0.0);
        let b = sin.get(k).copied().unwrap_or(0.0);
        let (s, c) = (mf * t).sin_cos();
        h += a * c + b * s;
        dh += mf * (-a * s + b * c);
        d2h += -mf * mf * (a * c + b * s);
    }
    (h, dh, d2h)
}

fn argmax_vertex(vertices: &[Point2], u: Dir2) -> Point2 {
    let mut best = vertices[0];
    for &v in vertices {
        if u.dot(v) > u.dot(best) {
            best = v;
        }
    }
    best
}

fn edge_normal_angles(vertices: &[Point2]) -> Vec<f64> {
    let n = vertices.len();
    (0..n)
        .filter_map(|i| {
            let e = vertices[(i + 1) % n] - vertices[i];
            if e.norm() == 0.0 {
                None
            } else {
                Some(Point2::new(e.y, -e.x).angle())
            }
        })
        .collect()
}

#[derive(Debug, PartialEq, Eq)]
enum Convexity {
    Strict,
    Weak,
    NotConvex,
}

fn polygon_convexity(vertices: &[Point2]) -> Convexity {
    let n = vertices.len();
    let scale = vertices.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut strict = true;
    let mut turn = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let c = vertices[(i + 2) % n];
        let cr = (b - a).cross(c - b);
        if cr < -1e-12 * scale * scale {
            return Convexity::NotConvex;
        }
        if cr <= 1e-12 * scale * scale {
            strict = false;
        }
        turn += wrap_pi((c - b).angle() - (b - a).angle());
    }
    // a star polygon turns more than once
    if (turn - TAU).abs() > 1e-6 {
        return Convexity::NotConvex;
    }
    if strict {
        Convexity::Strict
    } else {
        Convexity::Weak
    }
}
