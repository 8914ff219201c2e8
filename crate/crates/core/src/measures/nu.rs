use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::polygon::signed_area;
use crate::geometry::{Line2, Point2};
use crate::quadrature::GaussLegendre;

/// Axis segments shorter than this are treated as isolated contact points.
pub const AXIS_SEGMENT_MIN: f64 = 1e-9;

/// A polygonal region with holes and the reference line that serves as its x-axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Region2 {
    pub boundary: Vec<Point2>,
    pub holes: Vec<Vec<Point2>>,
    pub reference: Line2,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum NuValue {
    Finite(f64),
    Divergent,
}

impl NuValue {
    pub fn value(self) -> Option<f64> {
        match self {
            NuValue::Finite(v) => Some(v),
            NuValue::Divergent => None,
        }
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, NuValue::Divergent)
    }
}

impl Region2 {
    pub fn new(boundary: Vec<Point2>, reference: Line2) -> Self {
        Self { boundary, holes: Vec::new(), reference }
    }

    /// Coordinates in the frame where `reference` is the x-axis.
    pub fn frame(&self, p: Point2) -> (f64, f64) {
        (self.reference.direction().dot(p), self.reference.signed_distance(p))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.boundary).abs() - self.holes.iter().map(|h| signed_area(h).abs()).sum::<f64>()
    }

    fn rings(&self) -> impl Iterator<Item = &Vec<Point2>> {
        std::iter::once(&self.boundary).chain(self.holes.iter())
    }

    /// Whether the closed region meets the axis in a segment of positive length.
    pub fn meets_axis_in_segment(&self) -> bool {
        let scale = self.rings().flatten().map(|p| p.norm()).fold(1.0, f64::max);
        let on = 1e-12 * scale;
        let (mut pos, mut neg) = (false, false);
        for ring in self.rings() {
            let n = ring.len();
            for k in 0..n {
                let (xa, ya) = self.frame(ring[k]);
                let (xb, yb) = self.frame(ring[(k + 1) % n]);
                pos |= ya > on;
                neg |= ya < -on;
                if ya.abs() <= on && yb.abs() <= on && (xb - xa).abs() > AXIS_SEGMENT_MIN {
                    return true;
                }
            }
        }
        pos && neg
    }
}

/// `G` with `G' = |y|^{i−2}`.
fn g(y: f64, i: f64) -> f64 {
    if (i - 1.0).abs() < 1e-15 {
        if y == 0.0 {
            return 0.0;
        }
        y.signum() * y.abs().ln()
    } else {
        y.signum() * y.abs().powf(i - 1.0) / (i - 1.0)
    }
}

/// `H` with `H' = G`.
fn h(y: f64, i: f64) -> f64 {
    let a = y.abs();
    if (i - 1.0).abs() < 1e-15 {
        if a == 0.0 {
            0.0
        } else {
            a * (a.ln() - 1.0)
        }
    } else {
        a.powf(i) / (i * (i - 1.0))
    }
}

/// `∫ G(y) dx` along one straight edge.
fn edge(xa: f64, ya: f64, xb: f64, yb: f64, i: f64) -> f64 {
    let dx = xb - xa;
    let dy = yb - ya;
    if dx == 0.0 {
        return 0.0;
    }
    if dy.abs() <= 1e-4 * ya.abs().max(yb.abs()) {
        return dx * GaussLegendre::g20().integrate(0.0, 1.0, |t| g(ya + dy * t, i));
    }
    dx / dy * (h(yb, i) - h(ya, i))
}

fn ring_integral(r: &Region2, ring: &[Point2], i: f64) -> f64 {
    let n = ring.len();
    let mut s = 0.0;
    for k in 0..n {
        let (xa, ya) = r.frame(ring[k]);
        let (xb, yb) = r.frame(ring[(k + 1) % n]);
        s += edge(xa, ya, xb, yb, i);
    }
    // −∮ G dx is the integral for a counterclockwise ring
    -s * signed_area(ring).signum()
}

/// `∬ |y|^{i−2} dx dy` with `y` the signed distance to the region's reference line.
pub fn nu_measure(region: &Region2, i: f64) -> Result<NuValue> {
    if !(i > 0.0) || !i.is_finite() {
        return Err(Error::InvalidPower(i));
    }
    if region.boundary.len() < 3 {
        return Ok(NuValue::Finite(0.0));
    }
    if i <= 1.0 && region.meets_axis_in_segment() {
        return Ok(NuValue::Divergent);
    }
    let outer = ring_integral(region, &region.boundary, i);
    let holes: f64 = region.holes.iter().map(|h| ring_integral(region, h, i)).sum();
    Ok(NuValue::Finite(outer - holes))
}
