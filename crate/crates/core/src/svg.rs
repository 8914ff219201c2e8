//! Static SVG figures: bodies, lines and point sets over a fixed view box.

use std::fmt::Write as _;

use crate::geometry::{ConvexBody2, Line2, Point2};

/// Canvas side in pixels.
pub const CANVAS: f64 = 800.0;

const BODY_SAMPLES: usize = 512;

/// World window `[x0, x1] × [y0, y1]` mapped onto a square canvas, `y` pointing up.
pub struct Svg {
    lo: Point2,
    span: f64,
    body: String,
}

impl Svg {
    /// A window containing `pts` with a 5% margin.
    pub fn fit(pts: &[Point2]) -> Self {
        let (mut lo, mut hi) = (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in pts.iter().filter(|p| p.is_finite()) {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if !lo.is_finite() {
            lo = Point2::new(-1.0, -1.0);
            hi = Point2::new(1.0, 1.0);
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9) * 1.1;
        let mid = (lo + hi) * 0.5;
        Self { lo: mid - Point2::new(span, span) * 0.5, span, body: String::new() }
    }

    /// A window around `bodies`.
    pub fn around(bodies: &[&ConvexBody2]) -> Self {
        let pts: Vec<Point2> = bodies.iter().flat_map(|b| b.polygonize(64)).collect();
        Self::fit(&pts)
    }

    fn px(&self, p: Point2) -> (f64, f64) {
        let s = CANVAS / self.span;
        ((p.x - self.lo.x) * s, CANVAS - (p.y - self.lo.y) * s)
    }

    pub fn body(&mut self, b: &ConvexBody2, stroke: &str) -> &mut Self {
        let pts: Vec<String> = b
            .polygonize(BODY_SAMPLES)
            .into_iter()
            .map(|p| {
                let (x, y) = self.px(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(self.body, r#"<polygon points="{}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#, pts.join(" "));
        self
    }

    /// The part of `l` inside the window.
    pub fn line(&mut self, l: &Line2, stroke: &str) -> &mut Self {
        let c = self.lo + Point2::new(self.span, self.span) * 0.5;
        let f = l.project(c);
        let d = l.direction().vec() * self.span;
        let (x1, y1) = self.px(f - d);
        let (x2, y2) = self.px(f + d);
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{stroke}" stroke-dasharray="6 4"/>"#
        );
        self
    }

    pub fn points(&mut self, pts: &[Point2], fill: &str, radius: f64) -> &mut Self {
        for &p in pts {
            let (x, y) = self.px(p);
            let _ = writeln!(self.body, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{radius}" fill="{fill}"/>"#);
        }
        self
    }

    pub fn polyline(&mut self, pts: &[Point2], stroke: &str) -> &mut Self {
        let s: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.px(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(self.body, r#"<polyline points="{}" fill="none" stroke="{stroke}"/>"#, s.join(" "));
        self
    }

    pub fn finish(&self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {CANVAS} {CANVAS}\" width=\"{CANVAS}\" height=\"{CANVAS}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}
