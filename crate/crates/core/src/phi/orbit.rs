use std::fmt::Write as _;

use super::{phi_body_step, ChordDataSource, PhiConfig};
use crate::error::{Error, Result};
use crate::geometry::tangent::{tangent_lines_through, Branch, CommonTangent};
use crate::geometry::{ConvexBody2, Dir2, Line2, Point2};
use crate::probes::fmt_f64;

/// The chosen common tangent `l`, its contacts and the two points of `∂K ∩ l`.
///
/// `x0` is the endpoint for which `|Y₀p₁||X₀p₂| < |X₀p₁||Y₀p₂|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitGeometry {
    pub l: Line2,
    pub p1: Point2,
    pub p2: Point2,
    pub x0: Point2,
    pub y0: Point2,
    /// Relative slack applied to the neighborhood bounds.
    pub margin: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contraction {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub k: f64,
    /// `|Y₀p₁||X₀p₂| / (|X₀p₁||Y₀p₂|)`.
    pub ratio: f64,
}

/// `k = bd/(ac)` with `a, c` shrunk and `b, d` inflated by the relative `margin`.
pub fn contraction_bound(x0: Point2, y0: Point2, p1: Point2, p2: Point2, margin: f64) -> Result<Contraction> {
    let ratio = (y0.dist(p1) * x0.dist(p2)) / (x0.dist(p1) * y0.dist(p2));
    if !(ratio < 1.0) {
        return Err(Error::RatioNotContracting(ratio));
    }
    let a = (1.0 - margin) * x0.dist(p1);
    let b = (1.0 + margin) * y0.dist(p1);
    let c = (1.0 - margin) * y0.dist(p2);
    let d = (1.0 + margin) * x0.dist(p2);
    Ok(Contraction { a, b, c, d, k: b * d / (a * c), ratio })
}

impl OrbitGeometry {
    /// Orders two endpoints on `l` so that the contraction ratio is below one.
    pub fn new(l: Line2, p1: Point2, p2: Point2, e1: Point2, e2: Point2) -> Result<Self> {
        let g = Self { l, p1, p2, x0: e1, y0: e2, margin: 0.0 };
        if g.contraction().is_ok() {
            return Ok(g);
        }
        let g = Self { x0: e2, y0: e1, ..g };
        g.contraction().map(|_| g)
    }

    /// Endpoints taken from the chord of an oracle body along the tangent.
    pub fn from_oracle(tangent: &CommonTangent, k: &ConvexBody2) -> Result<Self> {
        let (p1, p2) = tangent.contacts();
        let (e1, e2) = k.chord(&tangent.line).ok_or(Error::InnerNotContained(tangent.theta))?;
        Self::new(tangent.line, p1, p2, e1, e2)
    }

    pub fn contraction(&self) -> Result<Contraction> {
        contraction_bound(self.x0, self.y0, self.p1, self.p2, self.margin)
    }

    /// Unit vector from `p₁` toward `X₀`.
    pub fn axis(&self) -> Dir2 {
        let d = self.l.direction();
        if d.dot(self.x0 - self.p1) >= 0.0 {
            d
        } else {
            -d
        }
    }

    /// Branches whose tangents from `X₀` touch nearest `p₁` and `p₂`.
    pub fn branches(&self, d1: &ConvexBody2, d2: &ConvexBody2) -> Result<(Branch, Branch)> {
        let pick = |d: &ConvexBody2, p: Point2| -> Result<Branch> {
            let tp = tangent_lines_through(d, self.x0)?;
            let dl = tp.left.contact.representative().dist(p);
            let dr = tp.right.contact.representative().dist(p);
            Ok(if dl <= dr { Branch::Left } else { Branch::Right })
        };
        Ok((pick(d1, self.p1)?, pick(d2, self.p2)?))
    }

    /// Point of `∂K` on the `X₀` side of the tangent to `d1` that leaves `l` at angle `theta`.
    pub fn start_at_angle(&self, d1: &ConvexBody2, k: &ConvexBody2, theta: f64) -> Result<Point2> {
        let mut n = self.l.normal;
        if d1.support(n.angle().radians()) < self.l.offset - 1e-9 * (1.0 + self.l.offset.abs()) {
            n = -n;
        }
        let axis = self.axis();
        let s = if axis.vec().cross(n.vec()) >= 0.0 { 1.0 } else { -1.0 };
        let line = d1.supporting_line(n.angle().radians() + s * theta);
        let (a, b) = k.chord(&line).ok_or(Error::InnerNotContained(theta))?;
        Ok(if axis.dot(a - b) >= 0.0 { a } else { b })
    }

    fn foot_on_l(&self, x: Point2, d: &ConvexBody2, branch: Branch, fallback: Point2) -> Result<Point2> {
        if self.l.signed_distance(x).abs() < 1e-14 * (1.0 + x.norm()) {
            return Ok(fallback);
        }
        let tp = tangent_lines_through(d, x)?;
        Ok(tp.get(branch).line.intersect(&self.l).unwrap_or(fallback))
    }

    /// Whether `X` (near `X₀`) and `Y` (near `Y₀`) satisfy the four distance bounds.
    pub fn in_neighborhoods(&self, x: Point2, y: Point2, cfg1: &PhiConfig, cfg2: &PhiConfig) -> Result<bool> {
        let c = self.contraction()?;
        let t1 = self.foot_on_l(x, &cfg1.inner, cfg1.branch, self.p1)?;
        let t2 = self.foot_on_l(x, &cfg2.inner, cfg2.branch, self.p2)?;
        let t_d1 = self.foot_on_l(y, &cfg1.inner, cfg1.branch.opposite(), self.p1)?;
        let t_d2 = self.foot_on_l(y, &cfg2.inner, cfg2.branch.opposite(), self.p2)?;
        Ok(x.dist(t1) > c.a && x.dist(t2) < c.d && y.dist(t_d2) > c.c && y.dist(t_d1) < c.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitStop {
    pub theta_min: f64,
    pub max_iter: usize,
}

impl Default for OrbitStop {
    fn default() -> Self {
        Self { theta_min: 1e-10, max_iter: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitTrace {
    /// `Q_j`.
    pub points: Vec<Point2>,
    /// `φ₁(Q_j)`.
    pub images: Vec<Point2>,
    pub theta: Vec<f64>,
    pub eta: Vec<f64>,
    /// `sin θ_{j+1} / sin θ_j`.
    pub ratios: Vec<f64>,
    /// Whether step `j` had `φ₁(Q_j)` and `Q_{j+1}` inside the neighborhoods.
    pub inside: Vec<bool>,
    pub bounds: Contraction,
}

impl OrbitTrace {
    pub fn k(&self) -> f64 {
        self.bounds.k
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("j,x,y,theta,eta,ratio\n");
        for (j, p) in self.points.iter().enumerate() {
            let opt = |v: Option<&f64>| v.map(|x| fmt_f64(*x)).unwrap_or_default();
            let _ = writeln!(
                s,
                "{j},{},{},{},{},{}",
                fmt_f64(p.x),
                fmt_f64(p.y),
                opt(self.theta.get(j)),
                opt(self.eta.get(j)),
                opt(self.ratios.get(j))
            );
        }
        s
    }
}

fn line_angle(dir: Dir2, from: Point2, to: Point2, axis: Dir2) -> f64 {
    let w = if dir.dot(to - from) >= 0.0 { dir } else { -dir };
    let e = axis.vec();
    e.cross(w.vec()).abs().atan2(e.dot(w.vec()))
}

fn escaped(e: Error, step: usize) -> Error {
    match e {
        Error::DataExhausted { .. } | Error::NegativePower(_) | Error::InnerNotContained(_) => {
            Error::OrbitEscaped(step)
        }
        other => other,
    }
}

/// Iterates `Q_{j+1} = φ₂⁻¹(φ₁(Q_j))` until `θ_j < theta_min` or `max_iter` steps.
pub fn orbit(
    q0: Point2,
    cfg1: &PhiConfig,
    cfg2: &PhiConfig,
    data1: &ChordDataSource,
    data2: &ChordDataSource,
    geom: &OrbitGeometry,
    stop: OrbitStop,
) -> Result<OrbitTrace> {
    let bounds = geom.contraction()?;
    let axis = geom.axis();
    let inv2 = cfg2.with_branch(cfg2.branch.opposite());
    let mut tr = OrbitTrace {
        points: vec![q0],
        images: Vec::new(),
        theta: Vec::new(),
        eta: Vec::new(),
        ratios: Vec::new(),
        inside: Vec::new(),
        bounds,
    };
    let mut q = q0;
    for j in 0..stop.max_iter {
        let (y, tl1) = phi_body_step(q, cfg1, data1).map_err(|e| escaped(e, j))?;
        let th = line_angle(tl1.line.direction(), y, q, axis);
        if let Some(&prev) = tr.theta.last() {
            if th >= prev {
                return Err(Error::NonDecreasingAngle { step: j, prev, next: th });
            }
            tr.ratios.push(th.sin() / prev.sin());
        }
        tr.theta.push(th);
        tr.images.push(y);
        if th < stop.theta_min {
            break;
        }
        let (next, tl2) = phi_body_step(y, &inv2, data2).map_err(|e| escaped(e, j))?;
        tr.eta.push(line_angle(tl2.line.direction(), y, next, axis));
        tr.inside.push(geom.in_neighborhoods(next, y, cfg1, cfg2).unwrap_or(false));
        tr.points.push(next);
        q = next;
    }
    Ok(tr)
}
