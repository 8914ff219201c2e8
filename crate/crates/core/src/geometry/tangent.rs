//! Tangent lines from an external point and common supporting lines of two bodies.

use std::f64::consts::{PI, TAU};

use super::body::{ConvexBody2, SupportSet};
use super::line::Line2;
use super::point::{wrap_tau, Dir2, Point2};
use crate::error::{AdmissibilityFailure, Error, Result};
use crate::roots::bisect;

/// Sampling resolution for the common-tangent search.
pub const COMMON_TANGENT_GRID: usize = 4096;

/// Branch label of a tangent line through an external point.
///
/// `Left` when `(contact − Q) × (center − Q) > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Left,
    Right,
}

impl Branch {
    pub fn opposite(self) -> Branch {
        match self {
            Branch::Left => Branch::Right,
            Branch::Right => Branch::Left,
        }
    }
}

/// A supporting line of `D` with outer normal angle `theta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentLine {
    pub theta: f64,
    pub line: Line2,
    pub contact: SupportSet,
}

impl TangentLine {
    /// Contact point nearest to `q` (the whole contact for smooth bodies).
    pub fn contact_near(&self, q: Point2) -> Point2 {
        let (a, b) = self.contact.endpoints();
        if a.dist(q) <= b.dist(q) {
            a
        } else {
            b
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentPair {
    pub left: TangentLine,
    pub right: TangentLine,
}

impl TangentPair {
    pub fn get(&self, b: Branch) -> &TangentLine {
        match b {
            Branch::Left => &self.left,
            Branch::Right => &self.right,
        }
    }
}

/// The two supporting lines of `d` through the exterior point `q`.
pub fn tangent_lines_through(d: &ConvexBody2, q: Point2) -> Result<TangentPair> {
    let c = d.interior_point();
    if d.contains(q, 1e-12) {
        return Err(Error::PointInsideBody(q.x, q.y));
    }
    let g = |t: f64| d.support(t) - Dir2::from_angle(t).dot(q);
    let t0 = (q - c).angle();
    if g(t0) >= 0.0 {
        // q on the boundary to rounding
        return Err(Error::PointInsideBody(q.x, q.y));
    }
    let ta = bisect(g, t0 - PI, t0, 1e-15).ok_or(Error::PointInsideBody(q.x, q.y))?;
    let tb = bisect(g, t0, t0 + PI, 1e-15).ok_or(Error::PointInsideBody(q.x, q.y))?;
    let make = |t: f64| {
        let contact = d.contact_set(t);
        let p = {
            let (a, b) = contact.endpoints();
            if a.dist(q) >= b.dist(q) { a } else { b }
        };
        // rebuild through q and the contact so both lie on the line to rounding
        let line = match Dir2::new(p - q) {
            Some(v) if p.dist(q) > 1e-9 => {
                let mut n = v.perp();
                if n.dot(Dir2::from_angle(t).vec()) < 0.0 {
                    n = -n;
                }
                Line2::through(q, n)
            }
            _ => Line2::new(Dir2::from_angle(t), d.support(t)),
        };
        TangentLine { theta: wrap_tau(line.normal.vec().angle()), line, contact }
    };
    let a = make(ta);
    let b = make(tb);
    let side = |tl: &TangentLine| (tl.contact.representative() - q).cross(c - q);
    if side(&a) > side(&b) {
        Ok(TangentPair { left: a, right: b })
    } else {
        Ok(TangentPair { left: b, right: a })
    }
}

/// A line supporting both bodies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommonTangent {
    /// Outer normal angle with respect to the first body.
    pub theta: f64,
    pub line: Line2,
    pub contact1: SupportSet,
    pub contact2: SupportSet,
    pub separating: bool,
    /// Whether the segment between the contacts leaves `D1 ∪ D2`.
    pub gap: bool,
}

impl CommonTangent {
    /// The pair of contact points closest to each other.
    pub fn contacts(&self) -> (Point2, Point2) {
        let (a0, a1) = self.contact1.endpoints();
        let (b0, b1) = self.contact2.endpoints();
        let mut best = (a0, b0);
        for a in [a0, a1] {
            for b in [b0, b1] {
                if a.dist(b) < best.0.dist(best.1) {
                    best = (a, b);
                }
            }
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityReport {
    pub tangents: Vec<CommonTangent>,
    pub failure: Option<AdmissibilityFailure>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.failure.is_none()
    }

    pub fn non_separating(&self) -> Vec<CommonTangent> {
        self.tangents.iter().filter(|t| !t.separating).copied().collect()
    }

    /// The two non-separating tangents, or the failure reason.
    pub fn require(&self) -> Result<[CommonTangent; 2]> {
        if let Some(f) = self.failure {
            return Err(Error::NotAdmissible(f));
        }
        let ns = self.non_separating();
        Ok([ns[0], ns[1]])
    }
}

fn crossings<F: Fn(f64) -> f64>(f: F, n: usize) -> Vec<f64> {
    let vals: Vec<f64> = (0..=n).map(|k| f(TAU * k as f64 / n as f64)).collect();
    let mut roots = Vec::new();
    for k in 0..n {
        if (vals[k] < 0.0) != (vals[k + 1] < 0.0) {
            let a = TAU * k as f64 / n as f64;
            let b = TAU * (k + 1) as f64 / n as f64;
            if let Some(t) = bisect(&f, a, b, 1e-15) {
                roots.push(wrap_tau(t));
            }
        }
    }
    roots
}

/// All common supporting lines of `d1` and `d2`, classified.
pub fn common_tangents(d1: &ConvexBody2, d2: &ConvexBody2) -> AdmissibilityReport {
    let mut tangents = Vec::new();
    for t in crossings(|t| d1.support(t) - d2.support(t), COMMON_TANGENT_GRID) {
        let line = Line2::new(Dir2::from_angle(t), 0.5 * (d1.support(t) + d2.support(t)));
        let contact1 = d1.contact_set(t);
        let contact2 = d2.contact_set(t);
        let mut ct = CommonTangent { theta: t, line, contact1, contact2, separating: false, gap: false };
        let (p, q) = ct.contacts();
        ct.gap = segment_leaves_union(d1, d2, p, q);
        tangents.push(ct);
    }
    for t in crossings(|t| d1.support(t) + d2.support(t + PI), COMMON_TANGENT_GRID) {
        let line = Line2::new(Dir2::from_angle(t), d1.support(t));
        let mut ct = CommonTangent {
            theta: t,
            line,
            contact1: d1.contact_set(t),
            contact2: d2.contact_set(t + PI),
            separating: true,
            gap: false,
        };
        let (p, q) = ct.contacts();
        ct.gap = segment_leaves_union(d1, d2, p, q);
        tangents.push(ct);
    }
    let ns: Vec<&CommonTangent> = tangents.iter().filter(|t| !t.separating).collect();
    let failure = if ns.is_empty() {
        Some(AdmissibilityFailure::Containment)
    } else if ns.len() != 2 {
        Some(AdmissibilityFailure::TangentCount(ns.len()))
    } else if !ns.iter().any(|t| t.gap) {
        Some(AdmissibilityFailure::ConvexUnion)
    } else {
        None
    };
    AdmissibilityReport { tangents, failure }
}

fn segment_leaves_union(d1: &ConvexBody2, d2: &ConvexBody2, p: Point2, q: Point2) -> bool {
    if p.dist(q) < 1e-9 {
        return false;
    }
    (1..64).any(|k| {
        let x = p.lerp(q, k as f64 / 64.0);
        // strictly outside both, by more than rounding
        !d1.contains(x, 1e-9) && !d2.contains(x, 1e-9)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangents_from_external_point() {
        let d = ConvexBody2::unit_disk();
        let q = Point2::new(2.0, 0.0);
        let tp = tangent_lines_through(&d, q).unwrap();
        let l = tp.left.contact.representative();
        let r = tp.right.contact.representative();
        let s = 3f64.sqrt() / 2.0;
        assert!(l.dist(Point2::new(0.5, s)) < 1e-12);
        assert!(r.dist(Point2::new(0.5, -s)) < 1e-12);
        for tl in [tp.left, tp.right] {
            assert!(tl.line.signed_distance(q).abs() < 1e-12);
            assert!((d.support(tl.theta) - tl.line.offset).abs() < 1e-12);
        }
    }

    #[test]
    fn tangents_near_boundary_converge() {
        let d = ConvexBody2::unit_disk();
        let tp = tangent_lines_through(&d, Point2::new(1.0 + 1e-8, 0.0)).unwrap();
        for tl in [tp.left, tp.right] {
            assert!(tl.contact.representative().dist(Point2::new(1.0, 0.0)) < 1e-3);
        }
    }

    #[test]
    fn square_vertex_tangents() {
        let sq = ConvexBody2::square(-1.0, 1.0);
        let tp = tangent_lines_through(&sq, Point2::new(3.0, 3.0)).unwrap();
        let mut got = [tp.left.contact_near(Point2::new(3.0, 3.0)), tp.right.contact_near(Point2::new(3.0, 3.0))];
        got.sort_by(|a, b| a.x.total_cmp(&b.x));
        assert!(got[0].dist(Point2::new(-1.0, 1.0)) < 1e-12);
        assert!(got[1].dist(Point2::new(1.0, -1.0)) < 1e-12);
    }

    #[test]
    fn inside_point_rejected() {
        let d = ConvexBody2::unit_disk();
        assert!(matches!(
            tangent_lines_through(&d, Point2::new(0.2, 0.1)),
            Err(Error::PointInsideBody(..))
        ));
    }

    #[test]
    fn equal_disks_are_admissible() {
        let d1 = ConvexBody2::unit_disk();
        let d2 = ConvexBody2::disk(Point2::new(3.0, 0.0), 1.0);
        let rep = common_tangents(&d1, &d2);
        assert!(rep.admissible());
        let [a, b] = rep.require().unwrap();
        let mut offs = [(a.theta, a.line.offset), (b.theta, b.line.offset)];
        offs.sort_by(|x, y| x.0.total_cmp(&y.0));
        assert!((offs[0].0 - PI / 2.0).abs() < 1e-12 && (offs[0].1 - 1.0).abs() < 1e-12);
        assert!((offs[1].0 - 3.0 * PI / 2.0).abs() < 1e-12 && (offs[1].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn concentric_disks_not_admissible() {
        let rep = common_tangents(&ConvexBody2::unit_disk(), &ConvexBody2::disk(Point2::ORIGIN, 3.0));
        assert_eq!(rep.failure, Some(AdmissibilityFailure::Containment));
        assert!(matches!(rep.require(), Err(Error::NotAdmissible(AdmissibilityFailure::Containment))));
    }

    #[test]
    fn overlapping_unequal_disks() {
        let d1 = ConvexBody2::unit_disk();
        let d2 = ConvexBody2::disk(Point2::new(2.5, 0.0), 2.0);
        let rep = common_tangents(&d1, &d2);
        assert!(rep.admissible());
        // external tangent: sin α = (r2 − r1)/dist, normal angle π/2 + α
        let alpha = (1.0f64 / 2.5).asin();
        let [a, b] = rep.require().unwrap();
        let mut th = [a.theta, b.theta];
        th.sort_by(f64::total_cmp);
        assert!((th[0] - (PI / 2.0 + alpha)).abs() < 1e-9);
        assert!((th[1] - (3.0 * PI / 2.0 - alpha)).abs() < 1e-9);
        assert!(rep.tangents.iter().all(|t| !t.separating));
    }
}
