use geo::{BooleanOps, LineString, MultiPolygon, Polygon};

use super::nu::Region2;
use crate::geometry::polygon::signed_area;
use crate::geometry::{ConvexBody2, Line2, Point2, Side};

/// Boundary samples used when polygonizing smooth bodies.
pub const SYMDIFF_RESOLUTION: usize = 4096;

/// A connected piece of `K △ L` on one side of the reference line.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub region: Region2,
    pub side: Side,
}

fn to_geo(ring: &[Point2]) -> Polygon<f64> {
    Polygon::new(LineString::from(ring.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>()), vec![])
}

fn ring_points(ls: &LineString<f64>) -> Vec<Point2> {
    let mut v: Vec<Point2> = ls.points().map(|p| Point2::new(p.x(), p.y())).collect();
    if v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    v
}

fn half_plane(l: &Line2, side: Side, radius: f64) -> Polygon<f64> {
    let n = match side {
        Side::Positive => l.normal.vec(),
        Side::Negative => -l.normal.vec(),
    };
    let d = l.direction().vec();
    let f = l.foot();
    to_geo(&[f - d * radius, f + d * radius, f + d * radius + n * radius, f - d * radius + n * radius])
}

/// Connected components of `K △ L` split by `l`, at `n` boundary samples per body.
pub fn symdiff_components_at(k: &ConvexBody2, l_body: &ConvexBody2, l: &Line2, n: usize) -> Vec<Component> {
    let pk = k.polygonize(n);
    let pl = l_body.polygonize(n);
    let scale = pk.iter().chain(pl.iter()).map(|p| p.norm()).fold(l.offset.abs(), f64::max) + 1.0;
    let floor = 1e-12 * scale * scale;
    let xor: MultiPolygon<f64> = to_geo(&pk).xor(&to_geo(&pl));
    let mut out = Vec::new();
    for side in [Side::Positive, Side::Negative] {
        let part = xor.intersection(&half_plane(l, side, 4.0 * scale));
        for poly in part.0 {
            let boundary = ring_points(poly.exterior());
            if signed_area(&boundary).abs() <= floor {
                continue;
            }
            let holes = poly.interiors().iter().map(ring_points).collect();
            out.push(Component { region: Region2 { boundary, holes, reference: *l }, side });
        }
    }
    out
}

pub fn symdiff_components(k: &ConvexBody2, l_body: &ConvexBody2, l: &Line2) -> Vec<Component> {
    symdiff_components_at(k, l_body, l, SYMDIFF_RESOLUTION)
}
