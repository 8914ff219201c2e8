use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use super::scenario::Scenario;
use crate::error::{Error, Result};
use crate::geometry::polygon::{convex_hull, convex_signed_distance};
use crate::geometry::tangent::{tangent_lines_through, Branch};
use crate::geometry::Point2;
use crate::phi::{phi_body, PhiConfig};
use crate::probes::{fmt_f64, Mode};
use crate::svg::Svg;

/// Relative depth inside the hull beyond which a point is refused.
pub const CONVEXITY_TOL: f64 = 1e-7;

/// Relative distance under which two points count as the same.
pub const DEDUP_TOL: f64 = 1e-9;

/// Relative seed tolerance against the oracle boundary or the data envelope.
pub const SEED_TOL: f64 = 1e-6;

/// The four maps: `φ_j` runs on the left branch of `D_j`, its inverse on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MapKind {
    Phi1,
    Phi1Inverse,
    Phi2,
    Phi2Inverse,
}

impl MapKind {
    pub const ALL: [MapKind; 4] = [MapKind::Phi1, MapKind::Phi1Inverse, MapKind::Phi2, MapKind::Phi2Inverse];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Phi1 => "phi1",
            MapKind::Phi1Inverse => "phi1_inv",
            MapKind::Phi2 => "phi2",
            MapKind::Phi2Inverse => "phi2_inv",
        }
    }

    fn body(self) -> usize {
        match self {
            MapKind::Phi1 | MapKind::Phi1Inverse => 1,
            MapKind::Phi2 | MapKind::Phi2Inverse => 2,
        }
    }

    fn branch(self) -> Branch {
        match self {
            MapKind::Phi1 | MapKind::Phi2 => Branch::Left,
            MapKind::Phi1Inverse | MapKind::Phi2Inverse => Branch::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub id: usize,
    pub parent: Option<usize>,
    pub map: Option<MapKind>,
    pub depth: usize,
}

/// Boundary points with the map that produced each one.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BoundaryCloud {
    pub points: Vec<Point2>,
    pub provenance: Vec<Provenance>,
    /// Candidates refused by the convexity screen.
    pub refused: usize,
}

impl BoundaryCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Counterclockwise convex hull of the cloud.
    pub fn hull(&self) -> Vec<Point2> {
        convex_hull(&self.points)
    }

    /// The cloud and its hull over `D1`, `D2` and the oracle body when known.
    pub fn to_svg(&self, scn: &Scenario) -> String {
        let mut bodies = vec![&scn.d1, &scn.d2];
        if let Some(k) = &scn.oracle {
            bodies.push(k);
        }
        let mut pts = self.points.clone();
        pts.extend(bodies.iter().flat_map(|b| b.polygonize(64)));
        let mut svg = Svg::fit(&pts);
        svg.body(&scn.d1, "steelblue").body(&scn.d2, "steelblue");
        if let Some(k) = &scn.oracle {
            svg.body(k, "gray");
        }
        let mut hull = self.hull();
        if let Some(&first) = hull.first() {
            hull.push(first);
        }
        svg.polyline(&hull, "darkorange").points(&self.points, "crimson", 2.0);
        svg.finish()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("id,x,y,parent,map,depth\n");
        for (p, v) in self.points.iter().zip(&self.provenance) {
            let parent = v.parent.map(|x| x.to_string()).unwrap_or_default();
            let map = v.map.map(|m| m.name()).unwrap_or("seed");
            let _ = writeln!(s, "{},{},{},{},{},{}", v.id, fmt_f64(p.x), fmt_f64(p.y), parent, map, v.depth);
        }
        s
    }
}

/// Image of `q` under one of the four maps.
pub fn apply_map(scn: &Scenario, map: MapKind, q: Point2) -> Result<Point2> {
    let (d, data) = if map.body() == 1 { (&scn.d1, &scn.data1) } else { (&scn.d2, &scn.data2) };
    let cfg = PhiConfig::new(d.clone(), scn.i, scn.mode, map.branch())?;
    phi_body(q, &cfg, data)
}

/// How far `seed` sits from the boundary the scenario's data describe.
///
/// With an oracle body this is the distance to its boundary. Otherwise, in sum mode, the excess of
/// `|QT|^i` over the tabulated functional on the four tangents from `seed`, as a length.
pub fn seed_offset(scn: &Scenario, seed: Point2) -> Result<f64> {
    if let Some(k) = &scn.oracle {
        return Ok(k.boundary_distance(seed));
    }
    if scn.mode == Mode::Diff {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for (d, data) in [(&scn.d1, &scn.data1), (&scn.d2, &scn.data2)] {
        let tp = tangent_lines_through(d, seed)?;
        for tl in [tp.left, tp.right] {
            let f = data.functional(d, &tl, scn.i, scn.mode)?;
            let qt = seed.dist(tl.contact.representative());
            worst = worst.max(qt - f.max(0.0).powf(1.0 / scn.i));
        }
    }
    Ok(worst)
}

/// Breadth-first closure of `seed` under the four maps, up to `budget` points.
pub fn propagate_boundary(scn: &Scenario, seed: Point2, budget: usize) -> Result<BoundaryCloud> {
    let scale = scn.scale();
    let off = seed_offset(scn, seed)?;
    if off > SEED_TOL * scale {
        return Err(Error::SeedOffBoundary(off));
    }
    let mut cloud = BoundaryCloud {
        points: vec![seed],
        provenance: vec![Provenance { id: 0, parent: None, map: None, depth: 0 }],
        refused: 0,
    };
    if budget <= 1 {
        return Ok(cloud);
    }
    let dedup = DEDUP_TOL * scale;
    let inside = CONVEXITY_TOL * scale;
    let mut queue = VecDeque::from([0usize]);
    let mut hull: Vec<Point2> = Vec::new();
    'bfs: while let Some(id) = queue.pop_front() {
        let q = cloud.points[id];
        let depth = cloud.provenance[id].depth;
        for map in MapKind::ALL {
            let Ok(p) = apply_map(scn, map, q) else { continue };
            if !p.is_finite() || cloud.points.iter().any(|&x| x.dist(p) <= dedup) {
                continue;
            }
            if hull.len() >= 3 && convex_signed_distance(&hull, p) < -inside {
                cloud.refused += 1;
                continue;
            }
            let nid = cloud.points.len();
            cloud.points.push(p);
            cloud.provenance.push(Provenance { id: nid, parent: Some(id), map: Some(map), depth: depth + 1 });
            hull = convex_hull(&cloud.points);
            queue.push_back(nid);
            if cloud.points.len() >= budget {
                break 'bfs;
            }
        }
    }
    if cloud.points.len() < budget {
        return Err(Error::FrontierStalled { got: cloud.points.len(), budget });
    }
    screen(&mut cloud, inside);
    Ok(cloud)
}

/// Drops points lying deeper than `tol` inside the hull of the whole cloud.
fn screen(cloud: &mut BoundaryCloud, tol: f64) {
    let hull = cloud.hull();
    if hull.len() < 3 {
        return;
    }
    let keep: Vec<bool> = cloud.points.iter().map(|&p| convex_signed_distance(&hull, p) >= -tol).collect();
    let mut k = keep.iter();
    cloud.points.retain(|_| *k.next().unwrap());
    let mut k = keep.iter();
    cloud.provenance.retain(|_| *k.next().unwrap());
    cloud.refused += keep.iter().filter(|x| !**x).count();
}
