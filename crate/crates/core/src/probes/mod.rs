//! Section data along supporting lines of an inner body and through fixed points.

mod cone;
mod revolution;
mod table;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

pub use cone::{vertex_cone, vertex_cone_lookup, vertex_cone_probe};
pub use revolution::{revolution_section_area, Plane3, Profile};
pub use table::{fmt_f64, parse_f64, DataTable, ProbeKind};

use crate::error::{Error, Result};
use crate::geometry::{
    body::EDGE_NORMAL_EXCLUSION, point::wrap_tau, ConvexBody2, Dir2, Line2, Point2, Side,
};

/// Smallest grid accepted by the tabulating probes.
pub const MIN_GRID: usize = 8;

/// Smallest cap table accepted for differentiation.
pub const MIN_DERIVATIVE_GRID: usize = 256;

/// Supporting line of an inner body with outer normal `xi` touching at `p`.
///
/// `u` is `xi` turned by `+π/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentFrame {
    pub theta: f64,
    pub xi: Dir2,
    pub p: Point2,
    pub u: Dir2,
    pub line: Line2,
}

impl TangentFrame {
    pub fn new(d: &ConvexBody2, theta: f64) -> Self {
        let xi = Dir2::from_angle(theta);
        let p = d.contact_set(theta).representative();
        Self { theta: wrap_tau(theta), xi, p, u: xi.perp(), line: Line2::new(xi, d.support(theta)) }
    }

    /// Frame through a point, for point probes: `u` is the probe direction.
    pub fn at_point(p: Point2, dir_angle: f64) -> Self {
        let u = Dir2::from_angle(dir_angle);
        let xi = -u.perp();
        Self { theta: wrap_tau(dir_angle), xi, p, u, line: Line2::through(p, xi) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Sum,
    Diff,
}

/// Distances from the split point to the two chord endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChordPair {
    pub rho_plus: f64,
    pub rho_minus: f64,
}

impl ChordPair {
    pub fn length(&self) -> f64 {
        self.rho_plus + self.rho_minus
    }

    /// `ρ₊^i ± ρ₋^i`.
    pub fn power(&self, i: f64, mode: Mode) -> f64 {
        let a = self.rho_plus.powf(i);
        let b = self.rho_minus.powf(i);
        match mode {
            Mode::Sum => a + b,
            Mode::Diff => a - b,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Payload {
    Chord(ChordPair),
    CapArea(f64),
    HalfPlaneVolume(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeRecord {
    pub frame: TangentFrame,
    pub payload: Payload,
}

pub fn power_functional(record: &ProbeRecord, i: f64, mode: Mode) -> Result<f64> {
    if !(i > 0.0) {
        return Err(Error::InvalidPower(i));
    }
    match record.payload {
        Payload::Chord(c) => Ok(c.power(i, mode)),
        _ => Err(Error::TableMismatch("power functional needs a chord record".into())),
    }
}

fn uniform_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| TAU * k as f64 / n as f64)
}

fn check_grid(n: usize, need: usize) -> Result<()> {
    if n < need {
        Err(Error::GridTooCoarse { got: n, need })
    } else {
        Ok(())
    }
}

/// Collapses consecutive skipped angles into `(lo, hi)` gaps between kept nodes.
fn record_gaps(table: &mut DataTable, skipped: &[bool], n: usize) {
    let node = |k: usize| TAU * k as f64 / n as f64;
    let mut k = 0;
    while k < n {
        if skipped[k] {
            let start = k;
            while k < n && skipped[k] {
                k += 1;
            }
            let lo = node((start + n - 1) % n);
            let hi = node(k % n);
            table.excluded.push((lo, hi));
        } else {
            k += 1;
        }
    }
}

/// One tangent-chord measurement at frame angle `theta`.
pub fn tangent_chord_record(k: &ConvexBody2, d: &ConvexBody2, theta: f64) -> Result<ProbeRecord> {
    let frame = TangentFrame::new(d, theta);
    let pair = chord_split(k, &frame).ok_or(Error::InnerNotContained(frame.theta))?;
    Ok(ProbeRecord { frame, payload: Payload::Chord(pair) })
}

pub(crate) fn chord_split(k: &ConvexBody2, frame: &TangentFrame) -> Option<ChordPair> {
    let (a, b) = k.chord(&frame.line)?;
    // chord() orders along -u, so `a` is the +u end
    let tol = 1e-9 * (1.0 + frame.p.norm());
    let sa = frame.u.dot(a - frame.p);
    let sb = frame.u.dot(b - frame.p);
    if sa < -tol || sb > tol {
        return None;
    }
    Some(ChordPair { rho_plus: a.dist(frame.p), rho_minus: b.dist(frame.p) })
}

fn skip_frame(d: &ConvexBody2, theta: f64) -> bool {
    d.near_edge_normal(theta, EDGE_NORMAL_EXCLUSION)
}

/// `ρ₊, ρ₋` of `K` measured from the contact point of each supporting line of `D`.
pub fn tangent_chord_probe(k: &ConvexBody2, d: &ConvexBody2, grid_size: usize) -> Result<DataTable> {
    check_grid(grid_size, MIN_GRID)?;
    let mut t = DataTable::new(ProbeKind::Chord, "K", "D");
    let mut skipped = vec![false; grid_size];
    for (j, th) in uniform_grid(grid_size).enumerate() {
        if skip_frame(d, th) {
            skipped[j] = true;
            continue;
        }
        let rec = tangent_chord_record(k, d, th)?;
        if let Payload::Chord(c) = rec.payload {
            t.push(th, vec![c.rho_plus, c.rho_minus]);
        }
    }
    record_gaps(&mut t, &skipped, grid_size);
    Ok(t)
}

/// Collapses a chord table to the single power functional `ρ₊^i ± ρ₋^i`.
pub fn functional_table(chords: &DataTable, i: f64, mode: Mode) -> Result<DataTable> {
    if chords.kind != ProbeKind::Chord {
        return Err(Error::TableMismatch(format!("expected a chord table, got {}", chords.kind.name())));
    }
    if !(i > 0.0) {
        return Err(Error::InvalidPower(i));
    }
    let kind = match mode {
        Mode::Sum => ProbeKind::ChordSum,
        Mode::Diff => ProbeKind::ChordDiff,
    };
    let mut t = DataTable::new(kind, chords.body.clone(), chords.inner.clone());
    t.power = Some(i);
    t.excluded = chords.excluded.clone();
    for (th, v) in chords.theta.iter().zip(&chords.values) {
        t.push(*th, vec![ChordPair { rho_plus: v[0], rho_minus: v[1] }.power(i, mode)]);
    }
    Ok(t)
}

/// Area of `K ∩ H⁺` where `H⁺` is the side of the supporting line away from `D`.
pub fn cap_area(k: &ConvexBody2, d: &ConvexBody2, theta: f64) -> Result<f64> {
    let frame = TangentFrame::new(d, theta);
    if !k.contains(frame.p, 1e-12) {
        return Err(Error::InnerNotContained(frame.theta));
    }
    Ok(k.halfplane_area(&frame.line, Side::Positive))
}

pub fn cap_area_probe(k: &ConvexBody2, d: &ConvexBody2, grid_size: usize) -> Result<DataTable> {
    check_grid(grid_size, MIN_GRID)?;
    let mut t = DataTable::new(ProbeKind::Cap, "K", "D");
    let mut skipped = vec![false; grid_size];
    for (j, th) in uniform_grid(grid_size).enumerate() {
        if skip_frame(d, th) {
            skipped[j] = true;
            continue;
        }
        t.push(th, vec![cap_area(k, d, th)?]);
    }
    record_gaps(&mut t, &skipped, grid_size);
    Ok(t)
}

/// `(ρ₊² − ρ₋²)/2` as the frame-angle derivative of the cap area.
///
/// Central differences at the grid spacing `h` and `2h`, combined by Richardson extrapolation.
pub fn cap_derivative_to_rho2_diff(table: &DataTable, d: &ConvexBody2, theta: f64) -> Result<f64> {
    if table.kind != ProbeKind::Cap {
        return Err(Error::TableMismatch(format!("expected a cap table, got {}", table.kind.name())));
    }
    check_grid(table.len(), MIN_DERIVATIVE_GRID)?;
    if skip_frame(d, theta) {
        return Err(Error::NotDifferentiable(theta));
    }
    let h = TAU / table.len() as f64;
    let a = |x: f64| table.interp(0, x);
    let d1 = (a(theta + h) - a(theta - h)) / (2.0 * h);
    let d2 = (a(theta + 2.0 * h) - a(theta - 2.0 * h)) / (4.0 * h);
    Ok((4.0 * d1 - d2) / 3.0)
}

/// One point-chord measurement: `ρ_{K,p}(v)` and `ρ_{K,p}(−v)` for `v` at angle `theta`.
pub fn point_chord_record(k: &ConvexBody2, p: Point2, theta: f64) -> ProbeRecord {
    let v = Dir2::from_angle(theta);
    ProbeRecord {
        frame: TangentFrame::at_point(p, theta),
        payload: Payload::Chord(ChordPair { rho_plus: k.radial(p, v), rho_minus: k.radial(p, -v) }),
    }
}

fn require_interior(k: &ConvexBody2, p: Point2) -> Result<()> {
    if k.contains(p, -1e-12) {
        Ok(())
    } else {
        Err(Error::PointOutsideBody(p.x, p.y))
    }
}

pub fn point_chord_probe(k: &ConvexBody2, p: Point2, grid_size: usize) -> Result<DataTable> {
    check_grid(grid_size, MIN_GRID)?;
    require_interior(k, p)?;
    let mut t = DataTable::new(ProbeKind::PointChord, "K", "p");
    for th in uniform_grid(grid_size) {
        if let Payload::Chord(c) = point_chord_record(k, p, th).payload {
            t.push(th, vec![c.rho_plus, c.rho_minus]);
        }
    }
    Ok(t)
}

/// Area of `K ∩ {⟨x − p, v⟩ ≥ 0}`.
pub fn halfspace_volume(k: &ConvexBody2, p: Point2, theta: f64) -> f64 {
    k.halfplane_area(&Line2::through(p, Dir2::from_angle(theta)), Side::Positive)
}

pub fn halfspace_volume_probe(k: &ConvexBody2, p: Point2, grid_size: usize) -> Result<DataTable> {
    check_grid(grid_size, MIN_GRID)?;
    require_interior(k, p)?;
    let mut t = DataTable::new(ProbeKind::HalfSpace, "K", "p");
    for th in uniform_grid(grid_size) {
        t.push(th, vec![halfspace_volume(k, p, th)]);
    }
    Ok(t)
}
