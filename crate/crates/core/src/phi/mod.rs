//! Tangent-chord maps, the point maps through a fixed interior point, and their orbits.

mod orbit;
mod rotation;

pub use orbit::{
    contraction_bound, orbit, Contraction, OrbitGeometry, OrbitStop, OrbitTrace,
};
pub use rotation::{max_angular_gap, phi_disk_rotation, rotation_orbit, rotation_period, rotation_point};

use crate::error::{Error, Result};
use crate::geometry::tangent::{tangent_lines_through, Branch, TangentLine};
use crate::geometry::{ConvexBody2, Dir2, Point2};
use crate::probes::{chord_split, ChordPair, DataTable, Mode, ProbeKind, TangentFrame};

/// Relative slack below zero tolerated in a radicand before it counts as negative.
pub const RADICAND_SLACK: f64 = 1e-12;

/// Where the section functional comes from: the body itself or a measured table.
#[derive(Clone, Debug, PartialEq)]
pub enum ChordDataSource {
    Oracle(ConvexBody2),
    Table(DataTable),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiConfig {
    pub inner: ConvexBody2,
    pub i: f64,
    pub mode: Mode,
    pub branch: Branch,
}

impl PhiConfig {
    pub fn new(inner: ConvexBody2, i: f64, mode: Mode, branch: Branch) -> Result<Self> {
        if !(i > 0.0) {
            return Err(Error::InvalidPower(i));
        }
        Ok(Self { inner, i, mode, branch })
    }

    pub fn with_branch(&self, branch: Branch) -> Self {
        Self { branch, ..self.clone() }
    }
}

impl ChordDataSource {
    /// `ρ₊^i ± ρ₋^i` at the frame of a tangent line of `d`, with `+` along `ξ` turned by `+π/2`.
    pub fn functional(&self, d: &ConvexBody2, tl: &TangentLine, i: f64, mode: Mode) -> Result<f64> {
        match self {
            ChordDataSource::Oracle(k) => {
                let xi = tl.line.normal;
                let frame = TangentFrame {
                    theta: tl.theta,
                    xi,
                    p: tl.contact.representative(),
                    u: xi.perp(),
                    line: tl.line,
                };
                let _ = d;
                let pair = chord_split(k, &frame).ok_or(Error::InnerNotContained(tl.theta))?;
                Ok(pair.power(i, mode))
            }
            ChordDataSource::Table(t) => table_functional(t, tl.theta, i, mode),
        }
    }
}

fn table_functional(t: &DataTable, theta: f64, i: f64, mode: Mode) -> Result<f64> {
    match t.kind {
        ProbeKind::Chord | ProbeKind::PointChord => {
            let pair = ChordPair { rho_plus: t.interp(0, theta), rho_minus: t.interp(1, theta) };
            Ok(pair.power(i, mode))
        }
        ProbeKind::ChordSum | ProbeKind::ChordDiff => {
            let want = if mode == Mode::Sum { ProbeKind::ChordSum } else { ProbeKind::ChordDiff };
            if t.kind != want {
                return Err(Error::TableMismatch(format!("table holds {}, map needs {}", t.kind.name(), want.name())));
            }
            match t.power {
                Some(p) if (p - i).abs() <= 1e-12 * i.max(1.0) => Ok(t.interp(0, theta)),
                other => Err(Error::TableMismatch(format!("table power {other:?}, map power {i}"))),
            }
        }
        other => Err(Error::TableMismatch(format!("{} table cannot drive a chord map", other.name()))),
    }
}

/// `s` solving `|QT|^i ± s^i = F` (sum) or `|QT|^i − s^i = d` (difference).
fn solve_split(qt: f64, functional: f64, i: f64, mode: Mode, signed: f64) -> Result<f64> {
    let lhs = qt.powf(i);
    let rad = match mode {
        Mode::Sum => functional - lhs,
        Mode::Diff => lhs - signed * functional,
    };
    let slack = RADICAND_SLACK * lhs.max(functional.abs()).max(1.0);
    if rad < -slack {
        return Err(match mode {
            Mode::Sum => Error::DataExhausted { lhs, functional },
            Mode::Diff => Error::NegativePower(rad),
        });
    }
    Ok(rad.max(0.0).powf(1.0 / i))
}

/// Image of `Q` under the tangent-chord map of `cfg.inner` on `cfg.branch`.
pub fn phi_body(q: Point2, cfg: &PhiConfig, data: &ChordDataSource) -> Result<Point2> {
    Ok(phi_body_step(q, cfg, data)?.0)
}

/// Inverse map: the same construction on the opposite branch.
pub fn phi_body_inverse(q: Point2, cfg: &PhiConfig, data: &ChordDataSource) -> Result<Point2> {
    Ok(phi_body_step(q, &cfg.with_branch(cfg.branch.opposite()), data)?.0)
}

/// The image together with the tangent line it travelled along.
pub fn phi_body_step(q: Point2, cfg: &PhiConfig, data: &ChordDataSource) -> Result<(Point2, TangentLine)> {
    let pair = tangent_lines_through(&cfg.inner, q)?;
    let tl = *pair.get(cfg.branch);
    let t = tl.contact.representative();
    let qt = q.dist(t);
    let dir = Dir2::new(q - t).ok_or(Error::PointInsideBody(q.x, q.y))?;
    let u = tl.line.normal.perp();
    // +1 when Q sits on the +u side of the contact
    let signed = if u.dot(dir.vec()) >= 0.0 { 1.0 } else { -1.0 };
    let f = data.functional(&cfg.inner, &tl, cfg.i, cfg.mode)?;
    let s = solve_split(qt, f, cfg.i, cfg.mode, signed)?;
    Ok((t - dir * s, tl))
}

/// Map through the fixed point `p`: `φ(Q)` on line `(Q, p)` beyond `p`.
///
/// `data` is an oracle body or a point-chord table for `p`.
pub fn phi_point(q: Point2, p: Point2, i: f64, mode: Mode, data: &ChordDataSource) -> Result<Point2> {
    if !(i > 0.0) {
        return Err(Error::InvalidPower(i));
    }
    let dir = Dir2::new(q - p).ok_or(Error::DegenerateDirection)?;
    if q.dist(p) <= 1e-15 * (1.0 + p.norm()) {
        return Err(Error::DegenerateDirection);
    }
    let f = match data {
        ChordDataSource::Oracle(k) => {
            if !k.contains(p, -1e-12) {
                return Err(Error::PointOutsideBody(p.x, p.y));
            }
            ChordPair { rho_plus: k.radial(p, dir), rho_minus: k.radial(p, -dir) }.power(i, mode)
        }
        ChordDataSource::Table(t) => {
            if t.kind != ProbeKind::PointChord {
                return Err(Error::TableMismatch(format!("expected a point_chord table, got {}", t.kind.name())));
            }
            table_functional(t, dir.vec().angle(), i, mode)?
        }
    };
    let s = solve_split(q.dist(p), f, i, mode, 1.0)?;
    Ok(p - dir * s)
}

/// The point map is its own inverse.
pub fn phi_point_inverse(q: Point2, p: Point2, i: f64, mode: Mode, data: &ChordDataSource) -> Result<Point2> {
    phi_point(q, p, i, mode, data)
}
