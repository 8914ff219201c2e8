use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::body::segment_area;
use crate::geometry::{ConvexBody2, Dir2, Point2};
use crate::phi::{max_angular_gap, rotation_orbit};
use crate::probes::{cap_derivative_to_rho2_diff, DataTable, ProbeKind};
use crate::roots::bisect;

/// Relative spread of the cap areas under which they count as constant.
pub const CAP_CONSTANCY_TOL: f64 = 1e-9;

/// Relative residual of the disk fit under which the body counts as a disk.
pub const DISK_FIT_TOL: f64 = 1e-8;

/// Steps of the rotation orbit used for the density check.
pub const ROTATION_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DiskVerdict {
    Disk { center: Point2, radius: f64 },
    /// The frame where the cap area strays furthest from its mean.
    NotDisk { witness_theta: f64, deviation: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiskReport {
    pub verdict: DiskVerdict,
    /// `max |A − mean| / mean` over the table.
    pub cap_deviation: f64,
    /// Largest `|ρ₊² − ρ₋²|/2` recovered from the table.
    pub rho2_max: f64,
    /// `max |A − A_fit| / mean` of the fitted disk.
    pub fit_residual: f64,
    /// Rotation number `r` and the largest angular gap of its orbit, when the caps are constant.
    pub rotation: Option<(f64, f64)>,
}

fn disk_of(d: &ConvexBody2) -> Result<(Point2, f64)> {
    match d {
        ConvexBody2::Disk { center, radius } => Ok((*center, *radius)),
        _ => Err(Error::InvalidBody("disk detection needs a disk inner body".into())),
    }
}

/// Radius `R` of a disk concentric with the inner one whose caps have area `a`.
fn radius_for_cap(a: f64, rd: f64) -> Option<f64> {
    let mut hi = 2.0 * rd;
    while segment_area(hi, rd) < a {
        hi *= 2.0;
        if !hi.is_finite() {
            return None;
        }
    }
    bisect(|r| segment_area(r, rd) - a, rd, hi, 1e-15 * hi)
}

/// Levenberg–Marquardt fit of `A(ξ) = segment(R, h_D(ξ) − ⟨c, ξ⟩)`.
fn fit_disk(table: &DataTable, d: &ConvexBody2, c0: Point2, r0: f64) -> (Point2, f64, f64) {
    let data: Vec<(Dir2, f64, f64)> =
        table.theta.iter().zip(&table.values).map(|(&t, v)| (Dir2::from_angle(t), d.support(t), v[0])).collect();
    let resid = |c: Point2, r: f64| -> f64 {
        data.iter().map(|&(xi, h, a)| (segment_area(r, h - xi.dot(c)) - a).powi(2)).sum()
    };
    let (mut c, mut r) = (c0, r0);
    let mut cost = resid(c, r);
    let mut mu = 1e-3;
    for _ in 0..200 {
        // normal equations for (cx, cy, R)
        let mut jtj = [[0.0f64; 3]; 3];
        let mut jtr = [0.0f64; 3];
        for &(xi, h, a) in &data {
            let dd = (h - xi.dot(c)).clamp(-r, r);
            let s = (r * r - dd * dd).max(0.0).sqrt();
            let da_dd = -2.0 * s;
            let row = [-da_dd * xi.x(), -da_dd * xi.y(), 2.0 * r * (dd / r).acos()];
            let e = segment_area(r, h - xi.dot(c)) - a;
            for p in 0..3 {
                jtr[p] += row[p] * e;
                for q in 0..3 {
                    jtj[p][q] += row[p] * row[q];
                }
            }
        }
        let mut improved = false;
        for _ in 0..30 {
            let mut m = jtj;
            for (p, row) in m.iter_mut().enumerate() {
                row[p] += mu * jtj[p][p].max(1e-300);
            }
            let Some(step) = solve3(m, jtr) else { break };
            let nc = Point2::new(c.x - step[0], c.y - step[1]);
            let nr = r - step[2];
            if nr > 0.0 {
                let nc_cost = resid(nc, nr);
                if nc_cost < cost {
                    let done = (cost - nc_cost) <= 1e-30 * cost.max(1e-300) || step.iter().all(|s| s.abs() < 1e-15 * r);
                    c = nc;
                    r = nr;
                    cost = nc_cost;
                    mu = (mu * 0.3).max(1e-12);
                    improved = true;
                    if done {
                        return (c, r, cost);
                    }
                    break;
                }
            }
            mu *= 10.0;
        }
        if !improved {
            break;
        }
    }
    (c, r, cost)
}

fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&m);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut mk = m;
        for r in 0..3 {
            mk[r][k] = b[r];
        }
        *o = det(&mk) / d;
    }
    Some(out)
}

/// Decides from a complete cap-area table whether the outer body is a disk.
pub fn detect_disk(table: &DataTable, d: &ConvexBody2) -> Result<DiskReport> {
    if table.kind != ProbeKind::Cap {
        return Err(Error::IncompleteTable(format!("expected a cap table, got {}", table.kind.name())));
    }
    if !table.is_periodic() || !table.excluded.is_empty() || table.len() < 16 {
        return Err(Error::IncompleteTable("cap table must cover every frame".into()));
    }
    let (dc, rd) = disk_of(d)?;
    let caps = table.column(0);
    let mean = caps.iter().sum::<f64>() / caps.len() as f64;
    let (mut worst, mut witness) = (0.0f64, table.theta[0]);
    for (t, a) in table.theta.iter().zip(&caps) {
        if (a - mean).abs() > worst {
            worst = (a - mean).abs();
            witness = *t;
        }
    }
    let cap_deviation = worst / mean.abs().max(1e-300);
    let rho2_max = table
        .theta
        .iter()
        .filter_map(|&t| cap_derivative_to_rho2_diff(table, d, t).ok())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let r0 = radius_for_cap(mean, rd).ok_or_else(|| Error::IncompleteTable("cap areas out of range".into()))?;
    if cap_deviation <= CAP_CONSTANCY_TOL {
        // concentric: the rotation orbit with r = √(R² − t²)/t fills the boundary or closes up
        let r = (r0 * r0 - rd * rd).sqrt() / rd;
        let gap = max_angular_gap(&rotation_orbit(0.0, r, ROTATION_STEPS));
        return Ok(DiskReport {
            verdict: DiskVerdict::Disk { center: dc, radius: r0 },
            cap_deviation,
            rho2_max,
            fit_residual: 0.0,
            rotation: Some((r, gap)),
        });
    }
    let (c, r, _) = fit_disk(table, d, dc, r0);
    let fit_residual = table
        .theta
        .iter()
        .zip(&caps)
        .map(|(&t, a)| (segment_area(r, d.support(t) - Dir2::from_angle(t).dot(c)) - a).abs())
        .fold(0.0f64, f64::max)
        / mean;
    let verdict = if fit_residual <= DISK_FIT_TOL {
        DiskVerdict::Disk { center: c, radius: r }
    } else {
        DiskVerdict::NotDisk { witness_theta: witness, deviation: worst }
    };
    Ok(DiskReport { verdict, cap_deviation, rho2_max, fit_residual, rotation: None })
}
