use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::geometry::ConvexBody2;
use crate::probes::{fmt_f64, functional_table, tangent_chord_probe, Mode};

/// Support-function samples used for the Hausdorff distance.
pub const HAUSDORFF_GRID: usize = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Data agree on both inner bodies within tolerance.
    Consistent,
    /// Data differ somewhere, so the bodies differ.
    Distinct,
    /// Only one inner body was probed: agreement proves nothing.
    EvidenceOnly,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Distinct => "distinct",
            Verdict::EvidenceOnly => "evidence_only",
        }
    }
}

/// Functional discrepancy over the frames of one inner body.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BodyDiscrepancy {
    pub inner: String,
    pub max: f64,
    /// `(∫ |F_K − F_L|² dθ)^{1/2}` by the rectangle rule.
    pub l2: f64,
    /// Frame angle of the largest discrepancy.
    pub worst_theta: f64,
    pub frames: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub bodies: Vec<BodyDiscrepancy>,
    pub max: f64,
    pub l2: f64,
    pub hausdorff: f64,
    pub tol: f64,
    pub verdict: Verdict,
}

impl DiscrepancyReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("inner,max,l2,worst_theta,frames\n");
        for b in &self.bodies {
            let _ = writeln!(s, "{},{},{},{},{}", b.inner, fmt_f64(b.max), fmt_f64(b.l2), fmt_f64(b.worst_theta), b.frames);
        }
        let _ = writeln!(s, "# max={} l2={} hausdorff={} tol={} verdict={}", fmt_f64(self.max), fmt_f64(self.l2),
            fmt_f64(self.hausdorff), fmt_f64(self.tol), self.verdict.name());
        s
    }
}

/// `max_θ |h_K(θ) − h_L(θ)|`.
pub fn hausdorff_distance(k: &ConvexBody2, l: &ConvexBody2) -> f64 {
    (0..HAUSDORFF_GRID)
        .map(|j| {
            let t = TAU * j as f64 / HAUSDORFF_GRID as f64;
            (k.support(t) - l.support(t)).abs()
        })
        .fold(0.0, f64::max)
}

fn body_discrepancy(
    k: &ConvexBody2,
    l: &ConvexBody2,
    d: &ConvexBody2,
    name: &str,
    i: f64,
    mode: Mode,
    grid: usize,
) -> Result<BodyDiscrepancy> {
    let a = functional_table(&tangent_chord_probe(k, d, grid)?, i, mode)?;
    let b = functional_table(&tangent_chord_probe(l, d, grid)?, i, mode)?;
    let mut max = 0.0f64;
    let mut worst_theta = 0.0;
    let mut sq = 0.0;
    for (j, (va, vb)) in a.values.iter().zip(&b.values).enumerate() {
        let e = (va[0] - vb[0]).abs();
        if e > max {
            max = e;
            worst_theta = a.theta[j];
        }
        sq += e * e;
    }
    let l2 = (sq * TAU / grid as f64).sqrt();
    Ok(BodyDiscrepancy { inner: name.to_string(), max, l2, worst_theta, frames: a.len() })
}

fn report(bodies: Vec<BodyDiscrepancy>, hausdorff: f64, tol: f64, single: bool) -> DiscrepancyReport {
    let max = bodies.iter().map(|b| b.max).fold(0.0, f64::max);
    let l2 = bodies.iter().map(|b| b.l2 * b.l2).sum::<f64>().sqrt();
    let verdict = if max >= tol {
        Verdict::Distinct
    } else if single {
        Verdict::EvidenceOnly
    } else {
        Verdict::Consistent
    };
    DiscrepancyReport { bodies, max, l2, hausdorff, tol, verdict }
}

/// Compares the tangent data of `k` and `l` over the frames of both inner bodies.
///
/// The four tables are computed on separate threads.
#[allow(clippy::too_many_arguments)]
pub fn verify_uniqueness(
    k: &ConvexBody2,
    l: &ConvexBody2,
    d1: &ConvexBody2,
    d2: &ConvexBody2,
    i: f64,
    mode: Mode,
    grid: usize,
    tol: f64,
) -> Result<DiscrepancyReport> {
    let (r1, r2, h) = std::thread::scope(|s| {
        let a = s.spawn(|| body_discrepancy(k, l, d1, "D1", i, mode, grid));
        let b = s.spawn(|| body_discrepancy(k, l, d2, "D2", i, mode, grid));
        let h = hausdorff_distance(k, l);
        (a.join().expect("probe thread"), b.join().expect("probe thread"), h)
    });
    Ok(report(vec![r1?, r2?], h, tol, false))
}

/// The same comparison over a single inner body; never reports `Consistent`.
pub fn verify_single(
    k: &ConvexBody2,
    l: &ConvexBody2,
    d: &ConvexBody2,
    i: f64,
    mode: Mode,
    grid: usize,
    tol: f64,
) -> Result<DiscrepancyReport> {
    let b = body_discrepancy(k, l, d, "D", i, mode, grid)?;
    Ok(report(vec![b], hausdorff_distance(k, l), tol, true))
}
