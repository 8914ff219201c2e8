use super::scenario::Scenario;
use crate::error::{Error, Result};
use crate::geometry::{Dir2, Line2, Point2};
use crate::phi::{contraction_bound, phi_body, OrbitGeometry, PhiConfig};
use crate::probes::{ChordPair, Mode};
use crate::roots::bisect_secant;

/// Validation residual above which the data are declared inconsistent.
pub const SEED_RESIDUAL_MAX: f64 = 1e-3;

/// Number of samples used to bracket the seed position.
const SEED_SCAN: usize = 96;

const MAX_STEPS: usize = 200;

/// The two points of `∂K` on the chosen tangent `l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeedSolution {
    pub x0: Point2,
    pub y0: Point2,
    /// Index of `l` in the scenario's tangent pair.
    pub tangent: usize,
    pub geometry: OrbitGeometry,
    /// Distance between `X₀` and the limit of the orbit started on the other tangent, relative to the scale.
    pub residual: f64,
    /// Contraction factor of `l`.
    pub k: f64,
}

/// Known quantities along one common tangent.
struct LineSetup<'a> {
    scn: &'a Scenario,
    j: usize,
    l: Line2,
    p1: Point2,
    delta: f64,
    axis: Dir2,
    /// `+1` when the frame direction `u` points from `p₁` toward `p₂`.
    sigma: f64,
    f1: f64,
    f2: f64,
    scale: f64,
}

impl<'a> LineSetup<'a> {
    fn new(scn: &'a Scenario, j: usize) -> Result<Self> {
        let ct = &scn.tangents[j];
        let (p1, p2) = ct.contacts();
        let axis = Dir2::new(p2 - p1).ok_or_else(|| Error::NoRoot("contacts coincide".into()))?;
        let (f1, f2) = scn.functionals(j)?;
        let sigma = if ct.line.normal.perp().dot(axis.vec()) >= 0.0 { 1.0 } else { -1.0 };
        let delta = p1.dist(p2);
        let scale = delta + f1.abs().max(f2.abs()).powf(1.0 / scn.i);
        Ok(Self { scn, j, l: ct.line, p1, delta, axis, sigma, f1, f2, scale })
    }

    fn pair(&self, a: f64, b: f64) -> f64 {
        let (rp, rm) = if self.sigma > 0.0 { (a, b) } else { (b, a) };
        ChordPair { rho_plus: rp, rho_minus: rm }.power(self.scn.i, self.scn.mode)
    }

    /// `|Y₀p₁|` from the `D1` equation given `|X₀p₁| = a`.
    fn b_of_a(&self, a: f64) -> Option<f64> {
        let i = self.scn.i;
        let rad = match self.scn.mode {
            Mode::Sum => self.f1 - a.powf(i),
            Mode::Diff => a.powf(i) - self.sigma * self.f1,
        };
        if rad < 0.0 {
            return None;
        }
        Some(rad.powf(1.0 / i))
    }

    /// Mismatch of the `D2` equation.
    fn d2_residual(&self, a: f64) -> f64 {
        match self.b_of_a(a) {
            Some(b) => self.pair(a - self.delta, b + self.delta) - self.f2,
            None => f64::NAN,
        }
    }

    fn a_range(&self) -> (f64, f64) {
        let r = self.f1.abs().powf(1.0 / self.scn.i);
        match self.scn.mode {
            Mode::Sum => (self.delta, r),
            Mode::Diff => (self.delta.max(if self.sigma * self.f1 > 0.0 { r } else { 0.0 }), 50.0 * (self.delta + r)),
        }
    }

    fn endpoints(&self, a: f64) -> Option<(Point2, Point2)> {
        let b = self.b_of_a(a)?;
        Some((self.p1 + self.axis * a, self.p1 - self.axis * b))
    }

    /// Maps for the orbit `φ₂⁻¹ ∘ φ₁` hugging `l` near `x`.
    fn maps(&self, x: Point2, y: Point2) -> Result<(PhiConfig, PhiConfig, OrbitGeometry)> {
        let (p1, p2) = self.scn.tangents[self.j].contacts();
        let geom = OrbitGeometry { l: self.l, p1, p2, x0: x, y0: y, margin: 0.0 };
        let (b1, b2) = geom.branches(&self.scn.d1, &self.scn.d2)?;
        let (c1, c2) = self.scn.configs(b1, b2)?;
        let inv2 = c2.with_branch(b2.opposite());
        Ok((c1, inv2, geom))
    }

    /// Runs `q ← φ₂⁻¹(φ₁(q))` until `q` is within `stop·scale` of `l`.
    fn run_to_l(&self, q0: Point2, c1: &PhiConfig, inv2: &PhiConfig, stop: f64) -> Result<Point2> {
        Ok(self.run_to_l_pair(q0, c1, inv2, stop)?.1)
    }

    /// The last two orbit points.
    fn run_to_l_pair(&self, q0: Point2, c1: &PhiConfig, inv2: &PhiConfig, stop: f64) -> Result<(Point2, Point2)> {
        let mut q = q0;
        let mut prev = q0;
        for step in 0..MAX_STEPS {
            if self.l.signed_distance(q).abs() < stop * self.scale {
                return Ok((prev, q));
            }
            prev = q;
            let y = phi_body(q, c1, &self.scn.data1).map_err(|_| Error::OrbitEscaped(step))?;
            q = phi_body(y, inv2, &self.scn.data2).map_err(|_| Error::OrbitEscaped(step))?;
            if !q.is_finite() {
                return Err(Error::OrbitEscaped(step));
            }
        }
        Err(Error::OrbitEscaped(MAX_STEPS))
    }

    /// For `i = 1`: leave `l` from the candidate `Y₀` along the far tangent of `D1`, follow the orbit back to `l`
    /// and compare where it lands with the candidate `X₀`.
    fn closure_residual(&self, a: f64) -> f64 {
        let Some((x, y)) = self.endpoints(a) else { return f64::NAN };
        let run = || -> Result<f64> {
            let (c1, inv2, _) = self.maps(x, y)?;
            let w = phi_body(phi_body(y, &c1, &self.scn.data1)?, &inv2, &self.scn.data2)?;
            let lim = self.run_to_l(w, &c1, &inv2, 1e-12)?;
            Ok(self.axis.dot(lim - self.p1) - a)
        };
        run().unwrap_or(f64::NAN)
    }

    fn roots<F: FnMut(f64) -> f64>(&self, mut f: F) -> Vec<f64> {
        let (lo, hi) = self.a_range();
        if !(hi > lo) {
            return Vec::new();
        }
        let diff = self.scn.mode == Mode::Diff;
        // clustered at both ends for a bounded range, at the lower end for the open difference range
        let xs: Vec<f64> = (0..=SEED_SCAN)
            .map(|k| {
                let t = (k as f64 + 0.5) / (SEED_SCAN + 1) as f64;
                let w = if diff { t * t } else { 0.5 * (1.0 - (std::f64::consts::PI * t).cos()) };
                lo + (hi - lo) * w
            })
            .collect();
        let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let mut out = Vec::new();
        for k in 0..SEED_SCAN {
            let (fa, fb) = (vals[k], vals[k + 1]);
            if fa.is_finite() && fb.is_finite() && fa.signum() != fb.signum() {
                if let Some(r) = bisect_secant(&mut f, xs[k], xs[k + 1], 1e-6 * self.scale, 1e-10 * self.scale) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// Candidate `(X₀, Y₀)` pairs on this tangent.
    fn candidates(&self) -> Result<Vec<(Point2, Point2)>> {
        let i = self.scn.i;
        let roots = if (i - 1.0).abs() < 1e-12 {
            if self.scn.mode == Mode::Diff {
                return Err(Error::NoRoot("difference data at i = 1 leave the position along l free".into()));
            }
            let (lo, hi) = self.a_range();
            let mid = 0.5 * (lo + hi);
            let c = self.d2_residual(mid);
            if !(c.abs() <= 1e-6 * self.f1.abs().max(self.scale)) {
                return Err(Error::NoRoot(format!("chord data of D1 and D2 along l disagree by {c}")));
            }
            self.roots(|a| self.closure_residual(a))
        } else {
            self.roots(|a| self.d2_residual(a))
        };
        let v: Vec<(Point2, Point2)> = roots.into_iter().filter_map(|a| self.endpoints(a)).collect();
        if v.is_empty() {
            return Err(Error::NoRoot(format!("no sign change along tangent {}", self.j)));
        }
        Ok(v)
    }
}

/// Distance from `x` to the line through `a` and `b`, or to `b` when they coincide.
fn secant_gap(a: Point2, b: Point2, x: Point2) -> f64 {
    match Line2::through_points(a, b) {
        Some(line) if a.dist(b) > 1e-14 * (1.0 + b.norm()) => line.signed_distance(x).abs(),
        _ => b.dist(x),
    }
}

/// Finds `∂K ∩ l` from the data on both common tangents.
///
/// Each tangent yields candidates from its own frame data; a candidate on `l` is accepted when the
/// orbit started at the other tangent's candidate settles onto it.
pub fn solve_seed(scn: &Scenario) -> Result<SeedSolution> {
    let mut best: Option<SeedSolution> = None;
    let mut first_err = None;
    for j in scn.candidates() {
        match solve_on(scn, j) {
            Ok(s) => {
                if best.map_or(true, |b| s.k < b.k) {
                    best = Some(s);
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    best.ok_or_else(|| first_err.unwrap_or_else(|| Error::NoRoot("no tangent leaves D1 ∪ D2".into())))
}

/// Seed on tangent `j`, validated against the other tangent.
pub fn solve_on(scn: &Scenario, j: usize) -> Result<SeedSolution> {
    let here = LineSetup::new(scn, j)?;
    let there = LineSetup::new(scn, 1 - j)?;
    let cands = here.candidates()?;
    let others = there.candidates()?;
    // away from i = 1 the normal drift grows along the orbit, so stop early and extrapolate along the last secant
    let stop = if (scn.i - 1.0).abs() < 1e-12 { 1e-12 } else { 1e-5 };
    let mut best: Option<(f64, Point2, Point2)> = None;
    for &(x, y) in &cands {
        let Ok((c1, inv2, _)) = here.maps(x, y) else { continue };
        for &(xo, _) in &others {
            let r = match here.run_to_l_pair(xo, &c1, &inv2, stop) {
                Ok((a, b)) => secant_gap(a, b, x) / here.scale,
                Err(_) => f64::INFINITY,
            };
            if best.map_or(true, |b| r < b.0) {
                best = Some((r, x, y));
            }
        }
    }
    let (r, x0, y0) = best.ok_or_else(|| Error::NoRoot("no candidate pair".into()))?;
    if !(r <= SEED_RESIDUAL_MAX) {
        return Err(Error::NoRoot(format!("residual {r} on tangent {j}")));
    }
    let (p1, p2) = scn.tangents[j].contacts();
    let geometry = OrbitGeometry::new(scn.tangents[j].line, p1, p2, x0, y0)?;
    let k = contraction_bound(geometry.x0, geometry.y0, p1, p2, 0.0)?.k;
    Ok(SeedSolution { x0: geometry.x0, y0: geometry.y0, tangent: j, geometry, residual: r, k })
}


