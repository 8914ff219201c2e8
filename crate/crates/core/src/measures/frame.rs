use std::f64::consts::FRAC_PI_2;

use super::lemma::Lemma32Frame;
use super::nu::Region2;
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody2, Dir2, Line2, Point2};
use crate::quadrature::{adaptive_simpson, GaussLegendre};

/// Tangent lines of `d` tilted by `θ` from a reference tangent, with points `c(θ) + s·w(θ)`, `s > 0`.
///
/// The reference line has outer normal `base` and `w(0) = axis`; the map `(θ, s)` has Jacobian `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentChart {
    pub d: ConvexBody2,
    pub base: f64,
    pub axis: Dir2,
    /// `+1` when increasing `θ` turns the normal counterclockwise.
    pub orient: f64,
}

impl TangentChart {
    /// Chart whose reference line supports `d` with outer normal `base`, opening toward `axis`.
    pub fn new(d: ConvexBody2, base: f64, axis: Dir2) -> Self {
        let n = Dir2::from_angle(base);
        let orient = if axis.vec().cross(n.vec()) >= 0.0 { 1.0 } else { -1.0 };
        Self { d, base, axis, orient }
    }

    pub fn reference(&self) -> Line2 {
        self.d.supporting_line(self.base)
    }

    pub fn normal_angle(&self, theta: f64) -> f64 {
        self.base + self.orient * theta
    }

    pub fn contact(&self, theta: f64) -> Point2 {
        self.d.boundary_point(self.normal_angle(theta))
    }

    pub fn w(&self, theta: f64) -> Dir2 {
        Dir2::from_angle(self.axis.vec().angle() + self.orient * theta)
    }

    pub fn point(&self, theta: f64, s: f64) -> Point2 {
        self.contact(theta) + self.w(theta) * s
    }

    /// Distance from the contact to the boundary of `k` along `w`.
    pub fn rho(&self, k: &ConvexBody2, theta: f64) -> Result<f64> {
        let c = self.contact(theta);
        if !k.contains(c, 1e-12) {
            return Err(Error::ChartOverflow(format!("contact at {theta} lies outside the body")));
        }
        let r = k.radial(c, self.w(theta));
        if r.is_finite() && r >= 0.0 {
            Ok(r)
        } else {
            Err(Error::ChartOverflow(format!("no chord at {theta}")))
        }
    }

    /// Lemma frame at the reference contact with origin `depth` inside along the normal.
    pub fn lemma_frame(&self, depth: f64) -> Result<Lemma32Frame> {
        Lemma32Frame::at_normal(self.d.clone(), self.base, depth)
    }

    fn check_range(&self, range: (f64, f64)) -> Result<()> {
        let (a, b) = range;
        if !(a < b && a > -FRAC_PI_2 && b < FRAC_PI_2) {
            return Err(Error::ChartOverflow(format!("[{a}, {b}]")));
        }
        Ok(())
    }

    /// Polygon of the region between the two boundaries over `range`, `n` samples per arc.
    pub fn region(&self, k: &ConvexBody2, l: &ConvexBody2, range: (f64, f64), n: usize) -> Result<Region2> {
        self.check_range(range)?;
        let mut outer = Vec::with_capacity(2 * n + 2);
        let mut inner = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let t = range.0 + (range.1 - range.0) * j as f64 / n as f64;
            outer.push(self.point(t, self.rho(k, t)?));
            inner.push(self.point(t, self.rho(l, t)?));
        }
        inner.reverse();
        outer.extend(inner);
        Ok(Region2::new(outer, self.reference()))
    }
}

/// `ν_i` of the region between `∂K` and `∂L` swept by the chart over `range`.
pub fn tangent_frame_integral(
    k: &ConvexBody2,
    l: &ConvexBody2,
    chart: &TangentChart,
    i: f64,
    range: (f64, f64),
) -> Result<f64> {
    if !(i > 0.0) {
        return Err(Error::InvalidPower(i));
    }
    chart.check_range(range)?;
    let reference = chart.reference();
    let mut err = None;
    let mut inner = |t: f64| -> f64 {
        let (rk, rl) = match (chart.rho(k, t), chart.rho(l, t)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                err.get_or_insert(e);
                return 0.0;
            }
        };
        if rk == rl {
            return 0.0;
        }
        let (lo, hi) = if rk < rl { (rk, rl) } else { (rl, rk) };
        let c = chart.contact(t);
        let w = chart.w(t);
        let f = |s: f64| reference.signed_distance(c + w * s).abs().powf(i - 2.0) * s;
        GaussLegendre::g20().composite(lo, hi, 4, f)
    };
    let scale = inner(0.5 * (range.0 + range.1)).abs().max(1e-300) * (range.1 - range.0);
    let v = adaptive_simpson(&mut inner, range.0, range.1, 1e-11 * scale, 30);
    match err {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// Lower and upper bracket of `ν_i(E)` from the `C sin θ` comparison, over `range`.
pub fn sandwich_bounds(
    k: &ConvexBody2,
    l: &ConvexBody2,
    chart: &TangentChart,
    i: f64,
    c: f64,
    range: (f64, f64),
) -> Result<(f64, f64)> {
    chart.check_range(range)?;
    if !(range.0 >= 0.0) || c * range.1.sin() >= 1.0 {
        return Err(Error::ChartOverflow(format!("C sin θ reaches 1 on [{}, {}]", range.0, range.1)));
    }
    let e = (i - 2.0).abs();
    let mut err = None;
    let mut base = |t: f64, up: bool| -> f64 {
        let (rk, rl) = match (chart.rho(k, t), chart.rho(l, t)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(x), _) | (_, Err(x)) => {
                err.get_or_insert(x);
                return 0.0;
            }
        };
        let s = t.sin();
        let q = ((1.0 - c * s) / (1.0 + c * s)).powf(if up { -e } else { e });
        q * s.powf(i - 2.0) * (rk.powf(i) - rl.powf(i)).abs() / i
    };
    let g = GaussLegendre::g20();
    let lo = g.composite(range.0, range.1, 16, |t| base(t, false));
    let hi = g.composite(range.0, range.1, 16, |t| base(t, true));
    match err {
        Some(x) => Err(x),
        None => Ok((lo, hi)),
    }
}

/// `γ = exp{−12 C |i−2| Σ_{m≥N} k^m}`.
pub fn gamma(c: f64, i: f64, k: f64, n: u32) -> f64 {
    (-12.0 * c * (i - 2.0).abs() * k.powi(n as i32) / (1.0 - k)).exp()
}
