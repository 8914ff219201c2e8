use crate::error::{Error, Result};
use crate::geometry::{ConvexBody2, Dir2, Point2};
use crate::quadrature::GaussLegendre;

/// Grid size used to fit the comparability constants.
pub const COMPARABILITY_GRID: usize = 10_000;

/// A body, a boundary point `q`, and an origin `o` on the normal through `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lemma32Frame {
    pub d: ConvexBody2,
    pub q: Point2,
    pub o: Point2,
}

impl Lemma32Frame {
    pub fn new(d: ConvexBody2, q: Point2, o: Point2) -> Result<Self> {
        let f = Self { d, q, o };
        f.validate()?;
        Ok(f)
    }

    /// Origin at distance `depth` from `q` along the inner normal with outer normal angle `alpha`.
    pub fn at_normal(d: ConvexBody2, alpha: f64, depth: f64) -> Result<Self> {
        let q = d.boundary_point(alpha);
        let o = q - Dir2::from_angle(alpha) * depth;
        Self::new(d, q, o)
    }

    fn axis(&self) -> Result<f64> {
        Ok(Dir2::new(self.q - self.o).ok_or(Error::FrameInvalid(0.0))?.vec().angle())
    }

    /// Support function measured from `o`, angle counted from the polar axis `o → q`.
    pub fn h(&self, theta: f64) -> Result<f64> {
        let t = self.axis()? + theta;
        Ok(self.d.support(t) - Dir2::from_angle(t).dot(self.o))
    }

    pub fn h_prime(&self, theta: f64) -> Result<f64> {
        let t = self.axis()? + theta;
        Ok(self.d.support_derivative(t)? - Dir2::from_angle(t).perp().dot(self.o))
    }

    fn validate(&self) -> Result<()> {
        let hp = self.h_prime(0.0)?;
        let scale = 1.0 + self.q.dist(self.o);
        if hp.abs() > 1e-9 * scale {
            return Err(Error::FrameInvalid(hp));
        }
        Ok(())
    }
}

/// `h'(θ) sin θ + h(0) − h(θ) cos θ`: the height of the contact point at `θ` above the line at `0`.
pub fn lemma32_quantity(frame: &Lemma32Frame, theta: f64) -> Result<f64> {
    frame.validate()?;
    if theta == 0.0 {
        return Ok(0.0);
    }
    let axis = frame.axis()?;
    if frame.d.support_second_derivative(axis).is_ok() {
        // q' = (h + h'') sin θ, and h + h'' does not depend on the origin
        let panels = (theta.abs() / 0.25).ceil().max(1.0) as usize;
        let mut err = None;
        let v = GaussLegendre::g20().composite(0.0, theta, panels, |t| {
            match frame.d.support_second_derivative(axis + t) {
                Ok(h2) => (frame.d.support(axis + t) + h2) * t.sin(),
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            }
        });
        return match err {
            Some(e) => Err(e),
            None => Ok(v),
        };
    }
    let h0 = frame.h(0.0)?;
    let ht = frame.h(theta)?;
    let hp = frame.h_prime(theta)?;
    let half = (0.5 * theta).sin();
    Ok(hp * theta.sin() + 2.0 * h0 * half * half + (h0 - ht) * theta.cos())
}

/// Empirical `min` and `max` of `quantity / sin²θ` on a uniform grid of `(0, θ_max]` and its limit at 0.
pub fn comparability_constants(frame: &Lemma32Frame, theta_max: f64) -> Result<(f64, f64)> {
    comparability_on_grid(frame, theta_max, COMPARABILITY_GRID)
}

pub fn comparability_on_grid(frame: &Lemma32Frame, theta_max: f64, n: usize) -> Result<(f64, f64)> {
    if !(theta_max > 0.0 && theta_max < std::f64::consts::FRAC_PI_2) {
        return Err(Error::NotComparable(theta_max));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    // limit as θ → 0⁺: half the radius of curvature at q
    let axis = frame.axis()?;
    if let Ok(h2) = frame.d.support_second_derivative(axis) {
        let r0 = 0.5 * (frame.d.support(axis) + h2);
        lo = r0;
        hi = r0;
    }
    for k in 1..=n {
        let t = theta_max * k as f64 / n as f64;
        let r = lemma32_quantity(frame, t)? / t.sin().powi(2);
        if !(r > 0.0) {
            return Err(Error::NotComparable(t));
        }
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok((lo, hi))
}

/// The constant `C` with `|quantity(θ)| ≤ C r sin²θ` for `r ≥ r_min`, inflated twofold.
pub fn step3_constant(frames: &[&Lemma32Frame], theta_max: f64, r_min: f64) -> Result<f64> {
    let mut c2 = 0.0f64;
    for f in frames {
        c2 = c2.max(comparability_constants(f, theta_max)?.1);
    }
    Ok(2.0 * c2 / r_min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_closed_form() {
        let d = ConvexBody2::disk(Point2::new(0.3, -0.2), 1.0);
        let f = Lemma32Frame::at_normal(d, 0.7, 0.4).unwrap();
        let v = lemma32_quantity(&f, 0.1).unwrap();
        assert!((v - 0.0049958347).abs() < 1e-10, "{v}");
        assert_eq!(lemma32_quantity(&f, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn integral_form_matches_direct_form() {
        let e = ConvexBody2::ellipse(Point2::new(0.2, 0.1), 2.0, 1.0, 0.4);
        let f = Lemma32Frame::at_normal(e.clone(), 1.1, 0.5).unwrap();
        for t in [0.05, 0.2, 0.6] {
            let a = lemma32_quantity(&f, t).unwrap();
            let b = f.h_prime(t).unwrap() * t.sin() + f.h(0.0).unwrap() - f.h(t).unwrap() * t.cos();
            assert!((a - b).abs() < 1e-12, "{t}: {a} vs {b}");
        }
    }

    #[test]
    fn misplaced_origin() {
        let d = ConvexBody2::unit_disk();
        let r = Lemma32Frame::new(d, Point2::new(1.0, 0.0), Point2::new(0.0, 0.3));
        assert!(matches!(r, Err(Error::FrameInvalid(_))));
    }

    #[test]
    fn disk_constants() {
        let f = Lemma32Frame::at_normal(ConvexBody2::unit_disk(), 0.0, 1.0).unwrap();
        let (c1, c2) = comparability_constants(&f, 0.3).unwrap();
        assert!((0.49..=0.51).contains(&c1) && (0.49..=0.52).contains(&c2), "{c1} {c2}");
        let g = Lemma32Frame::at_normal(ConvexBody2::disk(Point2::ORIGIN, 3.0), 0.0, 1.0).unwrap();
        let (d1, d2) = comparability_constants(&g, 0.3).unwrap();
        assert!((d1 / c1 - 3.0).abs() < 1e-9 && (d2 / c2 - 3.0).abs() < 1e-9);
    }
}
