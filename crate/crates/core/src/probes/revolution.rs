use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody2, Point2};
use crate::quadrature::adaptive_simpson;
use crate::roots::bisect;

/// Meridian section of a body of revolution about the z axis.
///
/// The planar body is read in `(axial, radial)` coordinates and must be
/// symmetric under `radial → −radial`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub meridian: ConvexBody2,
}

/// Plane through the axis point `(0, 0, axis_point)` with the given normal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Plane3 {
    pub axis_point: f64,
    pub normal: [f64; 3],
}

impl Profile {
    pub fn new(meridian: ConvexBody2) -> Result<Self> {
        meridian.validate().map_err(|e| Error::NonConvexProfile(e.to_string()))?;
        let scale = 1.0 + meridian.support(0.0).abs() + meridian.support(std::f64::consts::PI).abs();
        for k in 0..256 {
            let t = TAU * k as f64 / 256.0;
            if (meridian.support(t) - meridian.support(-t)).abs() > 1e-9 * scale {
                return Err(Error::NonConvexProfile(format!("not symmetric about the axis at angle {t}")));
            }
        }
        Ok(Self { meridian })
    }

    /// Membership of a point of space.
    pub fn contains(&self, x: [f64; 3]) -> bool {
        self.meridian.contains(Self::meridian_coords(x), 0.0)
    }

    fn meridian_coords(x: [f64; 3]) -> Point2 {
        Point2::new(x[2], x[0].hypot(x[1]))
    }

    fn extent(&self) -> f64 {
        [0.0, 0.5, 1.0, 1.5]
            .iter()
            .map(|q| self.meridian.support(q * std::f64::consts::PI).abs())
            .fold(0.0, f64::max)
    }
}

impl Plane3 {
    pub fn new(axis_point: f64, normal: [f64; 3]) -> Self {
        Self { axis_point, normal }
    }

    /// Orthonormal in-plane basis.
    pub fn basis(&self) -> Result<([f64; 3], [f64; 3])> {
        let n = self.normal;
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if !(len > 0.0 && len.is_finite()) {
            return Err(Error::DegenerateDirection);
        }
        let n = [n[0] / len, n[1] / len, n[2] / len];
        let helper = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let e1 = normalize(cross(helper, n));
        let e2 = cross(n, e1);
        Ok((e1, e2))
    }

    pub fn point(&self, e: &([f64; 3], [f64; 3]), s: f64, t: f64) -> [f64; 3] {
        let (e1, e2) = e;
        [
            s * e1[0] + t * e2[0],
            s * e1[1] + t * e2[1],
            self.axis_point + s * e1[2] + t * e2[2],
        ]
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize(a: [f64; 3]) -> [f64; 3] {
    let l = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    [a[0] / l, a[1] / l, a[2] / l]
}

/// Area of the plane section of the body of revolution.
///
/// Polar integral `½∫ρ(φ)² dφ` about the axis point, which must be interior;
/// `ρ` by bisection on membership, `φ` by adaptive Simpson (tol 1e-8, depth 40).
pub fn revolution_section_area(profile: &Profile, plane: &Plane3) -> Result<f64> {
    let a = Point2::new(plane.axis_point, 0.0);
    if !profile.meridian.contains(a, -1e-12) {
        return Err(Error::PointOutsideBody(a.x, a.y));
    }
    let basis = plane.basis()?;
    let rmax = 2.0 * (profile.extent() + plane.axis_point.abs()) + 1.0;
    let gauge = |x: [f64; 3]| profile.meridian.gauge(Profile::meridian_coords(x)) - 1.0;
    let rho = |phi: f64| {
        let (s, c) = phi.sin_cos();
        bisect(|r| gauge(plane.point(&basis, r * c, r * s)), 0.0, rmax, 1e-14).unwrap_or(0.0)
    };
    let pieces = 8;
    let mut area = 0.0;
    for k in 0..pieces {
        let lo = TAU * k as f64 / pieces as f64;
        let hi = TAU * (k + 1) as f64 / pieces as f64;
        area += adaptive_simpson(|p| 0.5 * rho(p).powi(2), lo, hi, 1e-8 / pieces as f64, 40);
    }
    Ok(area)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ball(r: f64) -> Profile {
        Profile::new(ConvexBody2::disk(Point2::ORIGIN, r)).unwrap()
    }

    #[test]
    fn great_circle() {
        let a = revolution_section_area(&ball(1.0), &Plane3::new(0.0, [0.0, 0.0, 1.0])).unwrap();
        assert!((a - PI).abs() < 1e-6 * PI);
        let a = revolution_section_area(&ball(1.0), &Plane3::new(0.0, [1.0, 0.0, 0.0])).unwrap();
        assert!((a - PI).abs() < 1e-6 * PI);
    }

    #[test]
    fn off_center_slice() {
        let a = revolution_section_area(&ball(2.0), &Plane3::new(1.0, [0.0, 0.0, 1.0])).unwrap();
        assert!((a - 3.0 * PI).abs() < 1e-6 * 3.0 * PI);
    }

    #[test]
    fn oblique_slice_of_ball() {
        let n = [(PI / 3.0).sin(), 0.0, (PI / 3.0).cos()];
        let a = revolution_section_area(&ball(1.0), &Plane3::new(0.5, n)).unwrap();
        let d = 0.5 * (PI / 3.0).cos();
        assert!((a - PI * (1.0 - d * d)).abs() < 1e-6 * a);
    }

    #[test]
    fn asymmetric_profile_rejected() {
        let m = ConvexBody2::disk(Point2::new(0.0, 0.5), 1.0);
        assert!(matches!(Profile::new(m), Err(Error::NonConvexProfile(_))));
    }
}
