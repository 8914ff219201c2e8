//! Planar points, unit directions and normalized angles.

use std::f64::consts::TAU;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point (or free vector) in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point2 {
    fn from(a: [f64; 2]) -> Self {
        Point2::new(a[0], a[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product; positive when `o` is counterclockwise from `self`.
    #[inline]
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise rotation by a quarter turn.
    #[inline]
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotate(self, phi: f64) -> Point2 {
        let (s, c) = phi.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point2 {
    #[inline]
    fn add_assign(&mut self, o: Point2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    #[inline]
    fn mul(self, p: Point2) -> Point2 {
        p * self
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn div(self, s: f64) -> Point2 {
        Point2::new(self.x / s, self.y / s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    #[inline]
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Unit vector in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dir2(Point2);

impl Dir2 {
    /// Direction `(cos θ, sin θ)`.
    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Dir2(Point2::new(c, s))
    }

    /// Normalizes `v`; `None` for a zero or non-finite vector.
    pub fn new(v: Point2) -> Option<Self> {
        let n = v.norm();
        if n > 0.0 && n.is_finite() {
            Some(Dir2(v / n))
        } else {
            None
        }
    }

    #[inline]
    pub fn vec(self) -> Point2 {
        self.0
    }

    #[inline]
    pub fn x(self) -> f64 {
        self.0.x
    }

    #[inline]
    pub fn y(self) -> f64 {
        self.0.y
    }

    #[inline]
    pub fn angle(self) -> Angle {
        Angle::new(self.0.angle())
    }

    /// Quarter turn counterclockwise.
    #[inline]
    pub fn perp(self) -> Dir2 {
        Dir2(self.0.perp())
    }

    #[inline]
    pub fn dot(self, p: impl Into<Point2>) -> f64 {
        self.0.dot(p.into())
    }
}

impl From<Dir2> for Point2 {
    fn from(d: Dir2) -> Point2 {
        d.0
    }
}

impl Neg for Dir2 {
    type Output = Dir2;
    fn neg(self) -> Dir2 {
        Dir2(-self.0)
    }
}

impl Mul<f64> for Dir2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        self.0 * s
    }
}

/// Angle in radians normalized to `[0, 2π)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Self {
        Angle(wrap_tau(radians))
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn dir(self) -> Dir2 {
        Dir2::from_angle(self.0)
    }
}

impl Add<f64> for Angle {
    type Output = Angle;
    fn add(self, d: f64) -> Angle {
        Angle::new(self.0 + d)
    }
}

impl Sub<f64> for Angle {
    type Output = Angle;
    fn sub(self, d: f64) -> Angle {
        Angle::new(self.0 - d)
    }
}

impl From<f64> for Angle {
    fn from(r: f64) -> Self {
        Angle::new(r)
    }
}

/// Reduces `x` into `[0, 2π)`.
pub fn wrap_tau(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Reduces `x` into `(-π, π]`.
pub fn wrap_pi(x: f64) -> f64 {
    let r = wrap_tau(x);
    if r > std::f64::consts::PI {
        r - TAU
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dir_is_unit() {
        let d = Dir2::new(Point2::new(3.0, -4.0)).unwrap();
        assert!((d.vec().norm() - 1.0).abs() < 1e-12);
        assert!(Dir2::new(Point2::ORIGIN).is_none());
    }

    #[test]
    fn wraps_negative_zero_edge() {
        assert_eq!(wrap_tau(-1e-300), 0.0);
        assert!((wrap_pi(3.0 * std::f64::consts::PI) - std::f64::consts::PI).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn angle_normalization_idempotent(x in -1e4f64..1e4) {
            let a = Angle::new(x);
            prop_assert!(a.radians() >= 0.0 && a.radians() < TAU);
            prop_assert_eq!(Angle::new(a.radians()), a);
        }

        #[test]
        fn angle_arithmetic_wraps(x in 0.0f64..TAU, d in -50.0f64..50.0) {
            let a = Angle::new(x) + d;
            let diff = wrap_pi(a.radians() - x - d);
            prop_assert!(diff.abs() < 1e-9);
        }
    }
}
