use super::point::{Dir2, Point2};

/// Which closed half-plane of a [`Line2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `⟨x, ξ⟩ ≥ h`
    Positive,
    /// `⟨x, ξ⟩ ≤ h`
    Negative,
}

/// The line `{x : ⟨x, ξ⟩ = h}` with a chosen orientation.
///
/// `(ξ, h)` and `(−ξ, −h)` are the same point set with opposite positive sides.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line2 {
    pub normal: Dir2,
    pub offset: f64,
}

impl Line2 {
    pub fn new(normal: Dir2, offset: f64) -> Self {
        Self { normal, offset }
    }

    /// Line through `p` with the given normal.
    pub fn through(p: Point2, normal: Dir2) -> Self {
        Self { normal, offset: normal.dot(p) }
    }

    /// Line through two distinct points, normal on the right of `a → b`.
    pub fn through_points(a: Point2, b: Point2) -> Option<Self> {
        let d = Dir2::new(b - a)?;
        let normal = -d.perp();
        Some(Self::through(a, normal))
    }

    /// In-line direction: the normal rotated by −π/2.
    pub fn direction(&self) -> Dir2 {
        -self.normal.perp()
    }

    pub fn flipped(&self) -> Self {
        Self { normal: -self.normal, offset: -self.offset }
    }

    #[inline]
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// Foot of the perpendicular from the origin.
    pub fn foot(&self) -> Point2 {
        self.normal * self.offset
    }

    pub fn project(&self, p: Point2) -> Point2 {
        p - self.normal * self.signed_distance(p)
    }

    /// Intersection with another line, `None` when (nearly) parallel.
    pub fn intersect(&self, o: &Line2) -> Option<Point2> {
        let a = self.normal.vec();
        let b = o.normal.vec();
        let det = a.cross(b);
        if det.abs() < 1e-15 {
            return None;
        }
        let x = (self.offset * b.y - o.offset * a.y) / det;
        let y = (a.x * o.offset - b.x * self.offset) / det;
        Some(Point2::new(x, y))
    }

    pub fn contains_side(&self, p: Point2, side: Side, tol: f64) -> bool {
        let s = self.signed_distance(p);
        match side {
            Side::Positive => s >= -tol,
            Side::Negative => s <= tol,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersect_axes() {
        let a = Line2::new(Dir2::from_angle(0.0), 1.0);
        let b = Line2::new(Dir2::from_angle(std::f64::consts::FRAC_PI_2), 2.0);
        let p = a.intersect(&b).unwrap();
        assert!((p.x - 1.0).abs() < 1e-15 && (p.y - 2.0).abs() < 1e-15);
    }

    #[test]
    fn flipped_is_same_set() {
        let l = Line2::new(Dir2::from_angle(0.7), 0.3);
        let p = l.foot() + l.direction() * 5.0;
        assert!(l.signed_distance(p).abs() < 1e-12);
        assert!(l.flipped().signed_distance(p).abs() < 1e-12);
    }
}
