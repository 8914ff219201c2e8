use std::f64::consts::{PI, TAU};

use crate::geometry::point::wrap_tau;
use crate::geometry::Point2;

/// One step of the constant-cap rotation map on `(θ, r)`.
pub fn phi_disk_rotation(state: (f64, f64)) -> (f64, f64) {
    let (theta, r) = state;
    (wrap_tau(theta + 2.0 * r.atan()), r)
}

/// The point `(cos θ, sin θ) + r (sin θ, −cos θ)` on the tangent line of the unit disk at `θ`.
pub fn rotation_point(theta: f64, r: f64) -> Point2 {
    let (s, c) = theta.sin_cos();
    Point2::new(c + r * s, s - r * c)
}

/// Angles of the first `n` iterates, starting at `theta0`.
pub fn rotation_orbit(theta0: f64, r: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut st = (wrap_tau(theta0), r);
    for _ in 0..n {
        out.push(st.0);
        st = phi_disk_rotation(st);
    }
    out
}

/// Smallest `q ≤ max_q` with `q · (2 arctan r)/(2π)` an integer to 1e-10, if any.
pub fn rotation_period(r: f64, max_q: u64) -> Option<u64> {
    let x = r.atan() / PI;
    (1..=max_q).find(|&q| {
        let y = q as f64 * x;
        (y - y.round()).abs() < 1e-10
    })
}

/// Largest gap between consecutive angles on the circle.
pub fn max_angular_gap(angles: &[f64]) -> f64 {
    if angles.is_empty() {
        return TAU;
    }
    let mut a: Vec<f64> = angles.iter().map(|&t| wrap_tau(t)).collect();
    a.sort_by(f64::total_cmp);
    let mut gap = a[0] + TAU - a[a.len() - 1];
    for w in a.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn quarter_turn() {
        let (t, r) = phi_disk_rotation((0.0, 1.0));
        assert!((t - FRAC_PI_2).abs() < 1e-15 && r == 1.0);
        let mut s = (0.0, 1.0);
        for _ in 0..4 {
            s = phi_disk_rotation(s);
        }
        assert!(wrap_tau(s.0 + 1e-9) < 1e-8);
        assert_eq!(phi_disk_rotation((1.3, 0.0)), (1.3, 0.0));
    }

    #[test]
    fn periods() {
        assert_eq!(rotation_period(1.0, 1_000_000), Some(4));
        assert_eq!(rotation_period((PI / 8.0).tan(), 1_000_000), Some(8));
        assert_eq!(rotation_period(1.2, 1_000_000), None);
    }

    #[test]
    fn points_stay_on_circle() {
        let r = 0.7;
        for t in rotation_orbit(0.3, r, 50) {
            assert!((rotation_point(t, r).norm() - (1.0 + r * r).sqrt()).abs() < 1e-14);
        }
    }
}
