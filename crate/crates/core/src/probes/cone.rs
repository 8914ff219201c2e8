use std::f64::consts::{PI, TAU};

use super::table::{DataTable, ProbeKind};
use super::{check_grid, point_chord_record, ChordPair, Payload, MIN_GRID};
use crate::error::{Error, Result};
use crate::geometry::point::wrap_tau;
use crate::geometry::ConvexBody2;

/// Angular interval `[lo, hi]` (counterclockwise, `hi − lo < π`) of directions from
/// vertex `k` into the polygon. The double cone adds the antipodal interval.
pub fn vertex_cone(d: &ConvexBody2, k: usize) -> Result<(f64, f64)> {
    let ConvexBody2::Polygon { vertices } = d else {
        return Err(Error::InvalidBody("vertex cone needs a polygon".into()));
    };
    let n = vertices.len();
    if k >= n {
        return Err(Error::InvalidBody(format!("vertex index {k} out of range")));
    }
    let v = vertices[k];
    let lo = wrap_tau((vertices[(k + 1) % n] - v).angle());
    let mut hi = wrap_tau((vertices[(k + n - 1) % n] - v).angle());
    if hi < lo {
        hi += TAU;
    }
    Ok((lo, hi))
}

/// Point chords from vertex `k` for directions across its cone.
///
/// Column 0 is `ρ(v)` for `v` in the cone, column 1 is `ρ(−v)`.
pub fn vertex_cone_probe(k: &ConvexBody2, d: &ConvexBody2, vertex: usize, grid_size: usize) -> Result<DataTable> {
    check_grid(grid_size, MIN_GRID)?;
    let (lo, hi) = vertex_cone(d, vertex)?;
    let ConvexBody2::Polygon { vertices } = d else { unreachable!() };
    let p = vertices[vertex];
    if !k.contains(p, -1e-12) {
        return Err(Error::PointOutsideBody(p.x, p.y));
    }
    let mut t = DataTable::new(ProbeKind::VertexCone, "K", format!("v{vertex}"));
    t.range = Some((lo, hi));
    for j in 0..grid_size {
        let th = lo + (hi - lo) * j as f64 / (grid_size - 1) as f64;
        if let Payload::Chord(c) = point_chord_record(k, p, th).payload {
            t.push(th, vec![c.rho_plus, c.rho_minus]);
        }
    }
    Ok(t)
}

/// Interpolated `ρ(v), ρ(−v)` for a direction in either nappe of the double cone.
pub fn vertex_cone_lookup(table: &DataTable, theta: f64) -> Result<ChordPair> {
    let (lo, hi) = table.range.ok_or_else(|| Error::TableMismatch("table has no cone range".into()))?;
    let eps = 1e-12;
    let inside = |t: f64| {
        let off = wrap_tau(t - lo);
        if off <= hi - lo + eps || off >= TAU - eps {
            Some(lo + off.min(hi - lo))
        } else {
            None
        }
    };
    if let Some(t) = inside(theta) {
        return Ok(ChordPair { rho_plus: table.interp(0, t), rho_minus: table.interp(1, t) });
    }
    if let Some(t) = inside(theta + PI) {
        return Ok(ChordPair { rho_plus: table.interp(1, t), rho_minus: table.interp(0, t) });
    }
    Err(Error::DirectionOutsideCone(theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Dir2, Point2};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    #[test]
    fn square_cone_width() {
        let sq = ConvexBody2::square(-1.0, 1.0);
        for k in 0..4 {
            let (lo, hi) = vertex_cone(&sq, k).unwrap();
            assert!((hi - lo - FRAC_PI_2).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_chord_through_vertex() {
        let k = ConvexBody2::disk(Point2::ORIGIN, 3.0);
        let sq = ConvexBody2::square(-1.0, 1.0);
        // vertex (1,1) is index 2 in counterclockwise order from (-1,-1)
        let t = vertex_cone_probe(&k, &sq, 2, 65).unwrap();
        let toward_origin = 5.0 * PI / 4.0;
        let c = vertex_cone_lookup(&t, toward_origin).unwrap();
        assert!((c.rho_plus - (3.0 + SQRT_2)).abs() < 1e-12);
        assert!((c.rho_minus - (3.0 - SQRT_2)).abs() < 1e-12);
        assert!((c.length() - 6.0).abs() < 1e-12);
        let c = vertex_cone_lookup(&t, PI / 4.0).unwrap();
        assert!((c.rho_plus - (3.0 - SQRT_2)).abs() < 1e-12);
        assert!(matches!(vertex_cone_lookup(&t, 2.0), Err(Error::DirectionOutsideCone(_))));
    }

    #[test]
    fn square_cones_cover_plane() {
        let sq = ConvexBody2::square(-1.0, 1.0);
        let ConvexBody2::Polygon { vertices } = &sq else { unreachable!() };
        let cones: Vec<_> = (0..4).map(|k| vertex_cone(&sq, k).unwrap()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let x = Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let covered = (0..4).any(|k| {
                let Some(w) = Dir2::new(x - vertices[k]) else { return true };
                let (lo, hi) = cones[k];
                [w.vec().angle(), w.vec().angle() + PI]
                    .iter()
                    .any(|&a| wrap_tau(a - lo) <= hi - lo + 1e-12)
            });
            assert!(covered, "{x:?}");
        }
    }
}
