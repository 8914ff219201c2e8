use std::f64::consts::{FRAC_PI_2, PI, TAU};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sections::geometry::polygon::{area, convex_hull};
use sections::measures::*;
use sections::{ConvexBody2, Dir2, Line2, Point2};

fn random_polygon(rng: &mut ChaCha8Rng) -> Vec<Point2> {
    let c = Point2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
    let n = rng.gen_range(3..12);
    let pts: Vec<Point2> = (0..n)
        .map(|_| c + Dir2::from_angle(rng.gen_range(0.0..TAU)) * rng.gen_range(0.2..2.0))
        .collect();
    convex_hull(&pts)
}

#[test]
fn nu2_is_area() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut done = 0;
    while done < 50 {
        let poly = random_polygon(&mut rng);
        if poly.len() < 3 {
            continue;
        }
        let l = Line2::new(Dir2::from_angle(rng.gen_range(0.0..TAU)), rng.gen_range(-1.0..1.0));
        let a = area(&poly);
        let v = nu_measure(&Region2::new(poly, l), 2.0).unwrap().value().unwrap();
        assert!((v - a).abs() <= 1e-8 * a, "{v} vs {a}");
        done += 1;
    }
}

#[test]
fn triangle_and_square_dichotomy() {
    let x_axis = Line2::new(Dir2::from_angle(FRAC_PI_2), 0.0);
    let tri = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 1.0), Point2::new(-1.0, 1.0)];
    let v = nu_measure(&Region2::new(tri, x_axis), 1.0).unwrap().value().unwrap();
    assert!((v - 2.0).abs() < 1e-6 * 2.0);
    let sq = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), Point2::new(0.0, 1.0)];
    assert_eq!(nu_measure(&Region2::new(sq, x_axis), 1.0).unwrap(), NuValue::Divergent);
}

proptest! {
    #[test]
    fn shift_along_the_axis_changes_nothing(seed in any::<u64>(), shift in -50.0..50.0f64, i in 0.3..4.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let poly = random_polygon(&mut rng);
        prop_assume!(poly.len() >= 3);
        let l = Line2::new(Dir2::from_angle(rng.gen_range(0.0..TAU)), rng.gen_range(-1.0..1.0));
        let moved: Vec<Point2> = poly.iter().map(|&p| p + l.direction() * shift).collect();
        let a = nu_measure(&Region2::new(poly, l), i).unwrap();
        let b = nu_measure(&Region2::new(moved, l), i).unwrap();
        match (a, b) {
            (NuValue::Finite(x), NuValue::Finite(y)) => prop_assert!((x - y).abs() <= 1e-9 * x.abs().max(1e-300)),
            (x, y) => prop_assert_eq!(x, y),
        }
    }
}

#[test]
fn lemma_quantity_closed_form() {
    for r in [0.5, 1.0, 3.0] {
        let d = ConvexBody2::disk(Point2::new(0.4, -1.0), r);
        let f = Lemma32Frame::at_normal(d, 2.2, 0.7 * r).unwrap();
        let n = 300;
        for k in 0..=n {
            let t = 1e-3 + (0.3 - 1e-3) * k as f64 / n as f64;
            let q = lemma32_quantity(&f, t).unwrap();
            let want = r * (1.0 - t.cos());
            assert!((q - want).abs() < 1e-9 * want, "R = {r}, θ = {t}: {q} vs {want}");
            let ratio = q / t.sin().powi(2);
            assert!(ratio >= 0.49 * r && ratio <= 0.52 * r);
        }
    }
    let f = Lemma32Frame::at_normal(ConvexBody2::unit_disk(), 0.0, 1.0).unwrap();
    let r = lemma32_quantity(&f, 0.01).unwrap() / 0.01f64.sin().powi(2);
    assert!((r - 0.5).abs() < 0.005);
}

#[test]
fn comparability_constants_bracket_a_finer_grid() {
    let e = ConvexBody2::ellipse(Point2::new(0.3, 0.0), 2.0, 1.0, 0.2);
    let f = Lemma32Frame::at_normal(e, 0.9, 0.5).unwrap();
    let (c1, c2) = comparability_constants(&f, 0.3).unwrap();
    let n = 10 * COMPARABILITY_GRID;
    for k in 1..=n {
        let t = 0.3 * k as f64 / n as f64;
        let r = lemma32_quantity(&f, t).unwrap() / t.sin().powi(2);
        assert!(r >= c1 * (1.0 - 1e-6) && r <= c2 * (1.0 + 1e-6), "{t}: {r} outside [{c1}, {c2}]");
    }
}

#[test]
fn constants_approach_half_curvature_radius() {
    // x²/4 + y² = 1 at (2, 0): radius of curvature b²/a = 1/2
    let e = ConvexBody2::ellipse(Point2::ORIGIN, 2.0, 1.0, 0.0);
    let f = Lemma32Frame::at_normal(e, 0.0, 1.0).unwrap();
    let (c1, c2) = comparability_constants(&f, 1e-3).unwrap();
    assert!((c1 - 0.25).abs() < 1e-5 && (c2 - 0.25).abs() < 1e-5, "{c1} {c2}");
    let big = ConvexBody2::ellipse(Point2::ORIGIN, 4.0, 2.0, 0.0);
    let g = Lemma32Frame::at_normal(big, 0.0, 2.0).unwrap();
    let (d1, d2) = comparability_constants(&g, 0.2).unwrap();
    let (e1, e2) = comparability_constants(&f, 0.2).unwrap();
    assert!((d1 / e1 - 2.0).abs() < 1e-9 && (d2 / e2 - 2.0).abs() < 1e-9);
}

#[test]
fn tangent_frame_integral_agrees_with_polygon_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for j in 0..10 {
        let rk = rng.gen_range(2.5..3.5);
        let k = ConvexBody2::disk(Point2::ORIGIN, rk);
        let l = ConvexBody2::disk(Point2::new(rng.gen_range(-0.05..0.05), rng.gen_range(-0.05..0.05)), rk + rng.gen_range(0.05..0.2));
        let d = ConvexBody2::disk(Point2::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)), rng.gen_range(0.5..1.0));
        let base = rng.gen_range(0.0..TAU);
        let axis = Dir2::from_angle(base - FRAC_PI_2);
        let chart = TangentChart::new(d, base, axis);
        let a = rng.gen_range(0.05..0.3);
        let range = (a, a + rng.gen_range(0.05..0.2));
        let i = [1.0, 1.5, 2.0, 3.0, 0.7][j % 5];
        let v = tangent_frame_integral(&k, &l, &chart, i, range).unwrap();
        let w = nu_measure(&chart.region(&k, &l, range, 4096).unwrap(), i).unwrap().value().unwrap();
        assert!((v - w).abs() < 1e-5 * w, "case {j}: {v} vs {w}");
    }
}

#[test]
fn frame_integral_is_area_at_i2() {
    let k = ConvexBody2::ellipse(Point2::ORIGIN, 4.0, 2.5, 0.1);
    let l = ConvexBody2::ellipse(Point2::new(0.02, 0.0), 4.1, 2.5, 0.1);
    let chart = TangentChart::new(ConvexBody2::unit_disk(), FRAC_PI_2, Dir2::from_angle(0.0));
    let range = (0.1, 0.4);
    let v = tangent_frame_integral(&k, &l, &chart, 2.0, range).unwrap();
    let poly = chart.region(&k, &l, range, 8192).unwrap();
    let a = area(&poly.boundary);
    assert!((v - a).abs() < 1e-5 * a, "{v} vs {a}");
}

#[test]
fn sandwich_brackets_orbit_segments() {
    let d1 = ConvexBody2::unit_disk();
    let k = ConvexBody2::disk(Point2::new(1.5, 0.0), 10.0);
    let l = ConvexBody2::disk(Point2::new(1.5, 0.0), 10.02);
    let chart = TangentChart::new(d1, FRAC_PI_2, Dir2::from_angle(0.0));
    let frame = chart.lemma_frame(1.0).unwrap();
    let thetas: Vec<f64> = (0..8).map(|j| (PI / 6.0) * 0.5446f64.powi(j)).collect();
    let c = step3_constant(&[&frame], thetas[0], 9.0).unwrap();
    for i in [1.0, 1.5, 3.0] {
        for w in thetas.windows(2) {
            let range = (w[1], w[0]);
            let nu = tangent_frame_integral(&k, &l, &chart, i, range).unwrap();
            let (lo, hi) = sandwich_bounds(&k, &l, &chart, i, c, range).unwrap();
            assert!(lo <= nu && nu <= hi, "i = {i}, {range:?}: {lo} ≤ {nu} ≤ {hi}");
        }
    }
    assert!(gamma(c, 1.0, 0.5446, 3) > 0.0 && gamma(c, 1.0, 0.5446, 3) < 1.0);
}

#[test]
fn shifted_disk_symdiff_area() {
    let k = ConvexBody2::unit_disk();
    let m = k.translated(Point2::new(0.1, 0.0));
    let l = Line2::new(Dir2::from_angle(FRAC_PI_2), 0.5);
    let parts = symdiff_components(&k, &m, &l);
    let d: f64 = 0.1;
    let lens = 2.0 * (d / 2.0).acos() - 0.5 * d * (4.0 - d * d).sqrt();
    let want = 2.0 * (PI - lens);
    let got: f64 = parts.iter().map(|c| c.region.area()).sum();
    assert!((got - want).abs() < 1e-4 * want);
    let nu2: f64 = parts.iter().map(|c| nu_measure(&c.region, 2.0).unwrap().value().unwrap()).sum();
    assert!((nu2 - got).abs() < 1e-8 * got);
}
