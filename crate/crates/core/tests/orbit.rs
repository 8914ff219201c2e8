use std::f64::consts::{FRAC_PI_6, TAU};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sections::geometry::tangent::{common_tangents, Branch};
use sections::phi::*;
use sections::probes::Mode;
use sections::{ConvexBody2, Dir2, Point2};

struct Setup {
    k: ConvexBody2,
    d1: ConvexBody2,
    d2: ConvexBody2,
    geom: OrbitGeometry,
}

fn setup(k: ConvexBody2, d1: ConvexBody2, d2: ConvexBody2) -> Setup {
    let report = common_tangents(&d1, &d2);
    let t = report.require().unwrap();
    let up = if t[0].line.foot().y > t[1].line.foot().y { t[0] } else { t[1] };
    let geom = OrbitGeometry::from_oracle(&up, &k).unwrap();
    Setup { k, d1, d2, geom }
}

fn radius10() -> Setup {
    setup(
        ConvexBody2::disk(Point2::new(1.5, 0.0), 10.0),
        ConvexBody2::unit_disk(),
        ConvexBody2::disk(Point2::new(3.0, 0.0), 1.0),
    )
}

fn ellipse_pair() -> Setup {
    setup(
        ConvexBody2::ellipse(Point2::ORIGIN, 4.0, 2.0, 0.0),
        ConvexBody2::disk(Point2::new(-1.5, 0.0), 1.0),
        ConvexBody2::disk(Point2::new(1.5, 0.0), 1.0),
    )
}

fn configs(s: &Setup, i: f64, mode: Mode) -> (PhiConfig, PhiConfig) {
    let (b1, b2) = s.geom.branches(&s.d1, &s.d2).unwrap();
    (
        PhiConfig::new(s.d1.clone(), i, mode, b1).unwrap(),
        PhiConfig::new(s.d2.clone(), i, mode, b2).unwrap(),
    )
}

fn off_boundary(k: &ConvexBody2, p: Point2) -> f64 {
    let c = k.interior_point();
    let dir = Dir2::new(p - c).unwrap();
    (p.dist(c) - k.radial(c, dir)).abs()
}

#[test]
fn radius10_endpoints() {
    let s = radius10();
    let r = 99f64.sqrt();
    assert!(s.geom.x0.dist(Point2::new(1.5 + r, 1.0)) < 1e-12);
    assert!(s.geom.y0.dist(Point2::new(1.5 - r, 1.0)) < 1e-12);
    assert_eq!(s.geom.branches(&s.d1, &s.d2).unwrap(), (Branch::Left, Branch::Left));
}

#[test]
fn radius10_orbit_contracts() {
    let mut s = radius10();
    s.geom.margin = 1e-5;
    let r = 99f64.sqrt();
    let k0 = ((r - 1.5) / (r + 1.5)).powi(2);
    let src = ChordDataSource::Oracle(s.k.clone());
    let q0 = s.geom.start_at_angle(&s.d1, &s.k, FRAC_PI_6).unwrap();
    for i in [1.0, 2.0] {
        let (c1, c2) = configs(&s, i, Mode::Sum);
        let stop = OrbitStop { theta_min: 1e-7, max_iter: 200 };
        let tr = orbit(q0, &c1, &c2, &src, &src, &s.geom, stop).unwrap();
        assert!((tr.theta[0] - FRAC_PI_6).abs() < 1e-12);
        assert!(tr.theta.windows(2).all(|w| w[1] < w[0]));
        let first_small = tr.theta.iter().position(|&t| t < 1e-6).unwrap();
        assert!(first_small <= 25, "i = {i}: θ < 1e-6 only at step {first_small}");
        let mut checked = 0;
        for (j, &ratio) in tr.ratios.iter().enumerate() {
            if tr.inside[j] {
                assert!(ratio <= k0 + 1e-9, "i = {i}, step {j}: {ratio} > {k0}");
                assert!(ratio <= tr.k() + 1e-9);
                checked += 1;
            }
        }
        assert!(checked >= 10, "only {checked} steps inside the neighborhoods");
        // rounding grows by about 1/k per step in the direction normal to the boundary
        for (j, p) in tr.points.iter().enumerate() {
            let e = off_boundary(&s.k, *p);
            assert!(e < 1e-13 * k0.powi(-(j as i32)), "step {j}: {p:?} off by {e}");
        }
    }
}

#[test]
fn orbit_from_x0_stays_put() {
    let s = radius10();
    let (c1, c2) = configs(&s, 1.0, Mode::Sum);
    let src = ChordDataSource::Oracle(s.k.clone());
    let tr = orbit(s.geom.x0, &c1, &c2, &src, &src, &s.geom, OrbitStop::default()).unwrap();
    assert_eq!(tr.points.len(), 1);
    assert!(tr.theta[0] < 1e-12);
    assert!(tr.images[0].dist(s.geom.y0) < 1e-9);
}

fn four_maps(s: &Setup, i: f64, mode: Mode) -> [PhiConfig; 4] {
    let (c1, c2) = configs(s, i, mode);
    [c1.with_branch(c1.branch.opposite()), c2.with_branch(c2.branch.opposite()), c1, c2]
}

#[test]
fn boundary_preserved_by_all_four_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in [radius10(), ellipse_pair()] {
        let src = ChordDataSource::Oracle(s.k.clone());
        for (i, mode) in [(1.0, Mode::Sum), (2.0, Mode::Sum), (1.5, Mode::Diff)] {
            let maps = four_maps(&s, i, mode);
            for _ in 0..1000 {
                let q = s.k.boundary_point(rng.gen_range(0.0..TAU));
                for cfg in &maps {
                    let img = phi_body(q, cfg, &src).unwrap();
                    let e = off_boundary(&s.k, img);
                    assert!(e < 1e-8, "{q:?} ↦ {img:?} off by {e}");
                }
            }
        }
    }
}

#[test]
fn inverse_undoes_the_map() {
    let s = ellipse_pair();
    let src = ChordDataSource::Oracle(s.k.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for cfg in four_maps(&s, 2.0, Mode::Sum) {
        for _ in 0..200 {
            let q = s.k.boundary_point(rng.gen_range(0.0..TAU));
            let img = phi_body(q, &cfg, &src).unwrap();
            let back = phi_body_inverse(img, &cfg, &src).unwrap();
            assert!(back.dist(q) < 1e-9, "{q:?} came back as {back:?}");
        }
    }
}

#[test]
fn irrational_rotation_is_dense() {
    let gap = max_angular_gap(&rotation_orbit(0.0, 1.2, 10_000));
    assert!(gap < TAU * 1e-3, "gap {gap}");
    let four = rotation_orbit(0.4, 1.0, 9);
    assert!((four[4] - four[0]).abs() < 1e-12 && (four[8] - four[0]).abs() < 1e-12);
}

proptest! {
    #[test]
    fn point_map_is_an_involution(
        t in 0.0..TAU,
        px in -0.8..0.8f64,
        py in -0.4..0.4f64,
        i in 0.5..3.0f64,
        diff in any::<bool>(),
    ) {
        let k = ConvexBody2::ellipse(Point2::new(0.1, -0.2), 2.0, 1.0, 0.3);
        let p = Point2::new(0.1 + px, -0.2 + py);
        let q = k.boundary_point(t);
        let mode = if diff { Mode::Diff } else { Mode::Sum };
        let src = ChordDataSource::Oracle(k.clone());
        let img = phi_point(q, p, i, mode, &src).unwrap();
        prop_assert!(off_boundary(&k, img) < 1e-9);
        let back = phi_point_inverse(img, p, i, mode, &src).unwrap();
        prop_assert!(back.dist(q) < 1e-9);
    }
}
