use sections::probes::{tangent_chord_probe, functional_table, Mode};
use sections::reconstruct::*;
use sections::Point2;

#[test]
fn radius10_seed() {
    for (i, mode) in [(1.0, Mode::Sum), (2.0, Mode::Sum), (1.5, Mode::Diff), (3.0, Mode::Sum)] {
        let scn = Scenario::radius10(i, mode).unwrap();
        let s = solve_seed(&scn).unwrap();
        let want = Point2::new(1.5 + 99f64.sqrt(), if s.x0.y > 0.0 { 1.0 } else { -1.0 });
        assert!(s.x0.dist(want) < 1e-6, "i = {i}: {:?}", s.x0);
    }
}

#[test]
fn ellipse_seed_matches_intersection() {
    for (i, mode) in [(1.0, Mode::Sum), (2.0, Mode::Sum), (2.0, Mode::Diff)] {
        let scn = Scenario::ellipse(i, mode).unwrap();
        let s = solve_seed(&scn).unwrap();
        let k = scn.oracle.as_ref().unwrap();
        let (a, b) = k.chord(&scn.tangents[s.tangent].line).unwrap();
        let x = if a.dist(s.x0) < b.dist(s.x0) { a } else { b };
        assert!(s.x0.dist(x) < 1e-6);
    }
}

#[test]
fn tabulated_ellipse_seed() {
    let (k, d1, d2) = ellipse_bodies();
    for i in [1.0, 2.0] {
        let scn = Scenario::tabulated(k.clone(), d1.clone(), d2.clone(), i, Mode::Sum, 1024).unwrap();
        let s = solve_seed(&scn).unwrap();
        let (a, b) = k.chord(&scn.tangents[s.tangent].line).unwrap();
        let x = if a.dist(s.x0) < b.dist(s.x0) { a } else { b };
        assert!(s.x0.dist(x) < 1e-6);
    }
}

#[test]
fn corrupted_chords_are_flagged() {
    let (k, d1, d2) = ellipse_bodies();
    for i in [1.0, 2.0, 3.0] {
        let t1 = functional_table(&tangent_chord_probe(&k, &d1, 512).unwrap(), i, Mode::Sum).unwrap();
        let mut chords = tangent_chord_probe(&k, &d2, 512).unwrap();
        for v in &mut chords.values {
            for x in v.iter_mut() {
                *x *= 1.1;
            }
        }
        let t2 = functional_table(&chords, i, Mode::Sum).unwrap();
        let scn = Scenario::from_tables(d1.clone(), d2.clone(), t1, t2, i, Mode::Sum, None).unwrap();
        match solve_seed(&scn) {
            Err(sections::Error::NoRoot(_)) => {}
            Ok(s) => panic!("i = {i}: accepted with residual {}", s.residual),
            Err(e) => panic!("i = {i}: {e}"),
        }
    }
}

#[test]
fn seed_is_scale_equivariant() {
    for (i, mode) in [(1.0, Mode::Sum), (2.0, Mode::Sum)] {
        let base = Scenario::ellipse(i, mode).unwrap();
        let s = solve_seed(&base).unwrap();
        for lambda in [0.5, 2.0, 10.0] {
            let t = solve_seed(&base.scaled(lambda).unwrap()).unwrap();
            let want = s.x0 * lambda;
            assert!(t.x0.dist(want) <= 1e-8 * want.norm(), "i = {i}, λ = {lambda}");
        }
    }
}

#[test]
fn radius10_cloud_on_circle() {
    let scn = Scenario::radius10(1.0, Mode::Sum).unwrap();
    let seed = Point2::new(1.5 + 99f64.sqrt(), 1.0);
    let cloud = propagate_boundary(&scn, seed, 500).unwrap();
    assert_eq!(cloud.len(), 500);
    let c = Point2::new(1.5, 0.0);
    let worst = cloud.points.iter().map(|p| (p.dist(c) - 10.0).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-8);
}

#[test]
fn hull_area_from_any_seed() {
    let scn = Scenario::radius10(1.0, Mode::Sum).unwrap();
    for t in [0.3, 2.0, 4.4] {
        let seed = Point2::new(1.5, 0.0) + sections::Dir2::from_angle(t) * 10.0;
        let cloud = propagate_boundary(&scn, seed, 500).unwrap();
        assert_eq!(cloud.refused, 0);
        let a = sections::geometry::polygon::area(&cloud.hull());
        let want = std::f64::consts::PI * 100.0;
        assert!((a - want).abs() < 0.005 * want);
    }
}

#[test]
fn budget_one_is_the_seed() {
    let scn = Scenario::radius10(1.0, Mode::Sum).unwrap();
    let seed = Point2::new(11.5, 0.0);
    let cloud = propagate_boundary(&scn, seed, 1).unwrap();
    assert_eq!(cloud.points, vec![seed]);
    assert!(matches!(
        propagate_boundary(&scn, Point2::new(11.6, 0.0), 10),
        Err(sections::Error::SeedOffBoundary(_))
    ));
}

#[test]
fn tabulated_ellipse_cloud() {
    let (k, d1, d2) = ellipse_bodies();
    let scn = Scenario::tabulated(k.clone(), d1, d2, 1.0, Mode::Sum, 1024).unwrap();
    let s = solve_seed(&scn).unwrap();
    let cloud = propagate_boundary(&scn, s.x0, 500).unwrap();
    let worst = cloud.points.iter().map(|&p| k.boundary_distance(p)).fold(0.0, f64::max);
    assert!(worst < 1e-4);
}

#[test]
fn tabulated_clouds_stay_on_the_oracle() {
    for (i, mode) in [(1.0, Mode::Sum), (2.0, Mode::Sum), (1.5, Mode::Diff)] {
        for preset in [Scenario::radius10(i, mode).unwrap(), Scenario::ellipse(i, mode).unwrap()] {
            let k = preset.oracle.clone().unwrap();
            let scn = Scenario::tabulated(k.clone(), preset.d1.clone(), preset.d2.clone(), i, mode, 1024).unwrap();
            let s = solve_seed(&scn).unwrap();
            let cloud = propagate_boundary(&scn, s.x0, 300).unwrap();
            let worst = cloud.points.iter().map(|&p| (k.gauge(p) - 1.0).abs()).fold(0.0, f64::max);
            assert!(worst < 1e-7, "i = {i}, {mode:?}: gauge off by {worst}");
        }
    }
}
