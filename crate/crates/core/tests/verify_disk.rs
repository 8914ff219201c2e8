use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sections::probes::{cap_area_probe, Mode};
use sections::reconstruct::*;
use sections::{ConvexBody2, Point2};

fn pair() -> (ConvexBody2, ConvexBody2) {
    (ConvexBody2::unit_disk(), ConvexBody2::disk(Point2::new(1.9, 0.0), 1.0))
}

#[test]
fn identical_bodies() {
    let k = ConvexBody2::disk(Point2::new(0.95, 0.0), 3.0);
    let (d1, d2) = pair();
    let r = verify_uniqueness(&k, &k, &d1, &d2, 1.0, Mode::Sum, 256, 1e-9).unwrap();
    assert_eq!(r.max, 0.0);
    assert_eq!(r.hausdorff, 0.0);
    assert_eq!(r.verdict, Verdict::Consistent);
}

#[test]
fn translated_disk_is_distinct() {
    let k = ConvexBody2::disk(Point2::new(0.95, 0.0), 3.0);
    let l = k.translated(Point2::new(0.05, 0.0));
    let (d1, d2) = pair();
    let r = verify_uniqueness(&k, &l, &d1, &d2, 1.0, Mode::Sum, 256, 1e-6).unwrap();
    assert!(r.max > 1e-3);
    assert!((r.hausdorff - 0.05).abs() < 1e-9);
    assert_eq!(r.verdict, Verdict::Distinct);
    let s = verify_single(&k, &k, &d1, 1.0, Mode::Sum, 128, 1e-6).unwrap();
    assert_eq!(s.verdict, Verdict::EvidenceOnly);
}

#[test]
fn disk_detection() {
    let d = ConvexBody2::unit_disk();
    let k = ConvexBody2::disk(Point2::ORIGIN, 2.0);
    let r = detect_disk(&cap_area_probe(&k, &d, 512).unwrap(), &d).unwrap();
    match r.verdict {
        DiskVerdict::Disk { center, radius } => {
            assert!(center.norm() < 1e-9 && (radius - 2.0).abs() < 1e-9);
        }
        v => panic!("{v:?}"),
    }
    assert!(r.cap_deviation < 1e-9);
    let e = ConvexBody2::ellipse(Point2::ORIGIN, 4.0, 2.0, 0.0);
    let t = cap_area_probe(&e, &d, 512).unwrap();
    let r = detect_disk(&t, &d).unwrap();
    let caps = t.column(0);
    let mean = caps.iter().sum::<f64>() / caps.len() as f64;
    let top = caps.iter().map(|a| (a - mean).abs()).fold(0.0, f64::max);
    match r.verdict {
        DiskVerdict::NotDisk { witness_theta, deviation } => {
            assert_eq!(deviation, top);
            let j = t.theta.iter().position(|&x| x == witness_theta).unwrap();
            assert_eq!((caps[j] - mean).abs(), top);
        }
        v => panic!("{v:?}"),
    }
    for eps in [1e-3, 0.1] {
        let k = ConvexBody2::disk(Point2::ORIGIN, 1.0 + eps);
        match detect_disk(&cap_area_probe(&k, &d, 256).unwrap(), &d).unwrap().verdict {
            DiskVerdict::Disk { radius, .. } => assert!((radius - 1.0 - eps).abs() < 1e-9),
            v => panic!("{v:?}"),
        }
    }
}

#[test]
fn off_center_disks_are_found() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let rd = rng.gen_range(0.3..1.0);
        let d = ConvexBody2::disk(Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), rd);
        let r = rng.gen_range(2.5..4.0);
        let c = Point2::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let k = ConvexBody2::disk(c, r);
        let rep = detect_disk(&cap_area_probe(&k, &d, 256).unwrap(), &d).unwrap();
        match rep.verdict {
            DiskVerdict::Disk { center, radius } => {
                assert!(center.dist(c) < 1e-6 && (radius - r).abs() < 1e-6, "{center:?} {radius} vs {c:?} {r}");
            }
            v => panic!("{v:?} {}", rep.fit_residual),
        }
    }
}
