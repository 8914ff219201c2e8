//! The acceptance suite: closed-form oracles and randomized checks, one outcome per criterion.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, FRAC_PI_8, PI, TAU};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::polygon::{area, convex_hull};
use crate::geometry::tangent::common_tangents;
use crate::geometry::{ConvexBody2, Dir2, Line2, Point2};
use crate::measures::{lemma32_quantity, nu_measure, tangent_frame_integral, Lemma32Frame, Region2, TangentChart};
use crate::phi::{
    max_angular_gap, orbit, phi_body, rotation_orbit, rotation_period, ChordDataSource, OrbitGeometry, OrbitStop,
    PhiConfig,
};
use crate::probes::{
    cap_area_probe, cap_derivative_to_rho2_diff, fmt_f64, revolution_section_area, tangent_chord_probe,
    tangent_chord_record, Mode, Payload, Plane3, Profile,
};
use crate::reconstruct::{
    ellipse_bodies, hausdorff_distance, propagate_boundary, solve_seed, verify_uniqueness, Scenario,
};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2d5e_c710_u64;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteConfig {
    pub seed: Option<u64>,
    /// Comma-separated families, aliases, criterion numbers or name substrings.
    pub filter: Option<String>,
    /// Negative control for criterion 8: one pair claims a perturbation of this size but carries the data of the
    /// unperturbed body.
    pub inject_perturbation: Option<f64>,
}

impl SuiteConfig {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub family: &'static str,
    pub passed: bool,
    pub detail: String,
    /// `(file name, contents)` of the CSV artifacts.
    #[serde(skip)]
    pub artifacts: Vec<(String, String)>,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!("criterion {:>2} [{}] {}: {} ({})", self.id, self.family, self.name, if self.passed { "PASS" } else { "FAIL" }, self.detail)
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    family: &'static str,
    alias: &'static str,
    run: fn(&SuiteConfig) -> Result<Outcome>,
}

/// What a check returns before it is labelled.
struct Outcome {
    passed: bool,
    detail: String,
    artifacts: Vec<(String, String)>,
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "constant chord of concentric disks", family: "probes", alias: "chord", run: c1_constant_chord },
    Criterion { id: 2, name: "lemma quantity closed form", family: "measures", alias: "nu", run: c2_lemma },
    Criterion { id: 3, name: "orbit contraction", family: "orbit", alias: "phi", run: c3_orbit },
    Criterion { id: 4, name: "boundary preservation", family: "phi", alias: "orbit", run: c4_boundary },
    Criterion { id: 5, name: "nu oracles", family: "measures", alias: "nu", run: c5_nu },
    Criterion { id: 6, name: "cap derivative identity", family: "probes", alias: "cap", run: c6_cap },
    Criterion { id: 7, name: "ellipse reconstruction", family: "reconstruct", alias: "cloud", run: c7_reconstruct },
    Criterion { id: 8, name: "distinguishability", family: "verify", alias: "uniqueness", run: c8_distinct },
    Criterion { id: 9, name: "rotation dichotomy", family: "rotation", alias: "disk", run: c9_rotation },
    Criterion { id: 10, name: "revolution sections", family: "revolution", alias: "ball", run: c10_revolution },
    Criterion { id: 11, name: "determinism", family: "determinism", alias: "csv", run: c11_determinism },
];

/// Families and aliases accepted by the filter.
pub fn families() -> Vec<&'static str> {
    let mut v: Vec<&str> = CRITERIA.iter().flat_map(|c| [c.family, c.alias]).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn selected(c: &Criterion, filter: Option<&str>) -> bool {
    let Some(f) = filter.map(str::trim).filter(|f| !f.is_empty()) else { return true };
    f.split(',').map(|p| p.trim().to_ascii_lowercase()).filter(|p| !p.is_empty()).any(|p| {
        p == c.family || p == c.alias || p == c.id.to_string() || c.name.contains(p.as_str())
    })
}

/// Runs the criteria the filter selects, in order.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter(|c| selected(c, cfg.filter.as_deref())).map(|c| run_one(c, cfg)).collect()
}

fn run_one(c: &Criterion, cfg: &SuiteConfig) -> CriterionOutcome {
    let (passed, detail, artifacts) = match (c.run)(cfg) {
        Ok(o) => (o.passed, o.detail, o.artifacts),
        Err(e) => (false, format!("error: {e}"), Vec::new()),
    };
    CriterionOutcome { id: c.id, name: c.name, family: c.family, passed, detail, artifacts }
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail, artifacts: Vec::new() }
}

fn csv_rows(header: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        let cells: Vec<String> = r.into_iter().map(fmt_f64).collect();
        let _ = writeln!(s, "{}", cells.join(","));
    }
    s
}

fn c1_constant_chord(_: &SuiteConfig) -> Result<Outcome> {
    let k = ConvexBody2::disk(Point2::ORIGIN, 3.0);
    let d = ConvexBody2::unit_disk();
    let table = tangent_chord_probe(&k, &d, 360)?;
    let want = 4.0 * 2f64.sqrt();
    let worst = table.values.iter().map(|v| (v[0] + v[1] - want).abs()).fold(0.0, f64::max);
    let mut o = outcome(worst < 1e-9, format!("max |chord - 4√2| = {worst:.3e} over {} frames", table.len()));
    o.artifacts.push(("c01_chords.csv".into(), table.to_csv()));
    Ok(o)
}

fn c2_lemma(_: &SuiteConfig) -> Result<Outcome> {
    let (mut rel, mut lo, mut hi) = (0.0f64, f64::INFINITY, 0.0f64);
    for r in [0.5, 1.0, 3.0, 10.0] {
        let f = Lemma32Frame::at_normal(ConvexBody2::disk(Point2::new(0.4, -1.0), r), 2.2, 0.7 * r)?;
        for k in 0..=300 {
            let t = 1e-3 + (0.3 - 1e-3) * k as f64 / 300.0;
            let q = lemma32_quantity(&f, t)?;
            let want = r * (1.0 - t.cos());
            rel = rel.max((q - want).abs() / want);
            let ratio = q / t.sin().powi(2) / r;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    let ok = rel < 1e-9 && lo >= 0.49 && hi <= 0.52;
    Ok(outcome(ok, format!("rel err {rel:.3e}, quantity/(R sin²θ) in [{lo:.5}, {hi:.5}]")))
}

fn c3_orbit(_: &SuiteConfig) -> Result<Outcome> {
    let k = ConvexBody2::disk(Point2::new(1.5, 0.0), 10.0);
    let d1 = ConvexBody2::unit_disk();
    let d2 = ConvexBody2::disk(Point2::new(3.0, 0.0), 1.0);
    let t = common_tangents(&d1, &d2).require()?;
    let up = if t[0].line.foot().y > t[1].line.foot().y { t[0] } else { t[1] };
    let mut geom = OrbitGeometry::from_oracle(&up, &k)?;
    geom.margin = 1e-5;
    let (b1, b2) = geom.branches(&d1, &d2)?;
    let r = 99f64.sqrt();
    let k0 = ((r - 1.5) / (r + 1.5)).powi(2);
    let src = ChordDataSource::Oracle(k.clone());
    let q0 = geom.start_at_angle(&d1, &k, FRAC_PI_6)?;
    let mut ok = true;
    let mut detail = Vec::new();
    let mut artifacts = Vec::new();
    for i in [1.0, 2.0] {
        let c1 = PhiConfig::new(d1.clone(), i, Mode::Sum, b1)?;
        let c2 = PhiConfig::new(d2.clone(), i, Mode::Sum, b2)?;
        let tr = orbit(q0, &c1, &c2, &src, &src, &geom, OrbitStop { theta_min: 1e-7, max_iter: 200 })?;
        let decreasing = tr.theta.windows(2).all(|w| w[1] < w[0]);
        let small = tr.theta.iter().position(|&t| t < 1e-6);
        let inside: Vec<f64> = tr.ratios.iter().zip(&tr.inside).filter(|(_, &x)| x).map(|(&r, _)| r).collect();
        let worst = inside.iter().copied().fold(0.0, f64::max);
        let pass = decreasing && small.is_some_and(|s| s <= 25) && !inside.is_empty() && worst <= k0 + 1e-9;
        ok &= pass;
        detail.push(format!(
            "i={i}: θ<1e-6 at step {}, max ratio {worst:.5} vs k {k0:.5} on {} steps",
            small.map_or("-".into(), |s| s.to_string()),
            inside.len()
        ));
        artifacts.push((format!("c03_orbit_i{i}.csv"), tr.to_csv()));
    }
    Ok(Outcome { passed: ok, detail: detail.join("; "), artifacts })
}

fn c4_boundary(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed() ^ 4);
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for scn in [Scenario::radius10(1.0, Mode::Sum)?, Scenario::ellipse(1.0, Mode::Sum)?, Scenario::ellipse(2.0, Mode::Sum)?]
    {
        let k = scn.oracle.clone().expect("preset has an oracle");
        let (b1, b2) = OrbitGeometry::from_oracle(&scn.tangents[0], &k)?.branches(&scn.d1, &scn.d2)?;
        let (c1, c2) = scn.configs(b1, b2)?;
        let maps = [c1.with_branch(b1.opposite()), c2.with_branch(b2.opposite()), c1, c2];
        let src = ChordDataSource::Oracle(k.clone());
        for _ in 0..1000 {
            let q = k.boundary_point(rng.gen_range(0.0..TAU));
            for m in &maps {
                worst = worst.max(k.boundary_distance(phi_body(q, m, &src)?));
                count += 1;
            }
        }
    }
    Ok(outcome(worst < 1e-8, format!("{count} images, max distance to boundary {worst:.3e}")))
}

fn random_polygon(rng: &mut ChaCha8Rng) -> Vec<Point2> {
    loop {
        let c = Point2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let n = rng.gen_range(3..12);
        let pts: Vec<Point2> =
            (0..n).map(|_| c + Dir2::from_angle(rng.gen_range(0.0..TAU)) * rng.gen_range(0.2..2.0)).collect();
        let hull = convex_hull(&pts);
        if hull.len() >= 3 && area(&hull) > 1e-3 {
            return hull;
        }
    }
}

fn c5_nu(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed() ^ 5);
    let mut area_err = 0.0f64;
    for _ in 0..50 {
        let poly = random_polygon(&mut rng);
        let l = Line2::new(Dir2::from_angle(rng.gen_range(0.0..TAU)), rng.gen_range(-1.0..1.0));
        let a = area(&poly);
        let v = nu_measure(&Region2::new(poly, l), 2.0)?.value().unwrap_or(f64::NAN);
        area_err = area_err.max((v - a).abs() / a);
    }
    let x_axis = Line2::new(Dir2::from_angle(FRAC_PI_2), 0.0);
    let tri = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 1.0), Point2::new(-1.0, 1.0)];
    let tri_v = nu_measure(&Region2::new(tri, x_axis), 1.0)?.value().unwrap_or(f64::NAN);
    let sq = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), Point2::new(0.0, 1.0)];
    let sq_div = nu_measure(&Region2::new(sq, x_axis), 1.0)?.is_divergent();
    let mut frame_err = 0.0f64;
    let mut rows = Vec::new();
    for j in 0..10 {
        let rk = rng.gen_range(2.5..3.5);
        let k = ConvexBody2::disk(Point2::ORIGIN, rk);
        let l = ConvexBody2::disk(
            Point2::new(rng.gen_range(-0.05..0.05), rng.gen_range(-0.05..0.05)),
            rk + rng.gen_range(0.05..0.2),
        );
        let d = ConvexBody2::disk(Point2::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)), rng.gen_range(0.5..1.0));
        let base = rng.gen_range(0.0..TAU);
        let chart = TangentChart::new(d, base, Dir2::from_angle(base - FRAC_PI_2));
        let a = rng.gen_range(0.05..0.3);
        let range = (a, a + rng.gen_range(0.05..0.2));
        let i = [1.0, 1.5, 2.0, 3.0, 0.7][j % 5];
        let v = tangent_frame_integral(&k, &l, &chart, i, range)?;
        let w = nu_measure(&chart.region(&k, &l, range, 4096)?, i)?.value().unwrap_or(f64::NAN);
        frame_err = frame_err.max((v - w).abs() / w);
        rows.push(vec![i, v, w]);
    }
    let tri_err = (tri_v - 2.0).abs() / 2.0;
    let ok = area_err < 1e-8 && tri_err < 1e-6 && sq_div && frame_err < 1e-5;
    let mut o = outcome(
        ok,
        format!(
            "ν₂ vs area {area_err:.2e}, ν₁(triangle) {tri_v:.9}, square divergent: {sq_div}, frame vs polygon {frame_err:.2e}"
        ),
    );
    o.artifacts.push(("c05_frame_integrals.csv".into(), csv_rows("i,frame,polygon", rows)));
    Ok(o)
}

fn c6_cap(_: &SuiteConfig) -> Result<Outcome> {
    let cases = [
        ("disk", ConvexBody2::disk(Point2::new(0.4, 0.0), 3.0), ConvexBody2::unit_disk()),
        ("ellipse", ConvexBody2::ellipse(Point2::new(0.2, 0.1), 3.0, 2.0, 0.3), ConvexBody2::disk(Point2::new(-0.3, 0.2), 0.8)),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    let mut rows = Vec::new();
    for (name, k, d) in &cases {
        let table = cap_area_probe(k, d, 512)?;
        let mut worst = 0.0f64;
        for j in 0..64 {
            let t = TAU * (j as f64 + 0.25) / 64.0;
            let Payload::Chord(c) = tangent_chord_record(k, d, t)?.payload else { continue };
            let want = 0.5 * (c.rho_plus.powi(2) - c.rho_minus.powi(2));
            let got = cap_derivative_to_rho2_diff(&table, d, t)?;
            let excess = (got - want).abs() / 1e-5f64.max(1e-3 * want.abs());
            worst = worst.max(excess);
            rows.push(vec![t, got, want]);
        }
        ok &= worst <= 1.0;
        detail.push(format!("{name}: worst error/tolerance {worst:.3}"));
    }
    let mut o = outcome(ok, detail.join("; "));
    o.artifacts.push(("c06_cap_derivative.csv".into(), csv_rows("theta,derivative,direct", rows)));
    Ok(o)
}

fn c7_reconstruct(_: &SuiteConfig) -> Result<Outcome> {
    let (k, d1, d2) = ellipse_bodies();
    let scn = Scenario::tabulated(k.clone(), d1, d2, 1.0, Mode::Sum, 1024)?;
    let s = solve_seed(&scn)?;
    let cloud = propagate_boundary(&scn, s.x0, 500)?;
    let worst = cloud.points.iter().map(|&p| k.boundary_distance(p)).fold(0.0, f64::max);
    let mut o = outcome(
        worst < 1e-4,
        format!("{} points, {} refused, one-sided Hausdorff {worst:.3e}", cloud.len(), cloud.refused),
    );
    o.artifacts.push(("c07_cloud.csv".into(), cloud.to_csv()));
    Ok(o)
}

const INNER_1: (f64, f64, f64) = (-0.9, 0.0, 0.6);
const INNER_2: (f64, f64, f64) = (0.9, 0.2, 0.5);

fn holds_inner(b: &ConvexBody2, d1: &ConvexBody2, d2: &ConvexBody2) -> bool {
    b.validate().is_ok() && d1.polygonize(64).into_iter().chain(d2.polygonize(64)).all(|p| b.contains(p, -0.05))
}

fn random_body(rng: &mut ChaCha8Rng) -> ConvexBody2 {
    let c = Point2::new(rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2));
    if rng.gen_bool(0.5) {
        ConvexBody2::ellipse(c, rng.gen_range(2.6..3.4), rng.gen_range(2.0..2.6), rng.gen_range(0.0..PI))
    } else {
        let a0 = rng.gen_range(2.8..3.4);
        let (cos, sin): (Vec<f64>, Vec<f64>) = (1..=5)
            .map(|m| {
                let amp = if m == 1 { 0.2 } else { a0 / (8.0 * (m * m - 1) as f64) };
                (rng.gen_range(-amp..amp), rng.gen_range(-amp..amp))
            })
            .unzip();
        ConvexBody2::series(a0, cos, sin)
    }
}

/// A body near `k` of one of several kinds.
fn perturbed(k: &ConvexBody2, rng: &mut ChaCha8Rng, kind: usize) -> ConvexBody2 {
    match kind {
        0 => k.translated(Dir2::from_angle(rng.gen_range(0.0..TAU)) * rng.gen_range(0.015..0.2)),
        1 => k.scaled_about(k.interior_point(), 1.0 + rng.gen_range(-0.05..0.05)),
        2 => {
            let n = rng.gen_range(12..40);
            let mut ts: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
            ts.sort_by(f64::total_cmp);
            ConvexBody2::polygon(ts.into_iter().map(|t| k.boundary_point(t)).collect())
        }
        3 => {
            let n = 1024;
            let (mut lo, mut cos, mut sin) = (0.0, vec![0.0; 6], vec![0.0; 6]);
            for j in 0..n {
                let t = TAU * j as f64 / n as f64;
                let h = k.support(t);
                lo += h / n as f64;
                for m in 0..6 {
                    let (s, c) = ((m + 1) as f64 * t).sin_cos();
                    cos[m] += 2.0 * h * c / n as f64;
                    sin[m] += 2.0 * h * s / n as f64;
                }
            }
            let m = rng.gen_range(2..6);
            let amp = rng.gen_range(0.01..0.05);
            cos[m - 1] += amp * rng.gen_range(-1.0..1.0);
            sin[m - 1] += amp * rng.gen_range(-1.0..1.0);
            ConvexBody2::series(lo, cos, sin)
        }
        _ => random_body(rng),
    }
}

fn c8_distinct(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed() ^ 8);
    let d1 = ConvexBody2::disk(Point2::new(INNER_1.0, INNER_1.1), INNER_1.2);
    let d2 = ConvexBody2::disk(Point2::new(INNER_2.0, INNER_2.1), INNER_2.2);
    let mut rows = Vec::new();
    let mut false_consistent = 0;
    let mut least = f64::INFINITY;
    let mut pairs = 0;
    while pairs < 200 {
        let k = random_body(&mut rng);
        let injected = pairs == 0 && cfg.inject_perturbation.is_some();
        let l = match cfg.inject_perturbation {
            Some(eps) if injected => k.translated(Point2::new(eps, 0.0)),
            _ => perturbed(&k, &mut rng, pairs % 5),
        };
        if !holds_inner(&k, &d1, &d2) || !holds_inner(&l, &d1, &d2) {
            continue;
        }
        let i = [1.0, 2.0, 3.0][pairs % 3];
        // the fixture's perturbation never reaches the probe
        let probe_l = if injected { &k } else { &l };
        let rep = verify_uniqueness(&k, probe_l, &d1, &d2, i, Mode::Sum, 256, 1e-6)?;
        let hausdorff = hausdorff_distance(&k, &l);
        if !injected && !(hausdorff > 0.01) {
            continue;
        }
        if !(rep.max > 1e-6) {
            false_consistent += 1;
        }
        least = least.min(rep.max);
        rows.push(vec![pairs as f64, (pairs % 5) as f64, i, hausdorff, rep.max, rep.l2]);
        pairs += 1;
    }
    let control = match cfg.inject_perturbation {
        Some(eps) => format!(", negative control injected at {eps:e}"),
        None => String::new(),
    };
    let mut o = outcome(
        false_consistent == 0,
        format!("{pairs} pairs, {false_consistent} false-consistent, smallest discrepancy {least:.3e}{control}"),
    );
    o.artifacts.push(("c08_pairs.csv".into(), csv_rows("pair,kind,i,hausdorff,discrepancy,l2", rows)));
    Ok(o)
}

fn c9_rotation(_: &SuiteConfig) -> Result<Outcome> {
    let p1 = rotation_period(1.0, 64);
    let p8 = rotation_period(FRAC_PI_8.tan(), 64);
    let orbit = rotation_orbit(0.0, 1.2, 10_000);
    let gap = max_angular_gap(&orbit);
    let ok = p1 == Some(4) && p8 == Some(8) && gap < TAU * 1e-3;
    let mut o = outcome(ok, format!("periods {p1:?} and {p8:?}, r=1.2 gap {gap:.3e} after 10⁴ steps"));
    let four = rotation_orbit(0.0, 1.0, 8);
    o.artifacts.push(("c09_four_cycle.csv".into(), csv_rows("theta", four.into_iter().map(|t| vec![t]))));
    Ok(o)
}

const MC_SAMPLES: u64 = 10_000_000;
const MC_THREADS: u64 = 8;

/// Monte-Carlo area of the plane section over its bounding box.
fn monte_carlo_section(profile: &Profile, plane: &Plane3, seed: u64) -> Result<(f64, f64)> {
    let basis = plane.basis()?;
    let inside = |s: f64, t: f64| profile.contains(plane.point(&basis, s, t));
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for j in 0..720 {
        let (sn, cs) = (TAU * j as f64 / 720.0).sin_cos();
        let (mut a, mut b) = (0.0, 1.0);
        while inside(b * cs, b * sn) {
            b *= 2.0;
        }
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if inside(m * cs, m * sn) {
                a = m;
            } else {
                b = m;
            }
        }
        lo = [lo[0].min(b * cs), lo[1].min(b * sn)];
        hi = [hi[0].max(b * cs), hi[1].max(b * sn)];
    }
    let pad = 0.01 * (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let (lo, hi) = ([lo[0] - pad, lo[1] - pad], [hi[0] + pad, hi[1] + pad]);
    let per = MC_SAMPLES / MC_THREADS;
    let hits: u64 = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..MC_THREADS)
            .map(|c| {
                sc.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(c);
                    (0..per).filter(|_| inside(rng.gen_range(lo[0]..hi[0]), rng.gen_range(lo[1]..hi[1]))).count() as u64
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling thread")).sum()
    });
    let n = (per * MC_THREADS) as f64;
    let p = hits as f64 / n;
    let box_area = (hi[0] - lo[0]) * (hi[1] - lo[1]);
    Ok((p * box_area, box_area * (p * (1.0 - p) / n).sqrt()))
}

fn c10_revolution(cfg: &SuiteConfig) -> Result<Outcome> {
    let r = 2.0;
    let ball = Profile::new(ConvexBody2::disk(Point2::ORIGIN, r))?;
    let mut rows = Vec::new();
    let mut ball_err = 0.0f64;
    for (z, tilt) in [(0.0, 0.0), (1.0, 0.0), (1.5, 0.0), (0.5, PI / 3.0), (-1.2, 1.0), (0.3, FRAC_PI_2)] {
        let n = [tilt.sin(), 0.0, tilt.cos()];
        let a = revolution_section_area(&ball, &Plane3::new(z, n))?;
        let d = z * tilt.cos();
        let want = PI * (r * r - d * d);
        ball_err = ball_err.max((a - want).abs() / want);
        rows.push(vec![z, tilt, a, want]);
    }
    let spheroid = Profile::new(ConvexBody2::ellipse(Point2::ORIGIN, 2.0, 1.2, 0.0))?;
    let tilt = 50f64.to_radians();
    let plane = Plane3::new(0.3, [tilt.sin(), 0.0, tilt.cos()]);
    let quad = revolution_section_area(&spheroid, &plane)?;
    let (mc, se) = monte_carlo_section(&spheroid, &plane, cfg.seed() ^ 10)?;
    let mc_err = (quad - mc).abs() / mc;
    rows.push(vec![0.3, tilt, quad, mc]);
    let mut o = outcome(
        ball_err < 1e-6 && mc_err < 1e-3,
        format!("ball rel err {ball_err:.2e}; oblique quadrature {quad:.6} vs Monte-Carlo {mc:.6} ± {se:.1e} (rel {mc_err:.2e})"),
    );
    o.artifacts.push(("c10_sections.csv".into(), csv_rows("axis_point,tilt,area,reference", rows)));
    Ok(o)
}

/// Criteria whose artifacts are regenerated for the determinism check.
const REPLAYED: [u32; 6] = [1, 3, 5, 7, 9, 10];

fn c11_determinism(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut files = 0;
    let mut mismatched = Vec::new();
    for c in CRITERIA.iter().filter(|c| REPLAYED.contains(&c.id)) {
        let a = (c.run)(cfg)?;
        let b = (c.run)(cfg)?;
        files += a.artifacts.len();
        if a.artifacts != b.artifacts {
            mismatched.push(c.id.to_string());
        }
    }
    let detail = if mismatched.is_empty() {
        format!("{files} CSV files byte-identical across two runs")
    } else {
        format!("CSV output differs for criteria {}", mismatched.join(", "))
    };
    Ok(outcome(mismatched.is_empty() && files > 0, detail))
}
