use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use sections::acceptance::{run_suite, SuiteConfig};
use sections::geometry::tangent::common_tangents;
use sections::measures::{nu_measure, NuValue, Region2};
use sections::phi::{
    max_angular_gap, orbit, rotation_orbit, rotation_period, rotation_point, ChordDataSource, OrbitGeometry, OrbitStop,
    PhiConfig,
};
use sections::probes::{
    cap_area_probe, fmt_f64, functional_table, halfspace_volume_probe, point_chord_probe, tangent_chord_probe,
    vertex_cone_probe, DataTable, Mode, ProbeKind,
};
use sections::reconstruct::{
    detect_disk, propagate_boundary, solve_seed, verify_single, verify_uniqueness, DiskVerdict, Scenario,
};
use sections::svg::Svg;
use sections::{ConvexBody2, Dir2, Line2, Point2};

use crate::config::{ConfigError, DataSourceKind, ScenarioConfig};
use crate::report::RunReport;

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Io(std::io::Error),
    Core(sections::Error),
    /// Ran to completion but a check failed.
    Failed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<sections::Error> for CliError {
    fn from(e: sections::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// 1 for bad input, 2 for numerical failure.
    pub fn exit_code(&self) -> u8 {
        use sections::Error as E;
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Failed(_) => 2,
            CliError::Core(e) => match e {
                E::NoRoot(_)
                | E::OrbitEscaped(_)
                | E::DataExhausted { .. }
                | E::NegativePower(_)
                | E::FrontierStalled { .. }
                | E::SeedOffBoundary(_)
                | E::NonDecreasingAngle { .. }
                | E::RatioNotContracting(_)
                | E::NotComparable(_)
                | E::ChartOverflow(_) => 2,
                _ => 1,
            },
        }
    }
}

pub type CmdResult = Result<(), CliError>;

fn make_table(cfg: &ScenarioConfig, kind: ProbeKind, k: &ConvexBody2, d: Option<&ConvexBody2>, grid: usize) -> Result<DataTable, CliError> {
    let need_d = || d.ok_or_else(|| ConfigError(format!("inner: probe '{}' needs an inner body", kind.name())));
    let need_p = || cfg.point.ok_or_else(|| ConfigError(format!("point: probe '{}' needs a point", kind.name())));
    Ok(match kind {
        ProbeKind::Chord => tangent_chord_probe(k, need_d()?, grid)?,
        ProbeKind::Cap => cap_area_probe(k, need_d()?, grid)?,
        ProbeKind::PointChord => point_chord_probe(k, need_p()?, grid)?,
        ProbeKind::HalfSpace => halfspace_volume_probe(k, need_p()?, grid)?,
        ProbeKind::VertexCone => {
            let v = cfg.vertex.ok_or_else(|| ConfigError("vertex: vertex_cone probe needs a vertex index".into()))?;
            vertex_cone_probe(k, need_d()?, v, grid)?
        }
        ProbeKind::ChordSum => functional_table(&tangent_chord_probe(k, need_d()?, grid)?, cfg.i, Mode::Sum)?,
        ProbeKind::ChordDiff => functional_table(&tangent_chord_probe(k, need_d()?, grid)?, cfg.i, Mode::Diff)?,
    })
}

fn column_stats(t: &DataTable, c: usize) -> (f64, f64, f64, f64) {
    let v = t.column(c);
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (min, max, mean, var.sqrt())
}

pub fn probe(cfg: &ScenarioConfig, out: &Path) -> CmdResult {
    let mut rep = RunReport::new("probe", cfg, out);
    let (kname, k) = cfg.outer_body()?;
    let point_probe = matches!(cfg.probe, ProbeKind::PointChord | ProbeKind::HalfSpace);
    let inners: Vec<Option<&str>> =
        if point_probe || cfg.inner.is_empty() { vec![None] } else { cfg.inner.iter().map(|s| Some(s.as_str())).collect() };
    for dname in inners {
        let d = dname.map(|n| cfg.body(n));
        let table = make_table(cfg, cfg.probe, k, d, cfg.grid_size)?;
        let tag = dname.unwrap_or("point");
        rep.write(&format!("probe_{kname}_{tag}.csv"), &table.to_csv())?;
        let cols = table.values.first().map_or(0, |v| v.len());
        for c in 0..cols {
            let (min, max, mean, sd) = column_stats(&table, c);
            rep.number(&format!("{tag}.col{c}.min"), min);
            rep.number(&format!("{tag}.col{c}.max"), max);
            rep.number(&format!("{tag}.col{c}.mean"), mean);
            rep.number(&format!("{tag}.col{c}.stdev"), sd);
        }
        rep.count(&format!("{tag}.frames"), table.len());
        rep.count(&format!("{tag}.excluded_gaps"), table.excluded.len());
        if cfg.probe == ProbeKind::Chord {
            let f = functional_table(&table, cfg.i, cfg.mode)?;
            rep.write(&format!("functional_{kname}_{tag}.csv"), &f.to_csv())?;
        }
        if let Some(fine) = cfg.refine_grid {
            let direct = make_table(cfg, cfg.probe, k, d, fine)?;
            let mut err = 0.0f64;
            for (t, v) in direct.theta.iter().zip(&direct.values) {
                if table.in_gap(*t) {
                    continue;
                }
                for (c, x) in v.iter().enumerate() {
                    err = err.max((table.interp(c, *t) - x).abs());
                }
            }
            rep.number(&format!("{tag}.interp_error_vs_grid_{fine}"), err);
            rep.write(&format!("probe_{kname}_{tag}_grid{fine}.csv"), &direct.to_csv())?;
        }
    }
    Ok(rep.finish()?)
}

pub fn orbit_cmd(cfg: &ScenarioConfig, out: &Path) -> CmdResult {
    if let Some(rot) = cfg.rotation {
        return rotation(cfg, rot.r, rot.theta0, rot.steps, out);
    }
    let mut rep = RunReport::new("orbit", cfg, out);
    let (_, k) = cfg.outer_body()?;
    let (d1, d2) = cfg.inner_pair()?;
    let tangents = common_tangents(d1, d2).require()?;
    // the tangent with the stronger contraction
    let mut best: Option<(f64, usize, OrbitGeometry)> = None;
    for (j, t) in tangents.iter().enumerate() {
        let g = OrbitGeometry::from_oracle(t, k)?;
        let kk = g.contraction()?.k;
        if best.as_ref().map_or(true, |b| kk < b.0) {
            best = Some((kk, j, g));
        }
    }
    let (_, j, mut geom) = best.expect("two tangents");
    let s = &cfg.orbit;
    geom.margin = s.margin;
    let (b1, b2) = geom.branches(d1, d2)?;
    let c1 = PhiConfig::new(d1.clone(), cfg.i, cfg.mode, b1)?;
    let c2 = PhiConfig::new(d2.clone(), cfg.i, cfg.mode, b2)?;
    let (src1, src2) = if s.tabulated {
        let t1 = functional_table(&tangent_chord_probe(k, d1, cfg.grid_size)?, cfg.i, cfg.mode)?;
        let t2 = functional_table(&tangent_chord_probe(k, d2, cfg.grid_size)?, cfg.i, cfg.mode)?;
        (ChordDataSource::Table(t1), ChordDataSource::Table(t2))
    } else {
        (ChordDataSource::Oracle(k.clone()), ChordDataSource::Oracle(k.clone()))
    };
    let q0 = geom.start_at_angle(d1, k, s.start_angle)?;
    let tr = orbit(q0, &c1, &c2, &src1, &src2, &geom, OrbitStop { theta_min: s.theta_min, max_iter: s.max_iter })?;
    rep.write("orbit.csv", &tr.to_csv())?;
    let mut svg = Svg::around(&[k, d1, d2]);
    svg.body(k, "gray").body(d1, "steelblue").body(d2, "steelblue");
    svg.line(&tangents[j].line, "black").line(&tangents[1 - j].line, "darkgray");
    svg.polyline(&tr.points, "crimson").points(&tr.points, "crimson", 3.0).points(&tr.images, "seagreen", 2.0);
    rep.write("orbit.svg", &svg.finish())?;
    rep.count("tangent", j);
    rep.number("k", tr.k());
    rep.count("steps", tr.points.len());
    rep.number("theta_first", tr.theta.first().copied().unwrap_or(f64::NAN));
    rep.number("theta_last", tr.theta.last().copied().unwrap_or(f64::NAN));
    let inside: Vec<f64> = tr.ratios.iter().zip(&tr.inside).filter(|(_, &x)| x).map(|(&r, _)| r).collect();
    rep.count("steps_inside", inside.len());
    rep.number("max_ratio_inside", inside.iter().copied().fold(0.0, f64::max));
    Ok(rep.finish()?)
}

fn rotation(cfg: &ScenarioConfig, r: f64, theta0: f64, steps: usize, out: &Path) -> CmdResult {
    let mut rep = RunReport::new("orbit", cfg, out);
    let angles = rotation_orbit(theta0, r, steps);
    let pts: Vec<Point2> = angles.iter().map(|&t| rotation_point(t, r)).collect();
    let mut csv = String::from("j,theta,x,y\n");
    for (j, (t, p)) in angles.iter().zip(&pts).enumerate() {
        let _ = writeln!(csv, "{j},{},{},{}", fmt_f64(*t), fmt_f64(p.x), fmt_f64(p.y));
    }
    rep.write("rotation.csv", &csv)?;
    let unit = ConvexBody2::unit_disk();
    let mut frame = pts.clone();
    frame.extend(unit.polygonize(16));
    let mut svg = Svg::fit(&frame);
    svg.body(&unit, "steelblue");
    let mut path = pts.clone();
    if let Some(&first) = pts.first() {
        path.push(first);
    }
    svg.polyline(&path, "darkorange").points(&pts, "crimson", 4.0);
    rep.write("rotation.svg", &svg.finish())?;
    rep.number("r", r);
    rep.count("steps", steps);
    match rotation_period(r, steps as u64) {
        Some(q) => rep.count("period", q as usize),
        None => rep.text("period", "none"),
    }
    rep.number("max_angular_gap", max_angular_gap(&angles));
    Ok(rep.finish()?)
}

pub fn reconstruct(cfg: &ScenarioConfig, out: &Path) -> CmdResult {
    let mut rep = RunReport::new("reconstruct", cfg, out);
    let (d1, d2) = cfg.inner_pair()?;
    let outer = cfg.outer.as_deref().map(|n| cfg.body(n).clone());
    let need_k = || outer.clone().ok_or_else(|| ConfigError("outer: required unless reconstruct.source is 'files'".into()));
    let s = &cfg.reconstruct;
    let scn = match s.source {
        DataSourceKind::Table => Scenario::tabulated(need_k()?, d1.clone(), d2.clone(), cfg.i, cfg.mode, cfg.grid_size)?,
        DataSourceKind::Oracle => Scenario::oracle(need_k()?, d1.clone(), d2.clone(), cfg.i, cfg.mode)?,
        DataSourceKind::Files => {
            let read = |p: &Path| -> Result<DataTable, CliError> {
                let text = std::fs::read_to_string(p).map_err(|e| ConfigError(format!("{}: {e}", p.display())))?;
                Ok(DataTable::from_csv(&text)?)
            };
            let t1 = read(&s.tables[0])?;
            let t2 = read(&s.tables[1])?;
            Scenario::from_tables(d1.clone(), d2.clone(), t1, t2, cfg.i, cfg.mode, outer.clone())?
        }
    };
    let seed = solve_seed(&scn)?;
    rep.number("seed.x", seed.x0.x);
    rep.number("seed.y", seed.x0.y);
    rep.number("seed.residual", seed.residual);
    rep.number("seed.k", seed.k);
    rep.count("seed.tangent", seed.tangent);
    let cloud = propagate_boundary(&scn, seed.x0, s.budget)?;
    rep.count("points", cloud.len());
    rep.count("refused", cloud.refused);
    if let Some(k) = &outer {
        let worst = cloud.points.iter().map(|&p| k.boundary_distance(p)).fold(0.0, f64::max);
        rep.number("hausdorff_to_outer", worst);
    }
    rep.write("cloud.csv", &cloud.to_csv())?;
    rep.write("cloud.svg", &cloud.to_svg(&scn))?;
    Ok(rep.finish()?)
}

pub fn verify(cfg: &ScenarioConfig, out: &Path) -> CmdResult {
    let mut rep = RunReport::new("verify", cfg, out);
    let (_, k) = cfg.outer_body()?;
    let l = cfg.body(cfg.compare.as_deref().ok_or_else(|| ConfigError("compare: verify needs a second body".into()))?);
    let tol = cfg.tolerances.discrepancy;
    let r = match cfg.inner.as_slice() {
        [a, b] => verify_uniqueness(k, l, cfg.body(a), cfg.body(b), cfg.i, cfg.mode, cfg.grid_size, tol)?,
        [a] => verify_single(k, l, cfg.body(a), cfg.i, cfg.mode, cfg.grid_size, tol)?,
        _ => return Err(ConfigError("inner: verify needs one or two inner bodies".into()).into()),
    };
    rep.write("discrepancy.csv", &r.to_csv())?;
    rep.number("max", r.max);
    rep.number("l2", r.l2);
    rep.number("hausdorff", r.hausdorff);
    rep.text("verdict", r.verdict.name());
    Ok(rep.finish()?)
}

pub fn detect(cfg: &ScenarioConfig, out: &Path) -> CmdResult {
    let mut rep = RunReport::new("detect-disk", cfg, out);
    let (_, k) = cfg.outer_body()?;
    let d = cfg.inner.first().map(|n| cfg.body(n)).ok_or_else(|| ConfigError("inner: detect-disk needs an inner disk".into()))?;
    let table = cap_area_probe(k, d, cfg.grid_size)?;
    rep.write("caps.csv", &table.to_csv())?;
    let r = detect_disk(&table, d)?;
    match r.verdict {
        DiskVerdict::Disk { center, radius } => {
            rep.text("verdict", "disk");
            rep.number("center.x", center.x);
            rep.number("center.y", center.y);
            rep.number("radius", radius);
        }
        DiskVerdict::NotDisk { witness_theta, deviation } => {
            rep.text("verdict", "not_disk");
            rep.number("witness_theta", witness_theta);
            rep.number("witness_deviation", deviation);
        }
    }
    rep.number("cap_deviation", r.cap_deviation);
    rep.number("rho2_max", r.rho2_max);
    rep.number("fit_residual", r.fit_residual);
    if let Some((rot, gap)) = r.rotation {
        rep.number("rotation.r", rot);
        rep.number("rotation.max_gap", gap);
    }
    Ok(rep.finish()?)
}

pub fn nu(cfg: &ScenarioConfig, out: &Path) -> CmdResult {
    let mut rep = RunReport::new("nu", cfg, out);
    let s = cfg.nu.as_ref().ok_or_else(|| ConfigError("nu: section required by this command".into()))?;
    let line = Line2::new(Dir2::from_angle(s.normal_angle), s.offset);
    let region = Region2 { boundary: s.region.clone(), holes: s.holes.clone(), reference: line };
    let powers = if s.powers.is_empty() { vec![cfg.i] } else { s.powers.clone() };
    let mut csv = String::from("i,nu\n");
    for i in powers {
        let v = nu_measure(&region, i)?;
        let cell = match v {
            NuValue::Finite(x) => {
                rep.number(&format!("nu[{}]", fmt_f64(i)), x);
                fmt_f64(x)
            }
            NuValue::Divergent => {
                rep.text(&format!("nu[{}]", fmt_f64(i)), "divergent");
                "divergent".into()
            }
        };
        let _ = writeln!(csv, "{},{cell}", fmt_f64(i));
    }
    rep.number("area", region.area());
    rep.write("nu.csv", &csv)?;
    Ok(rep.finish()?)
}

pub fn selftest(cfg: &ScenarioConfig, filter: Option<String>, inject: Option<f64>, out: &Path) -> CmdResult {
    let mut rep = RunReport::new("selftest", cfg, out);
    let suite = SuiteConfig { seed: Some(cfg.seed()), filter, inject_perturbation: inject };
    let outcomes = run_suite(&suite);
    if outcomes.is_empty() {
        return Err(ConfigError(format!(
            "filter matches no criterion; families: {}",
            sections::acceptance::families().join(", ")
        ))
        .into());
    }
    let mut csv = String::from("id,family,passed\n");
    for o in &outcomes {
        let _ = writeln!(std::io::stdout(), "{}", o.line());
        let _ = writeln!(csv, "{},{},{}", o.id, o.family, o.passed);
        for (name, body) in &o.artifacts {
            rep.write(name, body)?;
        }
    }
    rep.write("selftest.csv", &csv)?;
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id.to_string()).collect();
    rep.count("criteria", outcomes.len());
    rep.count("failed", failed.len());
    rep.finish()?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("criteria failed: {}", failed.join(", "))))
    }
}
