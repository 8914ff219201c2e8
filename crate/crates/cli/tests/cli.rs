use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sections(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sections")).args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, name: &str, args: &[&str]) -> (Output, PathBuf) {
    let out = dir.join(name);
    let mut a = args.to_vec();
    a.extend(["--out", out.to_str().unwrap()]);
    (sections(&a), out)
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn metric(r: &Value, key: &str) -> f64 {
    r["metrics"][key].as_f64().unwrap_or_else(|| panic!("metric {key} missing in {r}"))
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn disk_in_disk_chord_is_constant() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run_in(tmp.path(), "p", &["probe", "--preset", "disk-in-disk"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    assert!(metric(&r, "D.col0.stdev") < 1e-12 && metric(&r, "D.col1.stdev") < 1e-12);
    assert!(out.join("probe_K_D.csv").exists());
}

#[test]
fn polygon_inner_records_gaps() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run_in(tmp.path(), "p", &["probe", "--preset", "polygon-inner"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("probe_K_D.csv")).unwrap();
    assert_eq!(csv.lines().filter(|l| l.starts_with("#excluded")).count(), 4);
    assert_eq!(metric(&report(&out), "D.excluded_gaps"), 4.0);
}

#[test]
fn coarse_table_reports_interpolation_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "c.json",
        r#"{"bodies": {"K": {"kind": "ellipse", "center": [0.2, 0], "semi_axes": [3, 2], "rotation": 0.4},
                       "D": {"kind": "disk", "center": [0, 0], "radius": 1}},
            "outer": "K", "inner": ["D"], "grid_size": 8, "refine_grid": 512}"#,
    );
    let (o, out) = run_in(tmp.path(), "p", &["probe", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let e = metric(&report(&out), "D.interp_error_vs_grid_512");
    assert!(e > 1e-4, "interpolating 8 frames should show, got {e}");
}

#[test]
fn radius10_orbit_trace_decreases() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run_in(tmp.path(), "o", &["orbit", "--preset", "radius10"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("orbit.csv")).unwrap();
    let theta: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert!(theta.len() > 10);
    assert!(theta.windows(2).all(|w| w[1] < w[0]));
    let svg = fs::read_to_string(out.join("orbit.svg")).unwrap();
    assert_eq!(svg.matches("<line").count(), 2);
    assert!(svg.matches("<polygon").count() >= 3);
}

#[test]
fn rotation_preset_is_a_four_cycle() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run_in(tmp.path(), "o", &["orbit", "--preset", "rotation"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    assert_eq!(metric(&r, "period"), 4.0);
    assert!(fs::read_to_string(out.join("rotation.svg")).unwrap().matches("<circle").count() == 8);
}

#[test]
fn nested_inner_bodies_are_rejected() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "c.json",
        r#"{"bodies": {"K": {"kind": "disk", "center": [0, 0], "radius": 5},
                       "D1": {"kind": "disk", "center": [0, 0], "radius": 2},
                       "D2": {"kind": "disk", "center": [0.5, 0], "radius": 1}},
            "outer": "K", "inner": ["D1", "D2"]}"#,
    );
    let (o, _) = run_in(tmp.path(), "o", &["orbit", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not admissible: containment"), "{}", stderr(&o));
}

#[test]
fn config_errors_name_the_field() {
    let tmp = TempDir::new().unwrap();
    let cases = [
        ("{\"bodies\": {},\n \"grid\": 3}", "line 2"),
        (r#"{"bodies": {}, "outer": "Q"}"#, "outer: body 'Q' is not defined"),
        (r#"{"bodies": {}, "i": -1}"#, "i: must be positive"),
        (r#"{"bodies": {"K": {"kind": "disk", "center": [0, 0], "radius": -1}}}"#, "bodies.K"),
        (r#"{"bodies": {"K": {"kind": "blob"}}}"#, "unknown variant"),
    ];
    for (j, (text, want)) in cases.iter().enumerate() {
        let cfg = write_config(tmp.path(), &format!("c{j}.json"), text);
        let o = sections(&["probe", "--config", &cfg]);
        assert_eq!(o.status.code(), Some(1), "case {j}");
        assert!(stderr(&o).contains(want), "case {j}: {}", stderr(&o));
    }
    assert_eq!(sections(&["probe"]).status.code(), Some(1));
    assert_eq!(sections(&["probe", "--preset", "nope"]).status.code(), Some(1));
}

#[test]
fn ellipse_reconstruction_from_tables() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run_in(tmp.path(), "r", &["reconstruct", "--preset", "ellipse"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    assert_eq!(metric(&r, "points"), 500.0);
    assert!(metric(&r, "hausdorff_to_outer") < 1e-4);
    assert_eq!(fs::read_to_string(out.join("cloud.csv")).unwrap().lines().count(), 501);
    assert!(out.join("cloud.svg").exists());
}

#[test]
fn corrupted_table_files_fail_numerically() {
    let tmp = TempDir::new().unwrap();
    let bodies = r#""bodies": {"K": {"kind": "ellipse", "center": [0, 0], "semi_axes": [4, 2]},
                               "D1": {"kind": "disk", "center": [-1.5, 0], "radius": 1},
                               "D2": {"kind": "disk", "center": [1.5, 0], "radius": 1}}"#;
    let cfg = write_config(tmp.path(), "p.json", &format!(r#"{{{bodies}, "outer": "K", "inner": ["D1", "D2"], "grid_size": 512}}"#));
    let (o, tables) = run_in(tmp.path(), "t", &["probe", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t1 = tables.join("functional_K_D1.csv");
    let t2 = tables.join("functional_K_D2.csv");
    let files = |a: &Path, b: &Path| {
        format!(
            r#"{{{bodies}, "inner": ["D1", "D2"], "reconstruct": {{"source": "files", "tables": ["{}", "{}"], "budget": 200}}}}"#,
            a.display(),
            b.display()
        )
    };
    let good = write_config(tmp.path(), "good.json", &files(&t1, &t2));
    let (o, out) = run_in(tmp.path(), "good", &["reconstruct", "--config", &good]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(metric(&report(&out), "points"), 200.0);

    let text = fs::read_to_string(&t2).unwrap();
    let corrupted: Vec<String> = text
        .lines()
        .map(|l| match l.split_once(',') {
            Some((t, v)) if t.parse::<f64>().is_ok() && !l.starts_with('#') => {
                format!("{t},{}", v.parse::<f64>().unwrap() * 1.1)
            }
            _ => l.to_string(),
        })
        .collect();
    let bad_t2 = tmp.path().join("bad.csv");
    fs::write(&bad_t2, corrupted.join("\n") + "\n").unwrap();
    let bad = write_config(tmp.path(), "bad.json", &files(&t1, &bad_t2));
    let (o, _) = run_in(tmp.path(), "bad", &["reconstruct", "--config", &bad]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("no consistent seed"), "{}", stderr(&o));
}

#[test]
fn verify_verdicts() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run_in(tmp.path(), "v", &["verify", "--preset", "ellipse"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    assert_eq!(r["metrics"]["verdict"], "distinct");
    assert!((metric(&r, "hausdorff") - 0.05).abs() < 1e-9);

    let cfg = write_config(
        tmp.path(),
        "c.json",
        r#"{"bodies": {"K": {"kind": "ellipse", "center": [0, 0], "semi_axes": [4, 2]},
                       "D": {"kind": "disk", "center": [1.5, 0], "radius": 1}},
            "outer": "K", "compare": "K", "inner": ["D"]}"#,
    );
    let (o, out) = run_in(tmp.path(), "s", &["verify", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(report(&out)["metrics"]["verdict"], "evidence_only");
}

#[test]
fn detect_disk_finds_the_center() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "c.json",
        r#"{"bodies": {"K": {"kind": "disk", "center": [0.3, 0.1], "radius": 3},
                       "E": {"kind": "ellipse", "center": [0, 0], "semi_axes": [3, 2.5]},
                       "D": {"kind": "disk", "center": [0, 0], "radius": 1}},
            "outer": "K", "inner": ["D"]}"#,
    );
    let (o, out) = run_in(tmp.path(), "d", &["detect-disk", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    assert_eq!(r["metrics"]["verdict"], "disk");
    assert!((metric(&r, "center.x") - 0.3).abs() < 1e-6 && (metric(&r, "radius") - 3.0).abs() < 1e-6);

    let text = fs::read_to_string(&cfg).unwrap().replace(r#""outer": "K""#, r#""outer": "E""#);
    let cfg = write_config(tmp.path(), "e.json", &text);
    let (o, out) = run_in(tmp.path(), "e", &["detect-disk", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(report(&out)["metrics"]["verdict"], "not_disk");
}

#[test]
fn nu_triangle_and_square() {
    let tmp = TempDir::new().unwrap();
    let tri = write_config(
        tmp.path(),
        "t.json",
        r#"{"bodies": {}, "nu": {"region": [[0, 0], [1, 1], [-1, 1]], "normal_angle": 1.5707963267948966, "powers": [1, 2]}}"#,
    );
    let (o, out) = run_in(tmp.path(), "t", &["nu", "--config", &tri]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    assert!((metric(&r, "nu[1.0]") - 2.0).abs() < 1e-6 * 2.0);
    assert!((metric(&r, "nu[2.0]") - metric(&r, "area")).abs() < 1e-12);

    let sq = write_config(
        tmp.path(),
        "s.json",
        r#"{"bodies": {}, "i": 1, "nu": {"region": [[0, 0], [1, 0], [1, 1], [0, 1]], "normal_angle": 1.5707963267948966}}"#,
    );
    let (o, out) = run_in(tmp.path(), "s", &["nu", "--config", &sq]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(report(&out)["metrics"]["nu[1.0]"], "divergent");
    assert!(fs::read_to_string(out.join("nu.csv")).unwrap().contains("1.0,divergent"));
}

#[test]
fn config_hash_ignores_formatting() {
    let tmp = TempDir::new().unwrap();
    let a = write_config(
        tmp.path(),
        "a.json",
        r#"{"bodies": {"K": {"kind": "disk", "center": [0, 0], "radius": 3}, "D": {"kind": "disk", "center": [0, 0], "radius": 1}}, "outer": "K", "inner": ["D"]}"#,
    );
    let b = write_config(
        tmp.path(),
        "b.json",
        "{\n  \"inner\": [\"D\"],\n  \"outer\": \"K\",\n  \"bodies\": {\n    \"D\": {\"radius\": 1, \"kind\": \"disk\", \"center\": [0, 0]},\n    \"K\": {\"kind\": \"disk\", \"center\": [0.0, 0.0], \"radius\": 3.0}\n  }\n}",
    );
    let (_, oa) = run_in(tmp.path(), "a", &["probe", "--config", &a]);
    let (_, ob) = run_in(tmp.path(), "b", &["probe", "--config", &b]);
    let (ra, rb) = (report(&oa), report(&ob));
    assert_eq!(ra["config_hash"], rb["config_hash"]);
    assert_eq!(ra["metrics"], rb["metrics"]);
    let (_, oc) = run_in(tmp.path(), "c", &["probe", "--config", &a, "--seed", "9"]);
    let rc = report(&oc);
    assert_eq!(rc["seed"], 9);
    assert_ne!(rc["config_hash"], ra["config_hash"]);
}

fn csv_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    v.sort();
    v
}

#[test]
fn selftest_twice_writes_identical_csv() {
    let tmp = TempDir::new().unwrap();
    let args = ["selftest", "--filter", "1,3,5,6,7,9", "--seed", "42"];
    let (o1, a) = run_in(tmp.path(), "a", &args);
    let (o2, b) = run_in(tmp.path(), "b", &args);
    assert!(o1.status.success() && o2.status.success(), "{}", stderr(&o1));
    let (fa, fb) = (csv_files(&a), csv_files(&b));
    assert!(fa.len() >= 7, "{:?}", fa.iter().map(|f| &f.0).collect::<Vec<_>>());
    assert_eq!(fa, fb);
    let lines = String::from_utf8_lossy(&o1.stdout).lines().filter(|l| l.starts_with("criterion")).count();
    assert_eq!(lines, 6);
}

#[test]
fn selftest_negative_control_fails() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run_in(tmp.path(), "n", &["selftest", "--filter", "verify", "--inject-perturbation", "1e-3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
    assert_eq!(fs::read_to_string(out.join("selftest.csv")).unwrap(), "id,family,passed\n8,verify,false\n");
    let (o, _) = run_in(tmp.path(), "m", &["selftest", "--filter", "nu"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().filter(|l| l.starts_with("criterion")).count(), 2);
}
