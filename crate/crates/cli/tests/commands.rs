use std::path::Path;
use std::process::{Command, Output};

use mbspline::basis::bspline;
use mbspline::GeneratorSet;

fn mbspline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbspline")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv: &str, generator: usize) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect::<Vec<_>>())
        .filter(|r| r[0] == generator.to_string())
        .collect()
}

/// `scale` then coefficients `x0..` for each slice of one generator.
fn slice_rows(csv: &str, generator: usize) -> Vec<(String, Vec<i64>)> {
    rows(csv, generator)
        .into_iter()
        .map(|r| (r[2].clone(), r[3..].iter().map(|c| c.parse().unwrap()).collect()))
        .collect()
}

fn write_samples(path: &Path, start: i64, channels: &[Vec<f64>]) {
    let mut s = String::from("k");
    for p in 0..channels.len() {
        s.push_str(&format!(",g{}", p + 1));
    }
    s.push('\n');
    for i in 0..channels[0].len() {
        s.push_str(&(start + i as i64).to_string());
        for ch in channels {
            s.push_str(&format!(",{:e}", ch[i]));
        }
        s.push('\n');
    }
    std::fs::write(path, s).unwrap();
}

fn consistency(text: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix("consistency "))
        .expect("consistency line")
        .parse()
        .unwrap()
}

fn curve(text: &str) -> Vec<(f64, f64)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let (x, y) = l.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

#[test]
fn build_quintic_table_rows() {
    let named = stdout(&mbspline(&["build", "derivative_sampling(2)"]));
    assert_eq!(
        slice_rows(&named, 1),
        vec![
            ("4".into(), vec![0, 0, 0, 0, 5, -3]),
            ("4".into(), vec![2, 5, 0, -10, 5, 0]),
            ("4".into(), vec![2, -5, 0, 10, -10, 3]),
        ]
    );
    assert_eq!(
        slice_rows(&named, 2),
        vec![
            ("8".into(), vec![0, 0, 0, 0, 15, -11]),
            ("8".into(), vec![4, 5, -20, -50, 95, -38]),
            ("8".into(), vec![-4, 5, 20, -50, 40, -11]),
        ]
    );
    // the raw construction already contains the value generator
    let raw = stdout(&mbspline(&["build", "4,5"]));
    assert_eq!(slice_rows(&raw, 2), slice_rows(&named, 1));
}

#[test]
fn build_cubic_and_mixed_supports() {
    let cubic = stdout(&mbspline(&["build", "3"]));
    assert_eq!(
        slice_rows(&cubic, 1).into_iter().map(|r| r.1).collect::<Vec<_>>(),
        vec![vec![0, 0, 0, 1], vec![1, 3, 3, -3], vec![4, 0, -6, 3], vec![1, -3, 3, -1]]
    );
    assert_eq!(slice_rows(&cubic, 1)[0].0, "6");
    let mixed = stdout(&mbspline(&["build", "0,3"]));
    assert_eq!(rows(&mixed, 1).len(), 1);
    assert_eq!(rows(&mixed, 2).len(), 3);
}

#[test]
fn build_writes_checkable_json() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("hermite");
    assert!(mbspline(&["build", "2,3", "--out", stem.to_str().unwrap()]).status.success());
    let json = std::fs::read_to_string(dir.path().join("hermite.json")).unwrap();
    let gs: GeneratorSet = serde_json::from_str(&json).unwrap();
    assert_eq!(gs.degrees, vec![2, 3]);
    assert!(dir.path().join("hermite.csv").exists());

    let out = mbspline(&["check", dir.path().join("hermite.json").to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("support_sum     4 (shortest: true)"), "{text}");
    assert!(text.contains("status          pass"));
}

#[test]
fn check_rejects_bspline_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    let gs = GeneratorSet::new(vec![2, 3], vec![bspline(2), bspline(3)]);
    std::fs::write(&path, gs.to_json().to_string()).unwrap();
    let out = mbspline(&["check", path.to_str().unwrap(), "--grid", "256"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("det(0) = 0"), "{text}");
    assert!(text.contains("witness: not shortest"), "{text}");
}

#[test]
fn check_json_and_env_grid() {
    let out = Command::new(env!("CARGO_BIN_EXE_mbspline"))
        .args(["check", "hermite_cubic", "--json"])
        .env("MBSPLINE_OMEGA_GRID", "64")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["support_sum"], 4);
    assert!(v["riesz"]["A"].as_f64().unwrap() > 0.0);
    assert_eq!(v["riesz"]["grid_size"], 64);
}

#[test]
fn check_empty_basis_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, r#"{"degrees":[],"generators":[],"postprocess":null}"#).unwrap();
    assert_eq!(mbspline(&["check", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(mbspline(&["check", "3,1"]).status.code(), Some(2));
}

#[test]
fn reconstruct_quintic_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("q.csv");
    let ks: Vec<f64> = (-4..60).map(|k| k as f64 * 0.3).collect();
    let f: Vec<f64> = ks.iter().map(|x| x.sin() + 0.1 * x * x).collect();
    let df: Vec<f64> = ks.iter().map(|x| 0.3 * (x.cos() + 0.2 * x)).collect();
    write_samples(&samples, -4, &[f, df]);
    let out_path = dir.path().join("curve.csv");
    let out = mbspline(&[
        "reconstruct",
        "derivative_sampling(2)",
        "--samples",
        samples.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(consistency(&stdout(&out)) <= 1e-9);
    let pts = curve(&std::fs::read_to_string(out_path).unwrap());
    assert_eq!(pts.len(), 16 * 62 + 1);
}

#[test]
fn reconstruct_hermite_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("h.csv");
    write_samples(&samples, 0, &[vec![0.0, 1.0, 0.5, -1.0, 0.25, 2.0], vec![1.0, 0.0, -2.0, 0.0, 1.0, 0.0]]);
    let out = mbspline(&["reconstruct", "hermite_cubic", "--samples", samples.to_str().unwrap(), "--grid", "4"]);
    assert!(out.status.success());
    assert!(consistency(&String::from_utf8_lossy(&out.stderr)) <= 1e-15);
    let pts = curve(&stdout(&out));
    assert_eq!(pts[4], (1.0, 1.0));
    assert_eq!(pts[8], (2.0, 0.5));
}

#[test]
fn half_step_interpolation_of_sin() {
    let h = 0.5;
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("s.csv");
    let range = -16..48;
    let at = |k: i64, tau: f64| ((k as f64 + tau) * h).sin();
    write_samples(
        &samples,
        range.start,
        &[range.clone().map(|k| at(k, 0.0)).collect(), range.map(|k| at(k, -0.5)).collect()],
    );
    let out = mbspline(&["reconstruct", "bispline_interp(1)", "--samples", samples.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let interior: Vec<_> = curve(&stdout(&out)).into_iter().filter(|(x, _)| (0.0..=32.0).contains(x)).collect();
    assert!(interior.len() > 400);
    let worst = interior.iter().map(|(x, y)| (y - (x * h).sin()).abs()).fold(0.0, f64::max);
    assert!(worst <= 1e-3, "max error {worst}");
}

#[test]
fn reconstruct_errors() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("one.csv");
    write_samples(&samples, 0, &[vec![1.0; 12]]);
    let out = mbspline(&["reconstruct", "hermite_cubic", "--samples", samples.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 2 channels, got 1"));
    let out = mbspline(&["reconstruct", "3", "--samples", samples.to_str().unwrap(), "--grid", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reconstruct_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("d.csv");
    write_samples(&samples, 3, &[(0..20).map(|k| (k as f64).sqrt()).collect()]);
    let args = ["reconstruct", "3", "--samples", samples.to_str().unwrap(), "--boundary", "periodic"];
    let (a, b) = (mbspline(&args), mbspline(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

fn slope(text: &str) -> f64 {
    text.lines().find_map(|l| l.strip_prefix("slope ")).unwrap().parse().unwrap()
}

#[test]
fn order_slopes() {
    let quintic = stdout(&mbspline(&["order", "derivative_sampling(2)", "--function", "sin"]));
    assert!(slope(&quintic) >= 5.5, "{quintic}");
    assert!(quintic.contains("exact false"));
    let hermite = stdout(&mbspline(&["order", "hermite_cubic", "--steps", "0.5,0.25,0.125"]));
    assert!(slope(&hermite) >= 3.5, "{hermite}");
}

#[test]
fn order_flags_functions_in_the_space() {
    let out = mbspline(&["order", "hermite_cubic", "--function", "x^3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exact"], true);
    assert_eq!(mbspline(&["order", "hermite_cubic", "--steps", "0.5,0.25"]).status.code(), Some(2));
}
