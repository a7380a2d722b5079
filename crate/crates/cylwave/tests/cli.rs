use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cylwave::io::{format_weights_table, parse_weights_table};
use cylwave_core::Complex64;
use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

fn cylwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cylwave")).args(args).output().expect("spawn cylwave")
}

fn ok(args: &[&str]) {
    let out = cylwave(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
}

fn out_arg(dir: &TempDir, sub: &str) -> String {
    dir.path().join(sub).display().to_string()
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap()
}

/// `(z, r, re, im, abs2)` rows of a field dump.
fn csv_rows(path: &Path) -> Vec<[f64; 5]> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(lines.next(), Some("z,r,re,im,abs2"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3], v[4]]
        })
        .collect()
}

#[test]
fn plane_wave_mode_has_constant_modulus() {
    let dir = TempDir::new().unwrap();
    let out = out_arg(&dir, "m");
    ok(&["mode-eval", "--out", &out, "--nz", "41", "--nr", "11", "--time", "0.7"]);
    let rows = csv_rows(&dir.path().join("m/mode-eval.csv"));
    assert_eq!(rows.len(), 41 * 11);
    for row in rows {
        assert!((row[4] - 1.0).abs() < 1e-15, "{row:?}");
    }
}

#[test]
fn window_edge_mode_reports_equal_wavenumbers() {
    let dir = TempDir::new().unwrap();
    let out = out_arg(&dir, "m");
    ok(&["mode-eval", "--out", &out, "--q", "1", "--nz", "3", "--nr", "3"]);
    let manifest = json(dir.path().join("m/mode-eval.manifest.json"));
    let row = &manifest["derived"]["k_table"][0];
    assert_eq!(row["q"].as_f64(), Some(1.0));
    assert_eq!(row["k_plus"].as_f64(), row["k_minus"].as_f64());
    assert_eq!(manifest["derived"]["q_max"].as_f64(), Some(1.0));
    assert_eq!(manifest["command"], "mode-eval");
}

#[test]
fn inadmissible_q_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let out = out_arg(&dir, "m");
    for q in ["1.5", "-0.1"] {
        let result = cylwave(&["mode-eval", "--out", &out, "--q", q]);
        assert_eq!(result.status.code(), Some(2));
        let stderr = String::from_utf8_lossy(&result.stderr);
        assert!(stderr.contains("bound"), "{stderr}");
    }
    // the window widens with the speed
    ok(&["mode-eval", "--out", &out, "--q", "2", "--speed", "2", "--nz", "3", "--nr", "3"]);
}

#[test]
fn zero_weights_give_an_all_zero_dump() {
    let dir = TempDir::new().unwrap();
    let out = out_arg(&dir, "p");
    ok(&["packet-field", "--out", &out, "--amp-a", "0", "--amp-b", "0", "--nz", "21", "--nr", "11"]);
    let rows = csv_rows(&dir.path().join("p/packet-field.csv"));
    assert_eq!(rows.len(), 21 * 11);
    assert!(rows.iter().all(|r| r[2] == 0.0 && r[3] == 0.0 && r[4] == 0.0));
}

#[test]
fn packet_value_at_the_origin() {
    let dir = TempDir::new().unwrap();
    let out = out_arg(&dir, "p");
    let single = ["--z-min", "0", "--z-max", "0", "--nz", "1", "--r-max", "0", "--nr", "1", "--time", "0"];
    let mut args = vec!["packet-field", "--out", &out, "--amp-b", "0"];
    args.extend(single);
    ok(&args);
    let rows = csv_rows(&dir.path().join("p/packet-field.csv"));
    // ∫₀¹ q e^{−2q} dq
    let exact = (1.0 - 3.0 * (-2.0f64).exp()) / 4.0;
    assert!((rows[0][2] - exact).abs() < 1e-10, "{:?}", rows[0]);
    assert!((rows[0][2] - 0.148499).abs() < 1e-6);
    assert_eq!(rows[0][3], 0.0);
}

#[test]
fn dump_at_t_equals_the_translated_initial_dump() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (out_arg(&dir, "a"), out_arg(&dir, "b"));
    let grid = ["--nz", "81", "--r-max", "6", "--nr", "31"];
    let mut later = vec!["packet-field", "--out", &a, "--time", "1.5", "--z-min", "-5", "--z-max", "5"];
    later.extend(grid);
    ok(&later);
    let mut shifted = vec!["packet-field", "--out", &b, "--time", "0", "--z-min", "-6.5", "--z-max", "3.5"];
    shifted.extend(grid);
    ok(&shifted);
    let moving = csv_rows(&dir.path().join("a/packet-field.csv"));
    let initial = csv_rows(&dir.path().join("b/packet-field.csv"));
    let scale = moving.iter().map(|r| r[4].sqrt()).fold(0.0, f64::max);
    for (m, i) in moving.iter().zip(&initial) {
        assert_eq!(m[1], i[1]);
        let diff = (m[2] - i[2]).hypot(m[3] - i[3]);
        assert!(diff <= 1e-13 * scale, "{m:?} vs {i:?}");
    }
}

#[test]
fn plane_wave_residual() {
    let dir = TempDir::new().unwrap();
    let out = out_arg(&dir, "r");
    ok(&["residual", "--out", &out, "--target", "mode", "--steps", "1e-3"]);
    let report = json(dir.path().join("r/residual.json"));
    assert!(report["max_rel"].as_f64().unwrap() < 1e-8, "{report}");
    assert_eq!(report["probes"].as_u64(), Some(256));
    assert_eq!(report["report"]["grid_step"][0].as_f64(), Some(1e-3));
}

#[test]
fn residual_falls_sixteenfold_under_halving() {
    let dir = TempDir::new().unwrap();
    let out = out_arg(&dir, "r");
    ok(&[
        "residual",
        "--out",
        &out,
        "--target",
        "mode",
        "--q",
        "0.6",
        "--c1",
        "0.7,0.1",
        "--c2",
        "-0.4,0.9",
        "--steps",
        "0.16",
        "--z-min",
        "-3",
        "--z-max",
        "3",
        "--r-max",
        "4",
        "--random-probes",
        "16",
    ]);
    let report = json(dir.path().join("r/residual.json"));
    let ratio = report["ratio"].as_f64().unwrap();
    assert!((10.0..=24.0).contains(&ratio), "{report}");
}

#[test]
fn malformed_grid_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let out = out_arg(&dir, "r");
    for bad in [&["--nz", "0"][..], &["--z-min", "3", "--z-max", "-3"], &["--r-max", "-1"]] {
        let mut args = vec!["residual", "--out", &out];
        args.extend(bad);
        assert_eq!(cylwave(&args).status.code(), Some(2), "{bad:?}");
    }
    // a probe whose radial stencil would cross the axis
    let near_axis = cylwave(&["residual", "--out", &out, "--all-probes", "--nz", "3", "--r-max", "1e-3", "--nr", "2"]);
    assert_eq!(near_axis.status.code(), Some(2));
}

#[test]
fn norm_scan_examples() {
    let dir = TempDir::new().unwrap();
    let (a, b, c) = (out_arg(&dir, "a"), out_arg(&dir, "b"), out_arg(&dir, "c"));
    ok(&["norm-scan", "--out", &a, "--amp-a", "0", "--amp-b", "0", "--n-q", "64", "--n-z", "64"]);
    let zero = json(dir.path().join("a/norm-scan.json"));
    assert_eq!(zero["slope"].as_f64(), Some(0.0));

    ok(&["norm-scan", "--out", &b, "--amp-b", "0", "--half-lengths", "1,2,5,9", "--n-q", "256", "--n-z", "64"]);
    let single = json(dir.path().join("b/norm-scan.json"));
    assert!((single["r_squared"].as_f64().unwrap() - 1.0).abs() < 1e-12, "{single}");

    ok(&["norm-scan", "--out", &c]);
    let preset = json(dir.path().join("c/norm-scan.json"));
    assert!(preset["r_squared"].as_f64().unwrap() > 0.999);
    assert!(preset["slope"].as_f64().unwrap() > 0.0);
    let csv = fs::read_to_string(dir.path().join("c/norm-scan.csv")).unwrap();
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 7);
}

#[test]
fn propagate_compare_examples() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (out_arg(&dir, "a"), out_arg(&dir, "b"));
    ok(&["propagate-compare", "--out", &a, "--time", "0"]);
    let still = json(dir.path().join("a/propagate-compare.json"));
    assert!((still["overlap_dispersionless"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((still["gaussian_width_ratio"].as_f64().unwrap() - 1.0).abs() < 1e-10);

    ok(&["propagate-compare", "--out", &b, "--time", "1"]);
    let moved = json(dir.path().join("b/propagate-compare.json"));
    assert!(moved["overlap_dispersionless"].as_f64().unwrap() >= 0.999, "{moved}");
    assert!((moved["gaussian_width_ratio"].as_f64().unwrap() - 1.0).abs() < 0.01);
    assert!(moved["summary"]["relative_drift"].as_f64().unwrap() < 1e-6);
}

#[test]
fn travel_beyond_the_buffer_is_a_configuration_error() {
    let dir = TempDir::new().unwrap();
    let out = out_arg(&dir, "p");
    let result = cylwave(&["propagate-compare", "--out", &out, "--time", "10"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("propagator configuration"));
}

#[test]
fn flags_override_the_config_file() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("run.json");
    fs::write(&config, r#"{"params": {"mass": 2.0}, "grid": {"n_z": 5, "n_r": 3}, "time": 0.25}"#).unwrap();
    let out = out_arg(&dir, "p");
    let cfg = config.display().to_string();
    ok(&["packet-field", "--config", &cfg, "--out", &out]);
    let m = json(dir.path().join("p/packet-field.manifest.json"));
    assert_eq!(m["config"]["params"]["mass"].as_f64(), Some(2.0));
    assert_eq!(m["config"]["params"]["speed"].as_f64(), Some(1.0));
    assert_eq!(m["config"]["time"].as_f64(), Some(0.25));
    assert_eq!(m["derived"]["q_max"].as_f64(), Some(4.0));

    ok(&["packet-field", "--config", &cfg, "--out", &out, "--mass", "3", "--nz", "7"]);
    let m = json(dir.path().join("p/packet-field.manifest.json"));
    assert_eq!(m["config"]["params"]["mass"].as_f64(), Some(3.0));
    assert_eq!(m["config"]["grid"]["n_z"].as_u64(), Some(7));
    assert_eq!(m["config"]["grid"]["n_r"].as_u64(), Some(3));
}

#[test]
fn unknown_config_fields_are_rejected() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("run.json");
    fs::write(&config, r#"{"params": {"mas": 2.0}}"#).unwrap();
    let result = cylwave(&["packet-field", "--config", &config.display().to_string()]);
    assert_eq!(result.status.code(), Some(2));
    assert_eq!(cylwave(&["packet-field", "--config", "/nonexistent/run.json"]).status.code(), Some(2));
}

#[test]
fn weight_table_input() {
    let dir = TempDir::new().unwrap();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let table = dir.path().join("w.txt");
    fs::write(&table, format_weights_table(&[(0.0, zero, zero), (1.0, one, zero)])).unwrap();
    let out = out_arg(&dir, "p");
    let single = ["--z-min", "0", "--z-max", "0", "--nz", "1", "--r-max", "0", "--nr", "1", "--time", "0"];
    let mut args = vec!["packet-field", "--out", &out, "--weights-table"];
    let path = table.display().to_string();
    args.push(&path);
    args.extend(single);
    ok(&args);
    // A = q integrates to 1/2 over the window
    let rows = csv_rows(&dir.path().join("p/packet-field.csv"));
    assert!((rows[0][2] - 0.5).abs() < 1e-12, "{:?}", rows[0]);

    // a table that stops short of q_max
    fs::write(&table, format_weights_table(&[(0.0, zero, zero), (0.5, one, zero)])).unwrap();
    assert_eq!(cylwave(&args).status.code(), Some(2));
}

#[test]
fn rerun_from_manifest_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (out_arg(&dir, "a"), out_arg(&dir, "b"));
    ok(&["residual", "--out", &a, "--seed", "11", "--random-probes", "12", "--nz", "9", "--nr", "5"]);
    let manifest = dir.path().join("a/residual.manifest.json").display().to_string();
    ok(&["residual", "--config", &manifest, "--out", &b]);
    let first = fs::read(dir.path().join("a/residual.json")).unwrap();
    assert_eq!(first, fs::read(dir.path().join("b/residual.json")).unwrap());
    // a different seed draws different probes
    ok(&["residual", "--config", &manifest, "--out", &b, "--seed", "12"]);
    assert_ne!(first, fs::read(dir.path().join("b/residual.json")).unwrap());
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e300f64..1e300, -1.0f64..1.0, Just(0.0), Just(-0.0), Just(f64::MIN_POSITIVE)]
}

proptest! {
    #[test]
    fn weight_tables_round_trip_exactly(rows in prop::collection::vec((finite(), finite(), finite(), finite(), finite()), 0..20)) {
        let rows: Vec<(f64, Complex64, Complex64)> =
            rows.into_iter().map(|(q, a, b, c, d)| (q, Complex64::new(a, b), Complex64::new(c, d))).collect();
        let back = parse_weights_table(&format_weights_table(&rows)).unwrap();
        prop_assert_eq!(back.len(), rows.len());
        for (x, y) in back.iter().zip(&rows) {
            prop_assert_eq!(x.0.to_bits(), y.0.to_bits());
            prop_assert_eq!(x.1.re.to_bits(), y.1.re.to_bits());
            prop_assert_eq!(x.1.im.to_bits(), y.1.im.to_bits());
            prop_assert_eq!(x.2.re.to_bits(), y.2.re.to_bits());
            prop_assert_eq!(x.2.im.to_bits(), y.2.im.to_bits());
        }
    }
}
