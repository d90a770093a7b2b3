//! End-to-end tests of the binary: exit codes, determinism, output formats.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entgeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn analyze_singlet_matches_known_values() {
    let out = run(&["analyze", "werner:1.0", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let d = v["distance"]["distance"].as_f64().unwrap();
    assert!((d - 1.0 / 3.0_f64.sqrt()).abs() < 1e-6);
    let b = v["violation"].as_f64().unwrap();
    assert!((b - d).abs() < 1e-5);
    assert_eq!(v["ppt"], serde_json::json!(false));
    assert_eq!(v["timing_ms"], serde_json::json!(0));
}

#[test]
fn analyze_tracial_state_is_separable() {
    let out = run(&["analyze", "werner:0.0", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["distance"]["distance"].as_f64().unwrap() < 1e-7);
    assert_eq!(v["ppt"], serde_json::json!(true));
    assert!(v["witness"].is_null());
}

#[test]
fn analyze_wc_outside_the_cross_polytope() {
    let out = run(&["analyze", "wc:-0.4,-0.4,-0.4", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ppt"], serde_json::json!(false));
    assert!(v["distance"]["distance"].as_f64().unwrap() > 1e-4);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["analyze", "werner:0.7", "--json", "--seed", "7"]);
    let b = run(&["analyze", "werner:0.7", "--json", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let a = run(&[
        "sweep", "--family", "werner", "--lo", "0.2", "--hi", "0.9", "--steps", "4",
    ]);
    let b = run(&[
        "sweep", "--family", "werner", "--lo", "0.2", "--hi", "0.9", "--steps", "4",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn run_report_roundtrips_losslessly() {
    let out = run(&["analyze", "werner:0.9", "--json"]);
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let v2 = v.clone();
    // reserialize: parsing and printing must be a fixed point
    let s2 = serde_json::to_string_pretty(&v2).unwrap();
    let v3: serde_json::Value = serde_json::from_str(&s2).unwrap();
    assert_eq!(v, v3);
}

#[test]
fn exit_codes_follow_the_contract() {
    // parse error
    let out = run(&["analyze", "werner:abc"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analyze", "nonsense:1"]);
    assert_eq!(out.status.code(), Some(2));
    // invalid state
    let out = run(&["analyze", "werner:2.0"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["analyze", "product:0,0,0.5,0,0,1"]);
    assert_eq!(out.status.code(), Some(3));
    // sweep outside the family domain
    let out = run(&[
        "sweep", "--family", "werner", "--lo", "0.5", "--hi", "1.5", "--steps", "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // unknown region
    let out = run(&["geometry", "mesh", "--region", "cube"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matrix_file_input_is_equivalent_to_the_shorthand() {
    let dir = std::env::temp_dir().join("entgeo-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("state.json");

    let shorthand = run(&["analyze", "werner:0.6", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&shorthand)).unwrap();

    // matrix literal of the same state
    let text = r#"{"dim":4,
        "re":[[0.1,0,0,0],[0,0.4,-0.3,0],[0,-0.3,0.4,0],[0,0,0,0.1]],
        "im":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
    std::fs::write(&path, text).unwrap();
    let from_file = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert!(from_file.status.success());
    let w: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    let d1 = v["distance"]["distance"].as_f64().unwrap();
    let d2 = w["distance"]["distance"].as_f64().unwrap();
    assert!((d1 - d2).abs() < 1e-9, "{d1} vs {d2}");

    // Pauli form of the same state
    let pauli = r#"{"alpha":0.25,"a":[0,0,0],"b":[0,0,0],
        "c":[[-0.15,0,0],[0,-0.15,0],[0,0,-0.15]]}"#;
    std::fs::write(&path, pauli).unwrap();
    let from_pauli = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert!(from_pauli.status.success());
    let p: serde_json::Value = serde_json::from_str(&stdout(&from_pauli)).unwrap();
    let d3 = p["distance"]["distance"].as_f64().unwrap();
    assert!((d1 - d3).abs() < 1e-9);
}

#[test]
fn sweep_follows_the_werner_hinge() {
    let out = run(&[
        "sweep", "--family", "werner", "--lo", "0", "--hi", "1", "--steps", "11",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "param,distance,violation,lower,upper,ppt"
    );
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let alpha: f64 = cells[0].parse().unwrap();
        let d: f64 = cells[1].parse().unwrap();
        let expected = (3.0_f64.sqrt() / 2.0 * (alpha - 1.0 / 3.0)).max(0.0);
        assert!(
            (d - expected).abs() < 1e-6,
            "alpha {alpha}: {d} vs {expected}"
        );
        let ppt: u8 = cells[5].parse().unwrap();
        assert_eq!(ppt == 1, alpha <= 1.0 / 3.0 + 1e-12);
    }
}

#[test]
fn wc_ray_sweep_crosses_the_boundary() {
    // along -(1,1,1)/sqrt(3): separable until |c|_1 = 1, entangled beyond
    let lo = -(3.0_f64.sqrt()) + 1e-9;
    let out = run(&[
        "sweep",
        "--family",
        "wc-ray",
        "--lo",
        &lo.to_string(),
        "--hi",
        "0",
        "--steps",
        "7",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    for row in &rows {
        let t = row[0];
        let d = row[1];
        let l1 = 3.0 * (t / 3.0_f64.sqrt()).abs();
        if l1 > 1.0 + 1e-9 {
            assert!(d > 1e-7, "expected entangled at t = {t}");
        } else {
            assert!(d < 1e-6, "expected separable at t = {t}");
        }
    }
}

#[test]
fn single_step_sweep_matches_analyze() {
    let sweep = run(&[
        "sweep", "--family", "werner", "--lo", "0.8", "--hi", "0.8", "--steps", "1",
    ]);
    assert!(sweep.status.success());
    let text = stdout(&sweep);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let d_sweep: f64 = row[1].parse().unwrap();

    let analyze = run(&["analyze", "werner:0.8", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&analyze)).unwrap();
    let d_analyze = v["distance"]["distance"].as_f64().unwrap();
    assert!((d_sweep - d_analyze).abs() < 1e-7);
}

#[test]
fn config_file_mirrors_the_solver_settings() {
    let dir = std::env::temp_dir().join("entgeo-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(
        &path,
        r#"{"tol": 1e-9, "max_iters": 5000, "trust_ppt": false,
           "oracle": {"restarts": 16, "seed": 99}}"#,
    )
    .unwrap();
    let out = run(&[
        "analyze",
        "werner:0.9",
        "--json",
        "--config",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["distance"]["gap"].as_f64().unwrap() < 1e-9);

    let out = run(&["analyze", "werner:0.9", "--config", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn geometry_sample_emits_the_documented_csv() {
    let out = run(&["geometry", "sample", "--resolution", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "c1,c2,c3,in_tetra,in_mirror,separable"
    );
    assert_eq!(lines.count(), 125);
}

#[test]
fn geometry_mesh_formats() {
    let out = run(&["geometry", "mesh", "--region", "tetra", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["faces"].as_array().unwrap().len(), 4);

    let out = run(&["geometry", "mesh", "--region", "pyramid", "--format", "off"]);
    let text = stdout(&out);
    assert!(text.starts_with("OFF\n6 8 0\n"));
}

#[test]
fn bell_summary_reports_the_three_gaps() {
    let out = run(&["bell", "summary", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let diff: Vec<f64> = rows
        .iter()
        .map(|r| r["difference"].as_f64().unwrap())
        .collect();
    assert!((diff[0] - 2.0).abs() < 1e-6);
    assert!((diff[1] - std::f64::consts::SQRT_2).abs() < 1e-6);
    assert!((diff[2] - 0.75).abs() < 1e-6);
}

#[test]
fn bell_explicit_angles_are_respected() {
    // collinear directions: singlet value -2
    let out = run(&["bell", "chsh", "--angles", "0,0,0,0", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["singlet_value"].as_f64().unwrap() + 2.0).abs() < 1e-9);

    // the extremal planar configuration reaches 2 sqrt 2
    let out = run(&["bell", "chsh", "--angles", "135,-135,0,90", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["singlet_value"].as_f64().unwrap() - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9);

    let out = run(&["bell", "original", "--angles", "180,60,120", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["singlet_value"].as_f64().unwrap() - 1.5).abs() < 1e-9);
}

#[test]
fn witness_command_reports_both_forms() {
    let out = run(&["witness", "werner:0.8", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let wit = &v["witness"];
    assert!(wit["matrix"]["re"].is_array());
    assert!(wit["pauli"]["c"].is_array());
    assert!(v["residual"].as_f64().unwrap() < 1e-5);
    // flip-operator direction: diagonal correlation coefficients equal
    let c = &wit["pauli"]["c"];
    let c00 = c[0][0].as_f64().unwrap();
    let c11 = c[1][1].as_f64().unwrap();
    assert!((c00 - c11).abs() < 1e-6);
    assert!(c00 > 0.0);
}

#[test]
fn reproduce_filter_selects_rows() {
    let out = run(&["reproduce", "--filter", "one-spin", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        assert!(row["claim"].as_str().unwrap().contains("one-spin"));
        assert_eq!(row["pass"], serde_json::json!(true));
    }
}

#[test]
fn trust_ppt_fast_path_reports_zero() {
    let out = run(&["analyze", "werner:0.2", "--trust-ppt", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["distance"]["iterations"], serde_json::json!(0));
    assert_eq!(v["distance"]["distance"].as_f64().unwrap(), 0.0);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = std::env::temp_dir().join("entgeo-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mesh.off");
    let out = run(&[
        "geometry",
        "mesh",
        "--region",
        "mirror",
        "--format",
        "off",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("OFF\n4 4 0\n"));
}

#[test]
fn every_emitted_number_is_finite() {
    for args in [
        vec!["analyze", "bell:2", "--json"],
        vec!["witness", "wc:-0.5,-0.5,-0.3", "--json"],
        vec!["bell", "chsh", "--json"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}");
        let text = stdout(&out);
        assert!(!text.contains("null"), "null number in {args:?}");
        assert!(!text.to_lowercase().contains("nan"));
        assert!(!text.to_lowercase().contains("inf"));
    }
}
