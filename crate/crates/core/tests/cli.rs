use std::process::{Command, Output};

use serde_json::Value;

fn polytorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polytorus")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = polytorus(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn constants_json() {
    let v = json(&["constants", "--json"]);
    assert!((v["critical_p"].as_f64().unwrap() - 3.31138).abs() < 1e-5);
    assert_eq!(v["marzo_seip_bound"].as_f64(), Some(3.67632));
    assert_eq!(v["khintchine"].as_array().unwrap().len(), 4);
}

#[test]
fn table_csv() {
    let out = polytorus(&["table", "--q-list", "inf,2,4", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,theorem3_p,legacy_p,marzo_seip_reference");
    assert!(lines[1].starts_with("inf,3.3113758") && lines[1].ends_with(",4.0000000000,3.67632"));
    assert_eq!(lines[2], "2,2.0000000000,2.0000000000,");
}

#[test]
fn curve_rows() {
    let v = json(&["curve", "--qmin", "2", "--qmax", "inf", "--steps", "4", "--json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4]["q"], "inf");
    assert_eq!(rows[0]["critical_p"].as_f64(), Some(2.0));
}

#[test]
fn norm_methods_agree() {
    let exact = json(&["norm", "--coeffs", "1,1", "--p", "1", "--json"]);
    assert!((exact["value"].as_f64().unwrap() - 4.0 / std::f64::consts::PI).abs() < 1e-12);
    let m = json(&["norm", "--coeffs", "1,0.5,0.25", "--p", "4", "--method", "multinomial", "--json"]);
    assert_eq!(m["method"], "multinomial");
    let g = json(&["norm", "--coeffs", "1,0.5,0.25", "--p", "4", "--method", "grid", "--json"]);
    assert!((m["value"].as_f64().unwrap() - g["value"].as_f64().unwrap()).abs() < 1e-10);
    let mc = json(&["norm", "--coeffs", "1,0.5i", "--p", "3", "--method", "mc", "--seed", "3", "--json"]);
    assert_eq!(mc["method"], "montecarlo");
    assert!(mc["std_error"].as_f64().unwrap() > 0.0);
}

#[test]
fn series_file_and_amplify() {
    let dir = std::env::temp_dir().join(format!("polytorus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.json");
    std::fs::write(&path, r#"{"dim":1,"terms":[{"alpha":[-1],"re":1.0,"im":0.0},{"alpha":[1],"re":1.0,"im":0.0}]}"#).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["amplify", "--series-file", p, "--p", "2", "--q", "2", "--json"]);
    assert!((v["ratio"].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
    assert!((v["ratio_doubled"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let n = json(&["norm", "--series-file", p, "--p", "2", "--json"]);
    assert!((n["value"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dual_and_lift() {
    let v = json(&["dual", "--coeffs", "1,1", "--p", "1", "--restarts", "2", "--json"]);
    let value = v["value"].as_f64().unwrap();
    assert!((value - std::f64::consts::PI * 2f64.sqrt() / 4.0 * 2f64.sqrt()).abs() < 1e-6);
    assert!(v["lower_certificate"].as_f64().unwrap() <= value);
    let s = json(&["dual", "--coeffs", "1,0.5", "--p", "inf", "--json"]);
    assert_eq!(s["value"].as_f64(), Some(1.0));
    let l = json(&["lift", "--d", "2", "--q", "4/3", "--grid-n", "64", "--emit-coeffs", "--json"]);
    assert_eq!(l["passed"], true);
    assert!((l["norm_lhs"].as_f64().unwrap() - 2.0 * 6f64.powf(-0.25)).abs() < 1e-10);
    let table = l["coefficient_table"]["terms"].as_array().unwrap();
    let third = table.iter().find(|t| t["alpha"] == serde_json::json!([2, -1])).unwrap();
    assert!((third["re"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-10);
}

#[test]
fn config_file_and_threads() {
    let dir = std::env::temp_dir().join(format!("polytorus-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# smaller Monte Carlo run\nmc.samples = 20000\nseed = 5\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_polytorus"))
        .args(["norm", "--coeffs", "1,1,1", "--p", "3", "--method", "mc", "--json", "--config"])
        .arg(&cfg)
        .env("POLYTORUS_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["samples"].as_u64(), Some(20000));
    // same seed and samples at a different thread count: identical bits
    let again = Command::new(env!("CARGO_BIN_EXE_polytorus"))
        .args(["norm", "--coeffs", "1,1,1", "--p", "3", "--method", "mc", "--json", "--config"])
        .arg(&cfg)
        .env("POLYTORUS_THREADS", "1")
        .output()
        .unwrap();
    let w: Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(v["value"], w["value"]);
    std::fs::write(&cfg, "no.such.key = 1\n").unwrap();
    let bad = polytorus(&["constants", "--config", cfg.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_do_not_collide_with_certify_codes() {
    let out = polytorus(&["certify", "--p"]);
    assert_eq!(out.status.code(), Some(64));
    let out = polytorus(&["certify", "--p", "3", "--q", "2.5"]);
    assert_eq!(out.status.code(), Some(1));
}
