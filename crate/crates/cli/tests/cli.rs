use std::process::{Command, Output};

use multizeta_core::multizeta::eval_profile;
use multizeta_core::ZetaParams;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multizeta"))
        .args(args)
        .env_remove("MULTIZETA_EM_CUTOFF")
        .env_remove("MULTIZETA_EM_TERMS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

#[test]
fn exact_values() {
    assert!(stdout(&["eval", "-r", "2", "-s", "-1", "--exact"]).contains("= 1/288 ="));
    assert!(stdout(&["eval", "-r", "4", "-s", "0", "--exact"]).contains("= 35/128 ="));
    let v = json(&["eval", "-r", "3", "-s", "-1", "--exact"]);
    assert_eq!(v["results"][0]["exact"], "139/51840");
}

#[test]
fn depth_zero_is_one() {
    let v = json(&["eval", "-r", "0", "-s", "3.7"]);
    assert_eq!(v["results"][0]["value"].as_f64(), Some(1.0));
}

#[test]
fn envelope_shape() {
    let v = json(&["eval", "-r", "2", "-s", "2.5", "--profile"]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "eval");
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert!(v["warnings"].as_array().unwrap().is_empty());
    assert!(v.get("meta").is_none());
    let text = stdout(&["--json", "eval", "-r", "1", "-s", "2"]);
    assert!(text.contains("\"value\": 1.64493406684822"), "{text}");
    assert!(json(&["--meta", "eval", "-r", "1", "-s", "2"]).get("meta").is_some());
}

#[test]
fn table_rows() {
    let text = stdout(&["table"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 15);
    assert!(lines[8].contains("+0.196380615234375"));
    assert!(lines[10].contains("+0.00007204895"));
    assert!(lines[1].contains("-1/12"));
    let v = json(&["table", "--r-max", "3", "--arg", "-3"]);
    assert_eq!(v["results"][0]["values"][0]["exact"], "1/120");
    assert_eq!(run(&["table", "--arg", "2"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--r-max", "31"]).status.code(), Some(2));
}

#[test]
fn zero_census() {
    let text = stdout(&["zeros", "-r", "6", "--positive"]);
    assert!(text.contains("8 IAZs; counts for k = 6..2: 1,1,1,2,3"));
    assert!(text.ends_with("conjecture: MATCH\n"));
    let text = stdout(&["zeros", "-r", "3", "--negative", "4"]);
    assert!(text.contains("ITZ counts for n = 1..: 2,2,2,2"));
    let text = stdout(&["zeros", "-r", "2"]);
    assert!(text.contains("6.26817553773"));
    let csv = stdout(&["zeros", "-r", "4", "--csv"]);
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.starts_with("r,kind,location,"));
}

#[test]
fn coefficient_table() {
    let v = json(&["coeffs", "-r", "6"]);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows[1]["order"], 3);
    assert_eq!(rows[2]["order"], 2);
    let v = json(&["coeffs", "-r", "3"]);
    let c = v["results"][2]["coefficient"].as_f64().unwrap();
    assert!((c - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(run(&["coeffs", "-r", "13"]).status.code(), Some(2));
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<Option<f64>>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| if c.is_empty() { None } else { Some(c.parse().unwrap()) }).collect())
        .collect();
    (header, rows)
}

#[test]
fn plot_rows_and_signs() {
    let text = stdout(&["plotdata", "-r", "2", "--lo", "-4.5", "--hi", "3", "--points", "301", "--clip", "-2", "2"]);
    assert!(!text.contains('\r'));
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["s", "zeta_2"]);
    assert_eq!(rows.len(), 301);
    assert!(text.lines().all(|l| !l.ends_with(',') || l.split(',').count() == 2));
    // Exact zeros at -4 and -2 (grid step 0.025) and one sign change between.
    let at = |s: f64| rows.iter().find(|r| (r[0].unwrap() - s).abs() < 1e-9).unwrap()[1].unwrap();
    assert_eq!(at(-4.0), 0.0);
    assert_eq!(at(-2.0), 0.0);
    let between: Vec<f64> = rows
        .iter()
        .filter(|r| r[0].unwrap() > -3.99 && r[0].unwrap() < -2.01)
        .map(|r| r[1].unwrap())
        .collect();
    assert_eq!(between.windows(2).filter(|w| w[0].signum() != w[1].signum()).count(), 1);

    let (_, rows) = parse_csv(&stdout(&["plotdata", "-r", "4", "--lo", "0", "--hi", "1", "--points", "2001"]));
    let vals: Vec<f64> = rows.iter().filter_map(|r| r[1]).collect();
    let changes = vals.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    // Four zeros plus the sign flips across the odd-order poles at 1/3 and 1/4.
    assert_eq!(changes, 6);

    let (_, rows) = parse_csv(&stdout(&["plotdata", "-r", "1", "--lo", "2", "--hi", "10", "--points", "50"]));
    let vals: Vec<f64> = rows.iter().map(|r| r[1].unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]) && vals.iter().all(|&v| v > 1.0));
}

#[test]
fn pole_cells_are_empty() {
    let (_, rows) = parse_csv(&stdout(&["plotdata", "-r", "1,2", "--lo", "0", "--hi", "1", "--points", "3"]));
    assert_eq!(rows[1][1].map(|v| v < 0.0), Some(true));
    assert_eq!(rows[1][2], None);
    assert_eq!(rows[2][1], None);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "plotdata", "-r", "1,3", "--lo", "-3", "--hi", "2", "--points", "40"][..],
        &["--json", "zeros", "-r", "5"],
        &["table", "--arg", "-5"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn printed_values_round_trip() {
    let p = ZetaParams::default();
    let v = json(&["plotdata", "-r", "1,2,5", "--lo", "-7", "--hi", "6", "--points", "97"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    for i in [3usize, 11, 19, 28, 40, 47, 55, 66, 80, 93] {
        let row = rows[i].as_array().unwrap();
        let s = row[0].as_f64().unwrap();
        let prof = eval_profile(s, 5, &p).unwrap();
        for (col, r) in [(1, 1), (2, 2), (3, 5)] {
            // 17 significant digits reproduce the double exactly.
            assert_eq!(row[col].as_f64(), Some(prof.values[r].value), "row {i}");
        }
    }
    let text = stdout(&["plotdata", "-r", "3", "--lo", "-1", "--hi", "0.3", "--points", "10"]);
    let (_, rows) = parse_csv(&text);
    for row in rows {
        let s = row[0].unwrap();
        let want = eval_profile(s, 3, &p).unwrap().values[3].value;
        assert_eq!(row[1].unwrap(), want);
    }
}

#[test]
fn exit_codes() {
    let out = run(&["eval", "-r", "2", "-s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: pole: "));
    let out = run(&["eval", "-r", "2", "-s", "0.5", "--exact"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: domain: "));
    assert_eq!(run(&["eval", "-r", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["zeros", "-r", "13"]).status.code(), Some(2));
}

#[test]
fn environment_overrides() {
    let bin = env!("CARGO_BIN_EXE_multizeta");
    let out = Command::new(bin).args(["eval", "-r", "1", "-s", "2"]).env("MULTIZETA_EM_TERMS", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: usage: "));
    let out = Command::new(bin).args(["eval", "-r", "1", "-s", "2"]).env("MULTIZETA_EM_CUTOFF", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin)
        .args(["--json", "eval", "-r", "1", "-s", "2"])
        .env("MULTIZETA_EM_CUTOFF", "60")
        .env("MULTIZETA_EM_TERMS", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let z = v["results"][0]["value"].as_f64().unwrap();
    assert!((z - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
}

#[test]
fn verification_suites() {
    let out = run(&["verify", "rouche", "--r-max", "4", "--k-max", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("21 passed, 0 failed"));
    let v = json(&["verify", "conjectures", "--r-max", "10"]);
    assert_eq!(v["results"]["all_pass"], true);
    let v = json(&["verify", "asymptotics"]);
    assert_eq!(v["results"]["all_pass"], true);
    assert_eq!(run(&["verify", "rouche", "--r-max", "7"]).status.code(), Some(2));
}
