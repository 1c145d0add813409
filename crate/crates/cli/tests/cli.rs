use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elliptic-bohr"))
        .args(args)
        .env_remove("ELLIPTIC_BOHR_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn csv_rows(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn solve_real_matches_known_root() {
    let out = run(&["solve", "--kind", "real"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["kind"], "real_coefficients");
    assert!((v["value"].as_f64().unwrap() - 0.205328678165046).abs() <= 1e-9);
}

#[test]
fn solve_general_lies_in_bracket() {
    let v = json(&run(&["solve", "--kind", "general"]));
    let x = v["value"].as_f64().unwrap();
    assert!(0.19 < x && x < 0.20, "{x}");
}

#[test]
fn coarse_tolerance_bounds_residual() {
    let v = json(&run(&["solve", "--kind", "real", "--tol", "1e-3"]));
    assert!(v["residual"].as_f64().unwrap().abs() <= 1e-3);
    assert!((v["value"].as_f64().unwrap() - 0.205328678165046).abs() <= 1e-3);
}

#[test]
fn floats_are_printed_to_seventeen_digits() {
    let out = run(&["solve", "--kind", "real"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let value = text.split("\"value\":").nth(1).unwrap().split(',').next().unwrap();
    let mantissa = value.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{value}");
}

#[test]
fn verify_campaign_holds_below_the_radius() {
    let out = run(&["verify", "--R", "0.2", "--count", "1000"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["all_hold"], true);
    for (name, fam) in v["families"].as_object().unwrap() {
        assert_eq!(fam["reports"], 1000, "{name}");
        assert!(fam["min_slack"].as_f64().unwrap() >= -1e-10, "{name}");
    }
}

#[test]
fn verify_pair_family_outside_regime_exits_3() {
    let out = run(&["verify", "--R", "0.3", "--families", "pair_majorant"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("R <= 0.2053"));
}

#[test]
fn verify_at_disc_limit() {
    assert_eq!(run(&["verify", "--R", "0.0", "--count", "10"]).status.code(), Some(0));
}

#[test]
fn verify_real_campaign_runs_sharpened_family() {
    let out = run(&["verify", "--R", "0.15", "--count", "50", "--real-coefficients", "--families", "real_coefficient,mixed_index"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["families"]["real_coefficient"]["all_hold"].as_bool().unwrap());
    assert_eq!(v["families"].as_object().unwrap().len(), 2);
}

#[test]
fn verify_real_family_without_real_series_is_rejected() {
    let out = run(&["verify", "--R", "0.1", "--count", "5", "--families", "real_coefficient"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweeps_cross_one_where_expected() {
    for (kind, lo, hi) in [("real", 0.205, 0.206), ("general", 0.19, 0.20)] {
        let out = run(&["sweep", "--kind", kind, "--R-lo", "0.1", "--R-hi", "0.3", "--steps", "201"]);
        assert_eq!(out.status.code(), Some(0));
        let (header, rows) = csv_rows(&out);
        assert_eq!(header, ["R", "series"]);
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap())).collect();
        assert!(pts.windows(2).all(|w| w[1].1 > w[0].1 && w[1].0 > w[0].0));
        let cross = pts.windows(2).find(|w| w[0].1 < 1.0 && w[1].1 >= 1.0).unwrap();
        assert!(cross[0].0 >= lo - 1e-12 && cross[1].0 <= hi + 1e-12, "{kind}: {cross:?}");
    }
}

#[test]
fn bad_sweep_range_exits_2() {
    assert_eq!(run(&["sweep", "--kind", "real", "--R-lo", "0.3", "--R-hi", "0.2"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--kind", "real", "--R-lo", "0.1", "--R-hi", "1.0"]).status.code(), Some(2));
}

#[test]
fn extremal_verdicts_on_either_side_of_the_radius() {
    let above = json(&run(&["extremal", "--family", "phi1", "--R", "0.21"]));
    assert_eq!(above["verdict"]["witnessed_failure"], true);
    let below = json(&run(&["extremal", "--family", "phi1", "--R", "0.19"]));
    assert_eq!(below["verdict"]["witnessed_failure"], false);
    let general = json(&run(&["extremal", "--family", "phi2", "--R", "0.2"]));
    assert_eq!(general["verdict"]["kind"], "general");
    assert_eq!(general["verdict"]["witnessed_failure"], true);
}

#[test]
fn extremal_csv_trace_settles() {
    let out = run(&["extremal", "--family", "phi2", "--R", "0.1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header[0], "k");
    assert_eq!(rows.len(), 13);
    let metric = header.iter().position(|h| h == "metric").unwrap();
    let last: f64 = rows.last().unwrap()[metric].parse().unwrap();
    let first: f64 = rows[0][metric].parse().unwrap();
    assert!(last.abs() < 0.1 && last.abs() < first.abs());
    let verdict: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(verdict["witnessed_failure"], false);
}

#[test]
fn extremal_level_above_trace_exits_2() {
    assert_eq!(run(&["extremal", "--family", "phi1", "--R", "0.95"]).status.code(), Some(2));
}

#[test]
fn geometry_table() {
    let out = run(&["geometry", "--rho", "5.1284", "--R", "0.5"]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["label", "R", "rho", "eccentricity"]);
    assert_eq!(rows.len(), 4);
    for r in &rows {
        let (level, rho, ecc): (f64, f64, f64) = (r[1].parse().unwrap(), r[2].parse().unwrap(), r[3].parse().unwrap());
        assert!((level * rho - 1.0).abs() < 1e-15);
        assert!((ecc - 2.0 * rho / (1.0 + rho * rho)).abs() < 1e-15);
    }
    assert!((rows[3][3].parse::<f64>().unwrap() - 0.3757).abs() < 5e-5);
    assert_eq!(run(&["geometry", "--rho", "0.5"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["solve"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--kind", "imaginary"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--R", "0.1", "--families", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--kind", "real", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic_across_runs_and_threads() {
    let args = ["verify", "--R", "0.1", "--count", "64", "--seed", "7"];
    let a = run(&args).stdout;
    assert_eq!(a, run(&args).stdout);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(a, run(&seq).stdout);
    let threaded = Command::new(env!("CARGO_BIN_EXE_elliptic-bohr"))
        .args(args)
        .env("ELLIPTIC_BOHR_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(a, threaded.stdout);
}

#[test]
fn bad_thread_count_exits_2() {
    let out = Command::new(env!("CARGO_BIN_EXE_elliptic-bohr"))
        .args(["solve", "--kind", "real"])
        .env("ELLIPTIC_BOHR_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("elliptic-bohr-{}.json", std::process::id()));
    let out = run(&["solve", "--kind", "general", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "1");
    std::fs::remove_file(path).unwrap();
}
