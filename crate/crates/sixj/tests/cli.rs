use std::io::Write;
use std::process::{Command, Output};

use sixj_core::exact::sixj_f64;
use sixj_core::SixJArguments;

fn sixj(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sixj"));
    cmd.args(args);
    for k in ["SIXJ_QUAD_TOL", "SIXJ_ROOT_TOL", "SIXJ_THREADS"] {
        cmd.env_remove(k);
    }
    cmd.envs(env.iter().copied());
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const BASE: [&str; 10] = ["--j1", "2", "--j2", "3", "--j3", "4", "--j4", "5", "--j12", "4"];

fn with(extra: &[&'static str]) -> Vec<&'static str> {
    BASE.iter().copied().chain(extra.iter().copied()).collect()
}

#[test]
fn all_modes_report_three_values() {
    let o = sixj(&with(&["--j23", "5", "--mode", "all"]), &[]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    let modes: Vec<&str> = rows.iter().map(|r| &r[0]).collect();
    assert_eq!(modes, ["exact", "uniform", "pr"]);
    let exact: f64 = rows[0][1].parse().unwrap();
    let want = sixj_f64(&SixJArguments::integers([2, 3, 4, 5, 4, 5]).unwrap()).unwrap();
    assert_eq!(exact, want);
    let uniform: f64 = rows[1][1].parse().unwrap();
    assert!((uniform - want).abs() < 1e-3);
    assert_eq!(&rows[1][5], "allowed");
    assert!(!rows[1][2].is_empty() && !rows[1][3].is_empty() && !rows[1][4].is_empty());
}

#[test]
fn invalid_triad_exits_2() {
    let o = sixj(&["--j1", "2", "--j2", "3", "--j3", "4", "--j4", "5", "--j12", "6", "--j23", "5"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(j1,j2,j12)"));
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(sixj(&with(&["--j23", "3.3"]), &[]).status.code(), Some(2));
    assert_eq!(sixj(&with(&[]), &[]).status.code(), Some(2));
    assert_eq!(sixj(&with(&["sweep", "--from", "2"]), &[]).status.code(), Some(2));
    assert_eq!(sixj(&with(&["--j23", "5"]), &[("SIXJ_QUAD_TOL", "fast")]).status.code(), Some(2));
}

#[test]
fn fractions_and_decimals_agree() {
    let a = sixj(&["--j1", "3/2", "--j2", "5/2", "--j3", "2", "--j4", "3", "--j12", "2", "--j23", "5/2"], &[]);
    let b = sixj(&["--j1", "1.5", "--j2", "2.5", "--j3", "2", "--j4", "3", "--j12", "2", "--j23", "2.5"], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn primitive_failure_exits_3() {
    let o = sixj(&with(&["--j23", "7", "--mode", "pr"]), &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("pr_forbidden"));
}

#[test]
fn sweep_range_arithmetic() {
    let o = sixj(&with(&["sweep", "--from", "3", "--to", "7"]), &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "j23,exact,uniform,pr,abs_err_uniform,abs_err_pr,beta,classification,flags");
    let first: Vec<&str> = lines.iter().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(first, ["3", "4", "5", "6", "7"]);
}

/// Same fields; numbers to 1e-12 relative (the platform libm may differ in
/// the last ulp from the one that wrote the golden file).
fn same_csv(got: &str, want: &str) {
    let (g, w): (Vec<&str>, Vec<&str>) = (got.lines().collect(), want.lines().collect());
    assert_eq!(g.len(), w.len());
    for (a, b) in g.iter().zip(&w) {
        let (fa, fb): (Vec<&str>, Vec<&str>) = (a.split(',').collect(), b.split(',').collect());
        assert_eq!(fa.len(), fb.len(), "{a}");
        for (x, y) in fa.iter().zip(&fb) {
            match (x.parse::<f64>(), y.parse::<f64>()) {
                (Ok(x), Ok(y)) => assert!((x - y).abs() <= 1e-12 * y.abs().max(1e-300), "{x} vs {y}"),
                _ => assert_eq!(x, y),
            }
        }
    }
}

fn same_json(got: &serde_json::Value, want: &serde_json::Value) {
    use serde_json::Value;
    match (got, want) {
        (Value::Number(a), Value::Number(b)) => {
            let (a, b) = (a.as_f64().unwrap(), b.as_f64().unwrap());
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300), "{a} vs {b}");
        }
        (Value::Array(a), Value::Array(b)) => {
            assert_eq!(a.len(), b.len());
            a.iter().zip(b).for_each(|(x, y)| same_json(x, y));
        }
        (Value::Object(a), Value::Object(b)) => {
            assert_eq!(a.keys().collect::<Vec<_>>(), b.keys().collect::<Vec<_>>());
            a.values().zip(b.values()).for_each(|(x, y)| same_json(x, y));
        }
        _ => assert_eq!(got, want),
    }
}

#[test]
fn csv_golden_and_thread_independent() {
    let golden = include_str!("golden/sweep_2_3_4_5_j12_4.csv");
    let runs: Vec<String> = ["1", "4"]
        .iter()
        .map(|t| {
            let o = sixj(&with(&["sweep"]), &[("SIXJ_THREADS", t)]);
            assert_eq!(o.status.code(), Some(0));
            stdout(&o)
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    same_csv(&runs[0], golden);
}

#[test]
fn json_golden_and_thread_independent() {
    let golden = include_str!("golden/sweep_half_j12.json");
    let args = ["--j1", "3/2", "--j2", "5/2", "--j3", "2", "--j4", "3", "--j23", "2.5", "sweep", "--sweep", "j12", "--format", "json"];
    let base = stdout(&sixj(&args, &[]));
    for threads in ["1", "3"] {
        assert_eq!(stdout(&sixj(&[&args[..], &["--threads", threads]].concat(), &[])), base);
    }
    same_json(&serde_json::from_str(&base).unwrap(), &serde_json::from_str(golden).unwrap());
    let v: serde_json::Value = serde_json::from_str(golden).unwrap();
    for row in v["rows"].as_array().unwrap() {
        if row["classification"] == "forbidden" {
            assert!(row.get("pr").is_none());
            assert!(row["flags"].as_array().unwrap().iter().any(|f| f == "pr_forbidden"));
        }
    }
}

#[test]
fn output_file_and_config_layering() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sixj.ini");
    let mut f = std::fs::File::create(&cfg).unwrap();
    writeln!(f, "quad_tol = 1e-9\nroot_tol = 1e-11").unwrap();
    let out = dir.path().join("out.json");
    let args = with(&["sweep", "--format", "json", "--config"]);
    let mut args: Vec<&str> = args.to_vec();
    let (cfg_s, out_s) = (cfg.to_str().unwrap(), out.to_str().unwrap());
    args.extend([cfg_s, "--out", out_s, "--quad-tol", "1e-8"]);
    let o = sixj(&args, &[("SIXJ_ROOT_TOL", "1e-10")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["meta"]["quad_tol"], 1e-8);
    assert_eq!(v["meta"]["root_tol"], 1e-10);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn diagnostics() {
    let o = sixj(&["diag", "schlafli"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let o = sixj(&["diag", "symbol", "--j", "20", "--j2x", "40"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = sixj(&["diag", "alpha"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let o = sixj(&["diag", "symbol", "--j", "3"], &[]);
    assert_eq!(o.status.code(), Some(2));

    // the harmonic comparison misses its 1% bound; the report is still written
    let o = sixj(&["diag", "airy", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[0]["check"], "linear_ramp_max_abs_error");
    assert_eq!(rows[0]["pass"], true);
    assert_eq!(rows[1]["check"], "harmonic_max_relative_error");
}
