use std::path::PathBuf;
use std::process::{Command, Output};

fn epstein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epstein"))
        .args(args)
        .env_remove("EPSTEIN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `(value, err)` from a plain line `name = value ± err`.
fn value_err(line: &str) -> (f64, f64) {
    let rhs = line.split(" = ").nth(1).unwrap();
    let mut parts = rhs.split(" ± ");
    let v = parts.next().unwrap().trim().parse().unwrap();
    let e = parts.next().unwrap().trim().parse().unwrap();
    (v, e)
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("epstein-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn eval_reference_value() {
    let o = epstein(&["eval", "--n", "10", "--s", "2.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (v, e) = value_err(text.lines().next().unwrap());
    assert!(e > 0.0 && e <= 1e-9);
    assert!((v - 0.205_903_040_487).abs() <= e + 5e-13, "{text}");
}

#[test]
fn eval_one_dimension_gives_twice_zeta_four() {
    let o = epstein(&["eval", "--n", "1", "--s", "2", "--scales", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rows = text.lines();
    assert_eq!(rows.next(), Some("quantity,n,s,value,err"));
    let xi_row: Vec<&str> = rows.next().unwrap().split(',').collect();
    let z_row: Vec<&str> = rows.next().unwrap().split(',').collect();
    assert_eq!(z_row[0], "z");
    let zeta4 = std::f64::consts::PI.powi(4) / 90.0;
    let z: f64 = z_row[3].parse().unwrap();
    let z_err: f64 = z_row[4].parse().unwrap();
    assert!((z - 2.0 * zeta4).abs() <= z_err + 1e-15);
    // Xi = V pi^-s Gamma(s) Z with V = 1, Gamma(2) = 1
    let xi: f64 = xi_row[3].parse().unwrap();
    let xi_err: f64 = xi_row[4].parse().unwrap();
    assert!((xi - 2.0 * zeta4 / std::f64::consts::PI.powi(2)).abs() <= xi_err + 1e-15);
    // 17 significant digits
    assert_eq!(z_row[3].split('e').next().unwrap().len(), 18);
}

#[test]
fn table1_first_row() {
    let o = epstein(&["table1", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.trim() == "10  (1.0899, 3.9101)"), "{text}");
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn json_document_shape() {
    let o = epstein(&["second-deriv", "--n", "11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["spec"]["run"]["command"], "second-deriv");
    assert_eq!(doc["results"]["critical_point"], "local_min");
    assert!(doc["results"]["second_derivative"]["err"].as_f64().unwrap() > 0.0);
    assert_eq!(doc["errors"].as_array().unwrap().len(), 0);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["eval", "--n", "3"],
        vec!["eval", "--n", "3", "--s", "1", "--scales", "1,2"],
        vec!["eval", "--n", "3", "--s", "1", "--tol", "-1"],
        vec!["frobnicate"],
        vec!["scan", "--n", "10", "--s", "2.5"],
        vec!["scan", "--n", "3", "--s", "0.7", "--bounds", "2:-2"],
        vec!["interval", "--n", "10", "--unknown"],
    ] {
        let o = epstein(&args);
        assert_eq!(o.status.code(), Some(64), "{args:?}");
    }
    assert_eq!(epstein(&["--help"]).status.code(), Some(0));
}

#[test]
fn evaluation_errors_exit_1() {
    let o = epstein(&["eval", "--n", "2", "--s", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("error:"));
}

#[test]
fn scan_files_are_reproducible_across_thread_counts() {
    let a = temp("a.csv");
    let b = temp("b.csv");
    let common = ["scan", "--n", "3", "--s", "0.7", "--grid", "15", "--format", "csv", "--out"];
    let run = |path: &PathBuf, threads: &str| {
        let mut args: Vec<&str> = common.to_vec();
        args.push(path.to_str().unwrap());
        Command::new(env!("CARGO_BIN_EXE_epstein"))
            .args(&args)
            .env("EPSTEIN_THREADS", threads)
            .status()
            .unwrap()
    };
    assert_eq!(run(&a, "1").code(), Some(0));
    assert_eq!(run(&b, "3").code(), Some(0));
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert_eq!(text.lines().next(), Some("log_k2,log_k3,sign,value,err"));
    assert_eq!(text.lines().count(), 1 + 15 * 15);
}

#[test]
fn scan_plain_summary() {
    let o = epstein(&["scan", "--n", "3", "--s", "0.7", "--grid", "21"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("negative region: connected, 1 component(s)"), "{text}");
    assert!(text.contains("discrete convexity: pass"));
    assert!(text.contains("origin node: -"));
}

#[test]
fn interval_sweep_and_empty_interval() {
    let o = epstein(&["interval", "--n", "4", "--sweep", "--grid", "7", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("s,xi,err,sign"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",-")));
    let o = epstein(&["interval", "--n", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("< 0"));
}

#[test]
fn verification_commands_pass() {
    assert_eq!(epstein(&["bounds"]).status.code(), Some(0));
    assert_eq!(epstein(&["convexity", "--seed", "3"]).status.code(), Some(0));
    let o = epstein(&["verify-min", "--n", "3", "--s", "0.9", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["results"]["failures"].as_array().unwrap().len(), 0);
}
