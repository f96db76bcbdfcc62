use std::fs;

use rhxi::report::{decimal_digits, read_csv, rows_to_result, run};
use rug::Float;

fn no_env(_: &str) -> Option<String> {
    None
}

fn rhxi(args: &[&str]) -> (i32, String, String) {
    rhxi_env(args, &no_env)
}

fn rhxi_env(args: &[&str], env: &dyn Fn(&str) -> Option<String>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rhxi").chain(args.iter().copied());
    let code = run(argv, env, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn integrate_report_and_determinism() {
    let args = ["integrate", "--eps", "0.25", "--tol", "1e-10"];
    let (code, a, diag) = rhxi(&args);
    assert_eq!(code, 0, "{diag}");
    let total: f64 = a
        .lines()
        .find_map(|l| l.strip_prefix("total_err = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(total <= 1e-10);
    assert!(diag.contains("wall_time"));
    let (_, b, _) = rhxi(&args);
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rhxi(&["integrate", "--eps", "0"]).0, 2);
    assert_eq!(rhxi(&["xicheck", "--precision-bits", "64", "--tol", "1e-30"]).0, 2);
    assert_eq!(rhxi(&["zeros", "--tmax", "1000"]).0, 2);
    assert_eq!(rhxi(&["sweep", "--eps-steps", "0"]).0, 2);
    assert_eq!(rhxi(&["sweep", "--inject", "0.01@0.5+10i"]).0, 2);
    assert_eq!(rhxi(&["frobnicate"]).0, 2);
    assert_eq!(rhxi(&["--help"]).0, 0);
}

#[test]
fn zeros_rows() {
    let (code, out, _) = rhxi(&["zeros", "--tmax", "30"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1,14.134725"));
    let (code, out, _) = rhxi(&["zeros", "--tmax", "10"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn env_sets_precision_unless_flag_given() {
    let env = |k: &str| (k == "RHXI_PRECISION_BITS").then(|| "128".to_string());
    let digits_of = |out: &str| {
        let v = out.lines().find_map(|l| l.strip_prefix("I = ")).unwrap();
        v.trim_start_matches('-').chars().filter(char::is_ascii_digit).count()
    };
    let (_, out, _) = rhxi_env(&["integrate", "--eps", "0.4", "--tol", "1e-8"], &env);
    assert!(digits_of(&out) <= decimal_digits(128) + 3);
    let (_, out, _) = rhxi_env(&["integrate", "--eps", "0.4", "--tol", "1e-8", "--precision-bits", "256"], &env);
    assert!(digits_of(&out) >= decimal_digits(256));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "eps_min = 0.3\neps_max = 0.4\neps_steps = 2\ntol = 1e-8\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let (code, out, _) = rhxi(&["sweep", "--config", cfg]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["results"].as_array().unwrap().len(), 2);
    for key in ["config", "results", "reference", "jumps"] {
        assert!(doc.get(key).is_some(), "{key}");
    }
    let (_, out, _) = rhxi(&["sweep", "--config", cfg, "--eps-steps", "1", "--format", "csv"]);
    assert_eq!(out.lines().count(), 2);
    assert!(out.starts_with("eps,i_value,err_bound,t_used,failed"));
}

#[test]
fn injected_sweep_round_trips_through_csv_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("inj.csv");
    let svg = dir.path().join("inj.svg");
    let (code, summary, _) = rhxi(&[
        "sweep", "--tol", "1e-8", "--inject", "0.01@0.75+10i", "--eps-min", "0.2", "--eps-max", "0.3",
        "--eps-steps", "6", "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 10);
    assert!(summary.contains("jumps = 1"));

    let rows = read_csv(fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 6);
    let back = rows_to_result(&rows, 256, 5.0).unwrap();
    assert_eq!(back.jumps.len(), 1);
    assert_eq!((back.jumps[0].eps_lo, back.jumps[0].eps_hi), (0.24, 0.26));
    // full-precision strings survive the trip
    let v = Float::with_val(256, Float::parse(&rows[0].i_value).unwrap());
    assert_eq!(v.to_string_radix(10, Some(decimal_digits(256))), rows[0].i_value);

    assert_eq!(rhxi(&["plot", "--in", csv.to_str().unwrap(), "--out", svg.to_str().unwrap()]).0, 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count(), 6);
    assert!(text.contains(">epsilon<") && text.contains(">I(epsilon)<"));

    // the two plateaus differ by far more than the error bars
    let vals: Vec<f64> = rows.iter().map(|r| r.i_value.parse::<f64>().unwrap()).collect();
    let mean_bar = rows.iter().map(|r| r.err_bound.unwrap()).sum::<f64>() / rows.len() as f64;
    let low = vals[..3].iter().sum::<f64>() / 3.0;
    let high = vals[3..].iter().sum::<f64>() / 3.0;
    assert!((low - high).abs() > 5.0 * mean_bar);
}

#[test]
fn plot_rejects_empty_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    let out = dir.path().join("x.svg");
    assert_eq!(rhxi(&["plot", "--in", empty.to_str().unwrap(), "--out", out.to_str().unwrap()]).0, 2);
    fs::write(&empty, "eps,i_value,err_bound,t_used,failed\n").unwrap();
    assert_eq!(rhxi(&["plot", "--in", empty.to_str().unwrap(), "--out", out.to_str().unwrap()]).0, 2);
    assert_eq!(rhxi(&["plot", "--in", "/nonexistent.csv", "--out", out.to_str().unwrap()]).0, 2);
}
