use std::ffi::OsString;
use std::fs;
use std::process::Command;

use casimir_scatter::config::{parse_config, to_flags, ConfigError};
use casimir_scatter::output::format_value;
use casimir_scatter::{parse_command_line, run, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_USAGE};
use proptest::prelude::*;

fn argv(args: &[&str]) -> Vec<OsString> {
    std::iter::once("casimir-scatter")
        .chain(args.iter().copied())
        .map(OsString::from)
        .collect()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv(args), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Data rows (non-comment lines after the column line) as `(columns, rows)`.
fn table(csv: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let columns = lines
        .next()
        .expect("column line")
        .split(',')
        .map(String::from)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (columns, rows)
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let (cols, rows) = table(csv);
    let j = cols.iter().position(|c| c == name).expect("column present");
    rows.iter().map(|r| r[j].parse().unwrap()).collect()
}

#[test]
fn knife_edge_from_the_command_line() {
    let (code, out, _) = call(&["parabola-plate", "--R", "0", "--theta", "0", "--H", "1", "--sweep", "none"]);
    assert_eq!(code, EXIT_OK);
    let e = column(&out, "energy")[0];
    assert!((e + 0.0067415).abs() < 1e-6, "{e}");
    assert!(out.starts_with("# casimir-scatter "));
    assert!(out.lines().next().unwrap().contains("parabola-plate R=0 H=1 theta=0"));
}

#[test]
fn theta1_at_zero() {
    let (code, out, _) = call(&["pfa", "--kind", "theta1-pfa-r", "--x", "0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(column(&out, "value"), vec![-3.0]);
}

#[test]
fn stability_report() {
    let (code, out, _) = call(&["stability", "--eps-a", "2", "--eps-b", "3", "--medium", "vacuum"]);
    assert_eq!(code, EXIT_OK);
    let (_, rows) = table(&out);
    assert_eq!(rows.last().unwrap(), &["verdict", "StableEquilibriumExcluded"]);
    let (_, rows) = table(&call(&["stability", "--eps-a", "2", "--eps-b", "4", "--medium", "3"]).1);
    assert_eq!(rows.last().unwrap(), &["verdict", "NotExcluded"]);
}

#[test]
fn sweep_grid_and_columns() {
    let (code, out, _) = call(&[
        "cp", "--kind", "pair", "--sweep", "d", "--from", "1", "--to", "100", "--points", "3",
        "--spacing", "log",
    ]);
    assert_eq!(code, EXIT_OK);
    let d = column(&out, "d");
    assert_eq!((d[0], d[2]), (1.0, 100.0));
    assert!((d[1] - 10.0).abs() < 1e-12);
    let e = column(&out, "energy");
    assert!((e[0] / e[1] / 1e7 - 1.0).abs() < 1e-12);
}

#[test]
fn pfa_normalization_column() {
    let (code, out, _) = call(&["cyl-cyl", "--d", "2.5", "--normalize", "pfa"]);
    assert_eq!(code, EXIT_OK);
    let r = column(&out, "energy_over_pfa")[0];
    assert!(r > 0.5 && r < 1.0, "{r}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["cyl-cyl", "--d", "1"][..],
        &["cyl-cyl", "--d", "abc"],
        &["no-such-command"],
        &["cyl-cyl", "--sweep", "d", "--from", "3"],
        &["cyl-cyl", "--sweep", "theta", "--from", "3", "--to", "4"],
        &["cyl-plate", "--H", "3", "--max-order", "2"],
        &["parabola-plate", "--plate", "3"],
        &["selftest", "--criteria", "9"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty(), "{args:?}: {out}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = call(&["cyl-cyl", "--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("--normalize"));
}

#[test]
fn non_convergence_keeps_rows_and_exits_3() {
    let (code, out, err) = call(&[
        "cyl-plate", "--sweep", "H", "--from", "4", "--to", "1.02", "--points", "2",
        "--max-order", "16", "--tol", "1e-14",
    ]);
    assert_eq!(code, EXIT_NOT_CONVERGED);
    assert!(out.lines().last().unwrap().starts_with("# INCOMPLETE"));
    assert!(err.contains("did not converge"));
}

#[test]
fn config_file_sits_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    fs::write(&path, "# pair\nkind = pair\nd = 4\nalpha_z = 2\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["cp", "--config", p]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(column(&out, "d"), vec![4.0]);
    assert!(out.lines().next().unwrap().contains("alpha-z=2"));
    let (code, out, _) = call(&["cp", "--config", p, "--d", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(column(&out, "d"), vec![5.0]);
    let (code, out, _) = call(&["cp", "--d", "5", "--config", p]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(column(&out, "d"), vec![5.0]);

    fs::write(&path, "d 4\n").unwrap();
    assert_eq!(call(&["cp", "--config", p]).0, EXIT_USAGE);
    fs::write(&path, "bogus = 4\n").unwrap();
    assert_eq!(call(&["cp", "--config", p]).0, EXIT_USAGE);
    assert_eq!(call(&["cp", "--config", "/nonexistent/run.cfg"]).0, EXIT_USAGE);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let (code, out, _) = call(&["pfa", "--kind", "cyl-pair", "-o", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(column(&text, "value").len(), 1);
}

#[test]
fn spheroid_grid() {
    let (code, out, _) = call(&[
        "spheroid", "--shape", "oblate", "--sweep", "theta1", "--from", "0", "--to", "90",
        "--points", "3", "--sweep2", "theta2", "--from2", "0", "--to2", "90", "--points2", "2",
    ]);
    assert_eq!(code, EXIT_OK);
    let (cols, rows) = table(&out);
    assert_eq!(cols, ["theta1", "theta2", "energy"]);
    assert_eq!(rows.len(), 6);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_casimir-scatter");
    let ok = Command::new(bin).args(["pfa", "--kind", "theta1-fit", "--x", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("x,value"));
    let bad = Command::new(bin).args(["cyl-cyl", "--R", "-1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn header_lists_resolved_parameters() {
    let parsed = parse_command_line(&argv(&["cyl-plate", "--H", "2", "--tol", "1e-6"])).unwrap();
    let keys: Vec<&str> = parsed.params.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(&keys[..3], ["R", "H", "plate"]);
    assert!(parsed.params.contains(&("tol".into(), "1e-6".into())));
    assert!(!keys.contains(&"order"));
}

#[test]
fn config_parser_cases() {
    let s = parse_config("a = 1 # note\n\n  quad_tol=1e-8\na = 2\n").unwrap();
    assert_eq!(s, [("quad-tol".into(), "1e-8".into()), ("a".into(), "2".into())]);
    assert_eq!(to_flags(&s)[0], OsString::from("--quad-tol=1e-8"));
    assert_eq!(parse_config("x"), Err(ConfigError::MissingEquals { line: 1 }));
    assert_eq!(parse_config("\n = 3"), Err(ConfigError::EmptyKey { line: 2 }));
    assert!(matches!(parse_config("-x = 3"), Err(ConfigError::InvalidKey { .. })));
    assert!(matches!(parse_config("x ="), Err(ConfigError::EmptyValue { .. })));
    assert!(matches!(parse_config("config = a"), Err(ConfigError::Forbidden { .. })));
}

#[test]
fn value_formatting() {
    assert_eq!(format_value(0.0), "0");
    assert_eq!(format_value(-0.25), "-0.25");
    assert_eq!(format_value(1.5e-7), "1.5e-7");
    assert_eq!(format_value(f64::NAN), "NaN");
}

proptest! {
    #[test]
    fn config_round_trips(
        entries in prop::collection::vec(("[a-z][a-z0-9-]{0,8}", "[A-Za-z0-9.+-]{1,10}"), 0..8)
    ) {
        let text: String = entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        let parsed = parse_config(&text).unwrap();
        for (k, v) in &parsed {
            let last = entries.iter().rev().find(|(ek, _)| ek == k).unwrap();
            prop_assert_eq!(&last.1, v);
        }
        let mut keys: Vec<&String> = parsed.iter().map(|(k, _)| k).collect();
        keys.dedup();
        prop_assert_eq!(keys.len(), parsed.len());
    }

    #[test]
    fn config_never_panics(text in "\\PC{0,200}") {
        let _ = parse_config(&text);
    }

    #[test]
    fn parser_never_panics(words in prop::collection::vec("[-a-zA-Z0-9=.,]{0,12}", 0..8)) {
        let args: Vec<&str> = words.iter().map(String::as_str).collect();
        let _ = parse_command_line(&argv(&args));
    }
}
