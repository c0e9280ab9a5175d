//! End-to-end tests of the binary: exit-code contract, output shapes, the
//! header round-trip guarantee, config-file precedence and the repro recipes.

use std::path::Path;
use std::process::{Command, Output};

fn alleemap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alleemap"))
        .args(args)
        .env_remove("ALLEEMAP_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Lines of a product with the timestamp stripped, for byte comparisons.
fn stable_lines(text: &str) -> Vec<String> {
    text.lines()
        .filter(|line| !line.contains("generated_unix"))
        .map(str::to_owned)
        .collect()
}

#[test]
fn exit_codes_follow_the_contract() {
    // usage error: unknown flag
    let out = alleemap(&["fixed-points", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(64));

    // usage error: malformed subcommand arguments
    let out = alleemap(&["ns", "--param", "beta", "--bracket", "1.3"]);
    assert_eq!(out.status.code(), Some(64));

    // domain error: invalid parameter value
    let out = alleemap(&["--w", "0", "fixed-points"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("w"));

    // numerical failure: no sign change in the bracket
    let out = alleemap(&["ns", "--param", "beta", "--bracket", "1.30", "1.32"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("sign"));

    // usage error: nonpositive tolerance
    let out = alleemap(&[
        "threshold",
        "--param",
        "s",
        "--bracket",
        "0.25",
        "0.27",
        "--tol",
        "-1",
    ]);
    assert_eq!(out.status.code(), Some(64));

    // success: no diagnostic on stderr
    let out = alleemap(&["fixed-points"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).is_empty());

    // plot is not defined for report-style commands
    let out = alleemap(&["--plot", "/tmp/x.svg", "fixed-points"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn fixed_points_table_matches_reference() {
    let out = alleemap(&["fixed-points"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("E0,0,0,") && rows[0].ends_with("sink"));
    assert!(rows[1].starts_with("Es,0.0125,0,") && rows[1].ends_with("saddle"));
    assert!(rows[2].starts_with("E1,1,0,") && rows[2].ends_with("saddle"));
    assert!(rows[3].starts_with("E+,0.625") && rows[3].ends_with("sink"));
    assert!(rows[3].contains(",1.914062"));
}

#[test]
fn ns_prints_critical_value() {
    let out = alleemap(&["ns", "--param", "beta", "--bracket", "1.30", "1.40"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "beta_NS = 1.344995");

    let out = alleemap(&["ns", "--param", "s", "--bracket", "0.20", "0.26"]);
    assert_eq!(stdout(&out).trim(), "s_NS = 0.243716");
}

#[test]
fn simulate_prey_axis_is_constant() {
    let out = alleemap(&["simulate", "--x0", "1", "--y0", "0", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, vec!["1,1,0", "2,1,0", "3,1,0", "4,1,0", "5,1,0"]);
}

#[test]
fn normal_form_reports_negative_sigma() {
    let out = alleemap(&[
        "normal-form",
        "--param",
        "beta",
        "--bracket",
        "1.30",
        "1.40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("beta_NS = 1.344995"));
    assert!(text.contains("sigma* = -0.005305"));
    assert!(text.contains("attracting curve beyond"));
    assert!(text.contains("resonance_ok = true"));
}

#[test]
fn threshold_reports_value_in_bracket() {
    let out = alleemap(&[
        "threshold",
        "--param",
        "s",
        "--bracket",
        "0.25",
        "0.27",
        "--tol",
        "1e-3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: f64 = text
        .trim()
        .strip_prefix("s_th = ")
        .unwrap()
        .parse()
        .unwrap();
    assert!(value > 0.25 && value < 0.27);
}

#[test]
fn output_header_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("diagram.csv");
    let out = alleemap(&[
        "--out",
        first.to_str().unwrap(),
        "diagram",
        "--param",
        "beta",
        "--range",
        "1.30",
        "1.34",
        "--n",
        "5",
        "--transient",
        "2000",
        "--keep",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&first).unwrap();

    // Re-run the echoed command verbatim, directed at a second file.
    let command_line = text
        .lines()
        .find(|l| l.starts_with("# command: alleemap "))
        .unwrap()
        .strip_prefix("# command: alleemap ")
        .unwrap();
    let second = dir.path().join("again.csv");
    let mut args: Vec<&str> = command_line.split_whitespace().collect();
    let second_str = second.to_str().unwrap();
    args.extend(["--out", second_str]);
    let out = alleemap(&args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text_again = std::fs::read_to_string(&second).unwrap();
    assert_eq!(stable_lines(&text), stable_lines(&text_again));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "# comment\nbeta = 1.35\nw = 0.125\n").unwrap();

    // config file value shows up in the header
    let out = alleemap(&["--config", config.to_str().unwrap(), "fixed-points"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("# beta: 1.35"));

    // flags override the file
    let out = alleemap(&[
        "--config",
        config.to_str().unwrap(),
        "--beta",
        "1.31",
        "fixed-points",
    ]);
    assert!(stdout(&out).contains("# beta: 1.31"));

    // the env var supplies the default path
    let out = Command::new(env!("CARGO_BIN_EXE_alleemap"))
        .args(["fixed-points"])
        .env("ALLEEMAP_CONFIG", config.to_str().unwrap())
        .output()
        .unwrap();
    assert!(stdout(&out).contains("# beta: 1.35"));

    // mixing parameter families in one file is rejected as usage
    std::fs::write(&config, "beta = 1.3\nr = 1.0\n").unwrap();
    let out = alleemap(&["--config", config.to_str().unwrap(), "fixed-points"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn raw_parameters_resolve_to_the_dimensionless_set() {
    let out = alleemap(&["--raw", "1.293,4,0.05,0.5,0.7,3,0.6,0.168", "fixed-points"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("# parameter_source: raw"));
    assert!(text.contains("# s: 0.0125"));
    let eplus = text.lines().find(|l| l.starts_with("E+")).unwrap();
    let x: f64 = eplus.split(',').nth(1).unwrap().parse().unwrap();
    assert!((x - 0.625).abs() < 0.01, "x+ = {x}");

    // raw and dimensionless flags are mutually exclusive
    let out = alleemap(&[
        "--raw",
        "1.293,4,0.05,0.5,0.7,3,0.6,0.168",
        "--beta",
        "1.3",
        "fixed-points",
    ]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn json_format_is_parseable_and_typed() {
    let out = alleemap(&["--format", "json", "jacobian", "--x", "0.5", "--y", "1.0"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["columns"][0], "method");
    assert_eq!(value["config"]["s"], 0.0125);
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "analytic");
    let m22 = rows[0][4].as_f64().unwrap();
    assert!(m22.is_finite());
}

#[test]
fn scan_emits_grid_and_heatmap() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let svg = dir.path().join("grid.svg");
    let out = alleemap(&[
        "--out",
        csv.to_str().unwrap(),
        "--plot",
        svg.to_str().unwrap(),
        "scan",
        "--target",
        "e1",
        "--x-param",
        "s",
        "--x-range",
        "0",
        "4",
        "--y-param",
        "w",
        "--y-range",
        "0",
        "3",
        "--n",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 400);
    // cell centers at (0.1 + i 0.2, 0.075 + j 0.15); s=0.5,w=0.975 is a saddle
    assert!(rows
        .iter()
        .any(|r| r.starts_with("0.5,") && r.ends_with("saddle")));
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<?xml"));
    assert!(svg_text.contains("</svg>"));
}

#[test]
fn repro_fig5_writes_products_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = alleemap(&[
        "repro",
        "fig5",
        "--out-dir",
        dir.path().to_str().unwrap(),
        "--sweep-n",
        "41",
        "--transient",
        "3000",
        "--keep",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("s_NS = 0.243716"), "summary: {text}");
    assert!(text.contains("s_th = "), "summary: {text}");
    assert!(dir.path().join("fig5_diagram.csv").exists());
    assert!(dir.path().join("fig5_diagram.svg").exists());
    assert!(dir.path().join("fig5_portrait_1.svg").exists());
}

#[test]
fn repro_fig2_grid_has_only_sinks_and_saddles() {
    let dir = tempfile::tempdir().unwrap();
    // n = 100 keeps the s = 1 non-hyperbolic line off the cell centers,
    // as the full 400-cell resolution does.
    let out = alleemap(&[
        "repro",
        "fig2",
        "--out-dir",
        dir.path().to_str().unwrap(),
        "--grid-n",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("fig2_grid.csv")).unwrap();
    let mut classes: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    classes.sort_unstable();
    classes.dedup();
    assert_eq!(classes, vec!["saddle", "sink"]);
}

#[test]
fn repro_rejects_unknown_figure() {
    let out = alleemap(&["repro", "fig99"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn plot_directory_must_exist() {
    let out = alleemap(&["--out", "/nonexistent-dir-xyz/file.csv", "fixed-points"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!Path::new("/nonexistent-dir-xyz").exists());
}
