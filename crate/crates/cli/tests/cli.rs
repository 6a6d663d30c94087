use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

const PI2: f64 = PI * PI;
/// j_{0,1}² from mpmath.
const J01_SQ: f64 = 5.783185962946784;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigenbox"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigenbox"))
        .args(args)
        .env("EIGENBOX_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, code)
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn constants_planar_row() {
    let (v, code) = json(&["constants", "--dim", "2"]);
    assert_eq!(code, 0);
    let rows = v["constants"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!((f(&rows[0]["c_n"]) - 96.0 * J01_SQ).abs() < 1e-9);
    assert!((f(&rows[0]["c_n"]) - 555.2).abs() < 0.05);
}

#[test]
fn constants_interval_row() {
    let (v, _) = json(&["constants", "--dim", "1"]);
    assert!((f(&v["constants"][0]["j"]) - PI / 2.0).abs() < 1e-12);
}

#[test]
fn constants_table_is_monotone() {
    let (v, _) = json(&["constants", "--max-dim", "10"]);
    let rows = v["constants"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.windows(2).all(|w| f(&w[0]["c_n"]) < f(&w[1]["c_n"])));
}

#[test]
fn constants_reject_bad_dimensions() {
    assert_eq!(run(&["constants", "--dim", "0"]).status.code(), Some(1));
    assert_eq!(run(&["constants", "--dim", "61"]).status.code(), Some(1));
    assert_eq!(run(&["constants", "--dim", "5", "--max-dim", "3"]).status.code(), Some(1));
}

fn spectrum_over_pi2(args: &[&str]) -> Vec<f64> {
    let (v, code) = json(args);
    assert_eq!(code, 0);
    v["spectrum"].as_array().unwrap().iter().map(|r| f(&r["lambda"]) / PI2).collect()
}

#[test]
fn box_spectrum_examples() {
    let square = spectrum_over_pi2(&["box-spectrum", "--sides", "1,1", "--count", "4"]);
    for (got, want) in square.iter().zip([2.0, 5.0, 5.0, 8.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    let long = spectrum_over_pi2(&["box-spectrum", "--sides", "5,1", "--count", "5"]);
    assert!((long[4] - 2.0).abs() < 1e-12);
    let interval = spectrum_over_pi2(&["box-spectrum", "--sides", "1", "--count", "3"]);
    for (got, want) in interval.iter().zip([1.0, 4.0, 9.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    let half = spectrum_over_pi2(&["box-spectrum", "--half-widths", "0.5,0.5", "--count", "4"]);
    assert_eq!(half, square);
}

#[test]
fn box_spectrum_needs_one_shape_flag() {
    assert_eq!(run(&["box-spectrum", "--count", "3"]).status.code(), Some(1));
    assert_eq!(
        run(&["box-spectrum", "--sides", "1", "--half-widths", "1", "--count", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["box-spectrum", "--sides", "1,-1", "--count", "3"]).status.code(), Some(1));
}

#[test]
fn verify_square_theorem1() {
    let (v, code) = json(&["verify", "--domain", "builtin:square", "--suite", "theorem1", "--k", "4", "--l", "1"]);
    assert_eq!(code, 0);
    let reports = v["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["verdict"], "satisfied");
    }
    assert_eq!(reports[0]["inequality_id"], "theorem1_box");
    assert!((f(&reports[0]["lhs"]) - 8.0 * PI2).abs() < 1e-9);
}

#[test]
fn verify_elongated_box_theorem2_not_applicable() {
    let (v, code) = json(&["verify", "--domain", "box:5,1", "--suite", "theorem2", "--k", "5", "--l", "1"]);
    assert_eq!(code, 0);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["verdict"], "not_applicable", "{r}");
    }
}

#[test]
fn verify_disk64_ashbaugh_benguria_near_equality() {
    let (v, code) = json(&["verify", "--domain", "builtin:disk64", "--suite", "classical"]);
    assert_eq!(code, 0);
    let ab = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["inequality_id"] == "ashbaugh_benguria")
        .unwrap();
    assert!(f(&ab["margin"]).abs() <= 0.02, "{ab}");
    assert_eq!(v["summary"][0]["spectrum_source"], "finitedifference");
}

#[test]
fn verify_all_suites_on_square() {
    let (v, code) = json(&["verify", "--domain", "builtin:square", "--k", "6", "--l", "2"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["inequality_id"].as_str().unwrap())
        .collect();
    for id in ["theorem1_box", "theorem2_box", "corollary", "ppw_gap", "berezin_li_yau", "hersch_protter"] {
        assert!(ids.contains(&id), "{id}");
    }
    assert_eq!(v["summary"][0]["violations"], 0);
}

#[test]
fn verify_polygon_file_and_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.json");
    // clockwise input is reoriented on load
    std::fs::write(&path, r#"{"vertices": [[0,0],[0,1],[1,0]]}"#).unwrap();
    let p = path.to_str().unwrap();
    let (v, code) = json(&["verify", "--domain", p, "--suite", "inradius", "--mesh", "0.04,0.02,0.01"]);
    assert_eq!(code, 0);
    assert_eq!(f(&v["summary"][0]["mesh_width"]), 0.01);
    // the right isosceles triangle has λ_1 = 5π²
    let hp = &v["reports"][0];
    assert_eq!(hp["inequality_id"], "hersch_protter");
    assert!((f(&hp["rhs"]) / (5.0 * PI2) - 1.0).abs() < 0.02);

    let bad = dir.path().join("l.json");
    std::fs::write(&bad, r#"{"vertices": [[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]]}"#).unwrap();
    let out = run(&["verify", "--domain", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("convex"));

    let coarse = run(&["verify", "--domain", p, "--mesh", "0.5,0.25"]);
    assert_eq!(coarse.status.code(), Some(1));
    assert_eq!(run(&["verify", "--domain", "missing.json"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--domain", "builtin:moon"]).status.code(), Some(1));
}

#[test]
fn sweep_boxes_have_no_violations() {
    let (v, code) = json(&["sweep", "--trials", "1000", "--dim", "2", "--shape", "box", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"][0]["violations"], 0);
    assert_eq!(v["summary"][0]["trials"], 1000);
    let rows = v["inequalities"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["violations"] == 0));
    let t1 = rows.iter().find(|r| r["inequality_id"] == "theorem1_box").unwrap();
    assert!(t1["worst_domain"].as_str().unwrap().starts_with("box:"));
}

#[test]
fn sweep_polygons_have_no_violations() {
    for extra in [None, Some("--nonconvex")] {
        let mut args = vec!["sweep", "--trials", "2", "--shape", "polygon", "--seed", "7", "--max-k", "2"];
        args.extend(extra);
        let (v, code) = json(&args);
        assert_eq!(code, 0);
        assert_eq!(v["summary"][0]["violations"], 0);
    }
}

#[test]
fn empty_sweep() {
    let (v, code) = json(&["sweep", "--trials", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"][0]["reports"], 0);
    assert!(v["inequalities"].as_array().unwrap().is_empty());
}

#[test]
fn sweep_output_is_independent_of_threads() {
    let args = ["sweep", "--trials", "200", "--dim", "3", "--seed", "11", "--max-k", "12"];
    let one = run_env(&args, "1");
    let many = run_env(&args, "4");
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(run_env(&args, "lots").status.code(), Some(1));
}

#[test]
fn sweep_trial_limits() {
    assert_eq!(run(&["sweep", "--trials", "501", "--shape", "polygon"]).status.code(), Some(1));
    assert_eq!(run(&["sweep", "--trials", "100001"]).status.code(), Some(1));
}

#[test]
fn counterexample_table() {
    let (v, code) = json(&["counterexample", "--k", "10"]);
    assert_eq!(code, 0);
    let rows = v["family"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!((f(&rows[0]["lambda_1"]) - 2.0 * PI2).abs() < 1e-12);
    assert!((f(&rows[0]["ratio"]) - 1.0).abs() < 1e-15);
    assert!((f(&rows[9]["lambda_1"]) - 1.01 * PI2).abs() < 1e-12);
    assert!((f(&rows[9]["lambda_k"]) - 2.0 * PI2).abs() < 1e-12);
    assert!(rows.iter().all(|r| r["unconditional_fails"] == false));

    let s = &v["summary"][0];
    let beta = f(&s["beta_2"]);
    let first = s["first_failing_k"].as_u64().unwrap();
    assert!((beta * 96.0 * J01_SQ - 1.0).abs() < 1e-12);
    assert_eq!(first, 1111);
    let pair = v["first_failure"].as_array().unwrap();
    assert_eq!(pair[0]["unconditional_fails"], false);
    assert_eq!(pair[1]["unconditional_fails"], true);
    assert_eq!(pair[1]["k"], first);
}

#[test]
fn replay_examples() {
    let (v, code) = json(&["replay", "--box", "0.5,0.5", "--k", "4", "--l", "1", "--lemma", "31"]);
    assert_eq!(code, 0);
    assert_eq!(v["transcript"][0]["status"], "passed");
    assert!(v["steps"].as_array().unwrap().iter().all(|s| s["pass"] == true));

    let (v, code) = json(&["replay", "--box", "2.5,0.5", "--k", "5", "--l", "1", "--lemma", "33"]);
    assert_eq!(code, 0);
    assert_eq!(v["transcript"][0]["status"], "not_applicable");

    // one dimension halts at the Γ-chain step
    let (v, code) = json(&["replay", "--box", "0.5", "--k", "1", "--l", "1", "--lemma", "31"]);
    assert_eq!(code, 2);
    assert_eq!(v["transcript"][0]["failed_step"], "s4");

    assert_eq!(run(&["replay", "--box", "0.5,0.5", "--k", "1", "--lemma", "32"]).status.code(), Some(1));
    assert_eq!(run(&["replay", "--box", "0.5,0.5", "--k", "1", "--l", "2", "--lemma", "31"]).status.code(), Some(1));
}

#[test]
fn replay_is_seed_deterministic() {
    let args = ["replay", "--box", "0.4,0.7", "--k", "9", "--l", "2", "--lemma", "31", "--seed", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

/// Parses the `# name` sections of CSV output into rows of strings.
fn csv_sections(text: &str) -> Vec<(String, Vec<String>, Vec<Vec<String>>)> {
    text.split("\n\n")
        .map(|block| {
            let mut lines = block.lines();
            let name = lines.next().unwrap().trim_start_matches("# ").to_string();
            let body: String = lines.collect::<Vec<_>>().join("\n");
            let mut r = csv::ReaderBuilder::new().from_reader(body.as_bytes());
            let header = r.headers().unwrap().iter().map(str::to_string).collect();
            let rows = r.records().map(|x| x.unwrap().iter().map(str::to_string).collect()).collect();
            (name, header, rows)
        })
        .collect()
}

#[test]
fn csv_matches_json() {
    for args in [
        vec!["constants", "--max-dim", "6"],
        vec!["verify", "--domain", "builtin:square", "--k", "3"],
        vec!["replay", "--box", "0.5,0.3", "--k", "3", "--lemma", "31"],
        vec!["counterexample", "--k", "4"],
    ] {
        let (v, _) = json(&args);
        let mut csv_args = args.clone();
        csv_args.extend(["--format", "csv"]);
        let text = String::from_utf8(run(&csv_args).stdout).unwrap();
        let sections = csv_sections(&text);
        assert_eq!(sections.len(), v.as_object().unwrap().len());
        for (name, header, rows) in sections {
            let table = v[&name].as_array().unwrap();
            assert_eq!(table.len(), rows.len(), "{name}");
            for (obj, row) in table.iter().zip(rows) {
                for (col, cell) in header.iter().zip(row) {
                    let j = &obj[col];
                    match j {
                        Value::Null => assert_eq!(cell, ""),
                        Value::String(s) => assert_eq!(&cell, s),
                        Value::Bool(b) => assert_eq!(cell, b.to_string()),
                        Value::Number(x) => {
                            let (a, b) = (x.as_f64().unwrap(), cell.parse::<f64>().unwrap());
                            assert!((a - b).abs() <= 1e-11 * a.abs().max(1e-300), "{name}.{col}: {a} vs {b}");
                        }
                        _ => unreachable!(),
                    }
                }
            }
        }
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let out = run(&["constants", "--dim", "3", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# constants\nn,j,"));
    let missing = dir.path().join("no/such/dir/x.json");
    assert_eq!(
        run(&["constants", "--output", missing.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["constants", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
